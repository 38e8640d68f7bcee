#include "lqmfg/time_grid.hpp"

#include <algorithm>
#include <cmath>

namespace lqmfg {

TimeGrid::TimeGrid(double horizon, int n_steps)
    : horizon_(horizon), n_steps_(n_steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidOperatorError("TimeGrid: horizon must be positive and finite");
  if (n_steps < 2) throw InvalidOperatorError("TimeGrid: n_steps must be >= 2");
}

int TimeGrid::nearest_node(double t) const {
  const double pos = t / step();
  int k = static_cast<int>(std::lround(pos));
  return std::clamp(k, 0, n_steps_);
}

namespace {

// Shared node/interpolation logic for both path kinds.
template <typename T>
T interpolate(const TimeGrid& grid, const std::vector<T>& values, double t) {
  const double h = grid.step();
  const double pos = t / h;
  const int lo = std::clamp(static_cast<int>(std::floor(pos)), 0, grid.n_steps());
  if (std::abs(pos - lo) < 1e-12) return values[static_cast<size_t>(lo)];
  const int hi = std::min(lo + 1, grid.n_steps());
  if (hi == lo) return values[static_cast<size_t>(lo)];
  const double w = pos - lo;
  return (1.0 - w) * values[static_cast<size_t>(lo)] + w * values[static_cast<size_t>(hi)];
}

}  // namespace

OperatorPath::OperatorPath(TimeGrid g, std::vector<Matrix> v, bool sym)
    : grid(g), values(std::move(v)), symmetric(sym) {
  if (values.size() != static_cast<size_t>(grid.n_nodes()))
    throw GridMismatchError("OperatorPath: value count does not match the grid");
}

Matrix OperatorPath::at_time(double t) const {
  return interpolate(grid, values, t);
}

double OperatorPath::max_weighted_norm(const HilbertSpace& space) const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, weighted_op_norm(v, space));
  return m;
}

VectorPath::VectorPath(TimeGrid g, std::vector<Vector> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<size_t>(grid.n_nodes()))
    throw GridMismatchError("VectorPath: value count does not match the grid");
}

Vector VectorPath::at_time(double t) const {
  return interpolate(grid, values, t);
}

double VectorPath::max_weighted_norm(const HilbertSpace& space) const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, space.norm(v));
  return m;
}

double max_gap(const VectorPath& a, const VectorPath& b, const HilbertSpace& space) {
  require_same_grid(a.grid, b.grid, "max_gap");
  double m = 0.0;
  for (size_t k = 0; k < a.values.size(); ++k)
    m = std::max(m, space.norm(a.values[k] - b.values[k]));
  return m;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatchError(std::string(where) + ": paths live on different grids");
  }
}

}  // namespace lqmfg
