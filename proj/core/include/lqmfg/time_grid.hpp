#ifndef LQMFG_TIME_GRID_HPP
#define LQMFG_TIME_GRID_HPP

#include <vector>

#include "lqmfg/hilbert.hpp"

namespace lqmfg {

/// Uniform partition 0 = t_0 < ... < t_n = T.
class TimeGrid {
public:
  TimeGrid(double horizon, int n_steps);

  double horizon() const { return horizon_; }
  int n_steps() const { return n_steps_; }
  int n_nodes() const { return n_steps_ + 1; }
  double step() const { return horizon_ / n_steps_; }
  double node(int k) const { return horizon_ * k / n_steps_; }

  /// Index of the node closest to t.
  int nearest_node(double t) const;

  bool operator==(const TimeGrid& other) const {
    return horizon_ == other.horizon_ && n_steps_ == other.n_steps_;
  }

private:
  double horizon_;
  int n_steps_;
};

/// Time-indexed operator-valued function on a grid (houses P(.) and eta(.)).
struct OperatorPath {
  TimeGrid grid;
  std::vector<Matrix> values;  // one per node
  bool symmetric = false;

  OperatorPath(TimeGrid g, std::vector<Matrix> v, bool sym = false);

  const Matrix& at_node(int k) const { return values.at(k); }
  /// Linear interpolation between nodes; exact at nodes.
  Matrix at_time(double t) const;

  double max_weighted_norm(const HilbertSpace& space) const;
};

/// Time-indexed state-vector function on a grid (houses z(.) and r(.)).
struct VectorPath {
  TimeGrid grid;
  std::vector<Vector> values;

  VectorPath(TimeGrid g, std::vector<Vector> v);

  const Vector& at_node(int k) const { return values.at(k); }
  Vector at_time(double t) const;

  double max_weighted_norm(const HilbertSpace& space) const;
};

/// max_t of the pointwise weighted-norm difference between two paths on a
/// shared grid.
double max_gap(const VectorPath& a, const VectorPath& b, const HilbertSpace& space);

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where);

}  // namespace lqmfg

#endif
