#include "lqmfg/eta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lqmfg {

namespace {

struct EtaConstants {
  double mt = 1.0;
  double pnorm = 0.0;   // sup_t ||P(t)||_W over the path
  double cbr = 0.0;     // ||B R^{-1} B*||_W
  double qs = 0.0;      // ||Qbar S||_W
  double qtst = 0.0;    // ||Qbar_T S_T||_W
};

EtaConstants eta_constants(const MFGProblem& problem, const OperatorPath& p, double mt) {
  EtaConstants c;
  c.mt = mt;
  c.pnorm = p.max_weighted_norm(problem.space());
  c.cbr = weighted_op_norm(problem.brb(), problem.space());
  c.qs = weighted_op_norm(problem.qbar_s(), problem.space());
  c.qtst = weighted_op_norm(problem.qbarT_sT(), problem.space());
  return c;
}

// Left-hand sides of the two small-interval inequalities for ball radius r.
bool step_certified(const EtaConstants& c, double r, double tau) {
  const double mt2 = c.mt * c.mt;
  const double lhs_a =
      mt2 * (c.qtst + tau * (c.qs + 2.0 * r * c.pnorm * c.cbr + r * r * c.cbr));
  const double lhs_b = tau * mt2 * (2.0 * c.pnorm * c.cbr + 2.0 * r * c.cbr);
  return lhs_a <= r && lhs_b <= 0.5;
}

// Restart inequalities of the continuation: datum norm bounded by beta_T,
// hence by r1/2 after the M_T^2 factor.
bool restart_certified(const EtaConstants& c, double r1, double tau) {
  const double mt2 = c.mt * c.mt;
  const double lhs_a = tau * mt2 * (c.qs + 2.0 * r1 * c.pnorm * c.cbr + r1 * r1 * c.cbr);
  const double lhs_b = tau * mt2 * (2.0 * c.pnorm * c.cbr + 2.0 * r1 * c.cbr);
  return lhs_a <= 0.5 * r1 && lhs_b <= 0.5;
}

template <typename Pred>
double bisect_largest(double hi, Pred ok) {
  if (ok(hi)) return hi;
  double lo = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// One Picard sweep of the mild-form map on a segment sub-grid. The
// cumulative integral uses the recurrence
//   I_j = e^{h A*} (I_{j-1} + h/2 N_{j-1}) e^{h A} + h/2 N_j,
// which reproduces the composite trapezoid rule exactly while touching only
// single-step exponentials.
struct GammaWorkspace {
  Matrix e, e_adj;
  std::vector<Matrix> homog;   // e^{u A*} g0 e^{u A} at sub-nodes
  std::vector<Matrix> pb, bp;  // P~ brb and brb P~ at sub-nodes
  double h = 0.0;
};

void gamma_sweep(const MFGProblem& problem, const GammaWorkspace& ws,
                 const std::vector<Matrix>& f, std::vector<Matrix>& out) {
  const int m = static_cast<int>(f.size()) - 1;
  const Matrix& brb = problem.brb();
  const Matrix& qs = problem.qbar_s();
  const auto& sp = problem.space();

  auto integrand = [&](int j) -> Matrix {
    return qs + ws.pb[static_cast<size_t>(j)] * f[static_cast<size_t>(j)] +
           f[static_cast<size_t>(j)] * ws.bp[static_cast<size_t>(j)] +
           f[static_cast<size_t>(j)] * (brb * f[static_cast<size_t>(j)]);
  };

  Matrix integral = Matrix::Zero(problem.dim(), problem.dim());
  Matrix prev_n = integrand(0);
  out[0] = ws.homog[0];
  for (int j = 1; j <= m; ++j) {
    const Matrix nj = integrand(j);
    integral = ws.e_adj * (integral + 0.5 * ws.h * prev_n) * ws.e + 0.5 * ws.h * nj;
    prev_n = nj;
    out[static_cast<size_t>(j)] =
        weighted_symmetrize(ws.homog[static_cast<size_t>(j)] - integral, sp);
  }
}

}  // namespace

DissipativityReport check_dissipativity(const MFGProblem& problem, double tol) {
  const auto& sp = problem.space();
  DissipativityReport rep;
  const Matrix neg_qs = -problem.qbar_s();
  const Matrix neg_qtst = -problem.qbarT_sT();
  const double qs_scale = 1.0 + weighted_op_norm(neg_qs, sp);
  const double qtst_scale = 1.0 + weighted_op_norm(neg_qtst, sp);
  rep.qs_defect = self_adjoint_defect(neg_qs, sp);
  rep.qtst_defect = self_adjoint_defect(neg_qtst, sp);
  rep.qs_self_adjoint = rep.qs_defect <= tol * qs_scale;
  rep.qtst_self_adjoint = rep.qtst_defect <= tol * qtst_scale;
  rep.qs_min_eig = symmetrized_eigenvalues(neg_qs, sp).minCoeff();
  rep.qtst_min_eig = symmetrized_eigenvalues(neg_qtst, sp).minCoeff();
  rep.qs_psd = rep.qs_min_eig >= -tol * qs_scale;
  rep.qtst_psd = rep.qtst_min_eig >= -tol * qtst_scale;
  return rep;
}

double eta_mt(const MFGProblem& problem) {
  return sup_exp_norm(problem.a(), problem.space(), problem.horizon());
}

double eta_beta_bound(const MFGProblem& problem, const OperatorPath& p, double mt) {
  const EtaConstants c = eta_constants(problem, p, mt);
  const double mt2 = mt * mt;
  return mt2 * (c.qtst + problem.horizon() * c.qs) *
         std::exp(2.0 * problem.horizon() * mt2 * c.pnorm * c.cbr);
}

EtaCertificate eta_contraction_params(const MFGProblem& problem,
                                      const OperatorPath& p, double mt) {
  const EtaConstants c = eta_constants(problem, p, mt);
  EtaCertificate cert;
  cert.radius_r = 2.0 * mt * mt * c.qtst;
  cert.beta_T = eta_beta_bound(problem, p, mt);
  const double tau = bisect_largest(problem.horizon(), [&](double t) {
    return step_certified(c, cert.radius_r, t);
  });
  cert.tau = tau >= p.grid.step() ? tau : 0.0;
  cert.global_ok = cert.tau >= problem.horizon();
  return cert;
}

LocalEtaResult solve_eta_local(const MFGProblem& problem, const OperatorPath& p,
                               double t_a, double t_b, const Matrix& eta_start,
                               const EtaOptions& opts) {
  if (!(t_b > t_a)) throw PreconditionError("solve_eta_local: empty interval");
  const auto& sp = problem.space();
  {
    const double defect = self_adjoint_defect(eta_start, sp);
    if (defect > 1e-9 * (1.0 + weighted_op_norm(eta_start, sp)))
      throw SymmetryViolationError("solve_eta_local: eta_start is not self-adjoint", defect);
  }

  const int m = std::max(opts.min_sub_intervals, 2);
  const double h = (t_b - t_a) / m;
  const double horizon = problem.horizon();

  GammaWorkspace ws;
  ws.h = h;
  ws.e = mat_exp(problem.a(), h);
  ws.e_adj = weighted_adjoint(ws.e, sp);
  ws.homog.resize(static_cast<size_t>(m) + 1);
  ws.pb.resize(static_cast<size_t>(m) + 1);
  ws.bp.resize(static_cast<size_t>(m) + 1);
  ws.homog[0] = eta_start;
  for (int j = 0; j <= m; ++j) {
    if (j > 0)
      ws.homog[static_cast<size_t>(j)] =
          ws.e_adj * ws.homog[static_cast<size_t>(j) - 1] * ws.e;
    // Coefficient of the time-inverted equation: P evaluated at T - u.
    const Matrix ptilde = p.at_time(horizon - (t_a + j * h));
    ws.pb[static_cast<size_t>(j)] = ptilde * problem.brb();
    ws.bp[static_cast<size_t>(j)] = problem.brb() * ptilde;
  }

  std::vector<Matrix> f(static_cast<size_t>(m) + 1, eta_start);
  std::vector<Matrix> next(static_cast<size_t>(m) + 1);

  LocalEtaResult result{OperatorPath(TimeGrid(t_b - t_a, m), f, true), 0, 0.0, {}};
  double prev_diff = -1.0;
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    gamma_sweep(problem, ws, f, next);
    double diff = 0.0;
    for (int j = 0; j <= m; ++j)
      diff = std::max(diff, weighted_op_norm(next[static_cast<size_t>(j)] -
                                                 f[static_cast<size_t>(j)],
                                             sp));
    f.swap(next);
    result.sweeps = sweep;
    if (prev_diff > 1e-13) {
      const double ratio = diff / prev_diff;
      result.ratios.push_back(ratio);
      result.max_ratio = std::max(result.max_ratio, ratio);
    }
    prev_diff = diff;
    if (diff <= opts.picard_tol) {
      result.path = OperatorPath(TimeGrid(t_b - t_a, m), std::move(f), true);
      return result;
    }
  }
  std::ostringstream os;
  os << "solve_eta_local: no contraction after " << opts.max_sweeps
     << " sweeps (last difference " << prev_diff
     << "); the interval is too long for the certified step";
  throw ContractionFailureError(os.str(), prev_diff);
}

namespace {

GlobalEtaResult continue_segments(const MFGProblem& problem, const OperatorPath& p,
                                  const EtaOptions& opts, double tau_first,
                                  double tau_rest, double radius_first,
                                  double radius_rest, double beta_T) {
  const auto& sp = problem.space();
  const TimeGrid& grid = p.grid;
  const double h = grid.step();
  const double horizon = problem.horizon();
  const int n = grid.n_steps();

  // Internal refinement so that every segment spans at least one fine cell.
  const double tau_min = std::min(tau_first > 0.0 ? tau_first : tau_rest, tau_rest);
  if (!(tau_min > 0.0))
    throw PathologicalInstanceError("eta continuation: certified step is zero");
  const long refine = std::max<long>(1, static_cast<long>(std::ceil(h / tau_min)));
  const long n_fine = static_cast<long>(n) * refine;
  if (n_fine > 20'000'000)
    throw PathologicalInstanceError("eta continuation: refinement grid too large");
  const double h_f = h / static_cast<double>(refine);

  const long m_first = std::max<long>(
      1, std::min<long>(static_cast<long>(std::floor((tau_first > 0.0 ? tau_first : tau_rest) / h_f)), n_fine));
  const long m_rest = std::max<long>(
      1, std::min<long>(static_cast<long>(std::floor(tau_rest / h_f)), n_fine));
  const long seg_estimate = 1 + (n_fine - 1) / m_rest;
  if (seg_estimate > 1'000'000)
    throw PathologicalInstanceError("eta continuation: segment count exceeds 1e6");

  GlobalEtaResult result{OperatorPath(grid, std::vector<Matrix>(static_cast<size_t>(n) + 1,
                                                                Matrix::Zero(problem.dim(), problem.dim())),
                                      true),
                         {}, 0, 0.0};
  result.cert.beta_T = beta_T;
  result.cert.radius_r = radius_rest;
  result.cert.tau = m_rest * h_f;
  result.cert.global_ok = true;

  std::vector<Matrix> fine(static_cast<size_t>(n_fine) + 1);
  Matrix datum = -problem.qbarT_sT();
  fine[0] = datum;

  long i0 = 0;
  bool first = true;
  while (i0 < n_fine) {
    const long want = first ? m_first : m_rest;
    const long i1 = std::min(i0 + want, n_fine);
    const long cells = i1 - i0;
    const int sub_factor = static_cast<int>(
        (opts.min_sub_intervals + cells - 1) / cells);
    EtaOptions seg_opts = opts;
    seg_opts.min_sub_intervals = static_cast<int>(cells) * std::max(1, sub_factor);
    const double u_a = i0 * h_f;
    const double u_b = i1 * h_f;
    LocalEtaResult local = solve_eta_local(problem, p, u_a, u_b, datum, seg_opts);
    const int stride = seg_opts.min_sub_intervals / static_cast<int>(cells);
    for (long c = 1; c <= cells; ++c)
      fine[static_cast<size_t>(i0 + c)] = local.path.at_node(static_cast<int>(c) * stride);
    datum = fine[static_cast<size_t>(i1)];
    result.total_sweeps += local.sweeps;
    result.max_ratio = std::max(result.max_ratio, local.max_ratio);
    result.cert.segments.push_back({u_a, u_b, first ? radius_first : radius_rest});
    i0 = i1;
    first = false;
  }

  // Bound checks in the forward orientation: 0 <= f <= beta_T I within
  // tolerance, then time inversion by index reversal onto the solver grid.
  std::vector<Matrix> eta_vals(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Matrix& f = fine[static_cast<size_t>((static_cast<long>(n) - k) * refine)];
    const Vector eigs = symmetrized_eigenvalues(f, sp);
    if (eigs.minCoeff() < -1e-8 * (1.0 + beta_T)) {
      std::ostringstream os;
      os << "eta continuation: positivity loss, min eigenvalue " << eigs.minCoeff();
      throw PositivityLossError(os.str(), k, eigs.minCoeff());
    }
    if (eigs.maxCoeff() > beta_T * (1.0 + 1e-6) + 1e-12) {
      std::ostringstream os;
      os << "eta continuation: bound beta_T violated, max eigenvalue "
         << eigs.maxCoeff() << " > " << beta_T;
      throw DivergenceError(os.str(), k, grid.node(k));
    }
    eta_vals[static_cast<size_t>(k)] = f;
  }
  result.eta = OperatorPath(grid, std::move(eta_vals), true);
  return result;
}

}  // namespace

GlobalEtaResult solve_eta_global(const MFGProblem& problem, const OperatorPath& p,
                                 const EtaOptions& opts) {
  const DissipativityReport diss = check_dissipativity(problem);
  if (!diss.ok()) {
    std::ostringstream os;
    os << "solve_eta_global: dissipativity precondition fails for ";
    if (!(diss.qs_self_adjoint && diss.qs_psd)) os << "-Qbar S";
    if (!(diss.qtst_self_adjoint && diss.qtst_psd)) {
      if (!(diss.qs_self_adjoint && diss.qs_psd)) os << " and ";
      os << "-Qbar_T S_T";
    }
    throw PreconditionError(os.str());
  }

  const double mt = eta_mt(problem);
  const EtaConstants c = eta_constants(problem, p, mt);

  // Both couplings vanish: the zero path is the solution.
  if (c.qs == 0.0 && c.qtst == 0.0) {
    GlobalEtaResult result{OperatorPath(p.grid,
                                        std::vector<Matrix>(static_cast<size_t>(p.grid.n_nodes()),
                                                            Matrix::Zero(problem.dim(), problem.dim())),
                                        true),
                           {}, 0, 0.0};
    result.cert.global_ok = true;
    result.cert.tau = problem.horizon();
    result.cert.segments.push_back({0.0, problem.horizon(), 0.0});
    return result;
  }

  const EtaCertificate params = eta_contraction_params(problem, p, mt);
  const double beta_T = eta_beta_bound(problem, p, mt);
  const double r1 = 2.0 * mt * mt * beta_T;
  const double tau1 = bisect_largest(problem.horizon(), [&](double t) {
    return restart_certified(c, r1, t);
  });
  if (!(tau1 > 0.0))
    throw PathologicalInstanceError("solve_eta_global: no positive certified restart step");

  return continue_segments(problem, p, opts, params.tau, tau1, params.radius_r,
                           r1, beta_T);
}

GlobalEtaResult solve_eta_auto(const MFGProblem& problem, const OperatorPath& p,
                               const EtaOptions& opts) {
  if (check_dissipativity(problem).ok()) return solve_eta_global(problem, p, opts);

  const double mt = eta_mt(problem);
  const EtaCertificate params = eta_contraction_params(problem, p, mt);
  if (params.tau >= problem.horizon()) {
    // One certified step covers the horizon; solve locally and invert.
    EtaOptions one = opts;
    const int n = p.grid.n_steps();
    const int sub_factor =
        std::max(1, (opts.min_sub_intervals + n - 1) / n);
    one.min_sub_intervals = n * sub_factor;
    LocalEtaResult local = solve_eta_local(problem, p, 0.0, problem.horizon(),
                                           -problem.qbarT_sT(), one);
    std::vector<Matrix> eta_vals(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
      eta_vals[static_cast<size_t>(k)] = local.path.at_node((n - k) * sub_factor);
    GlobalEtaResult result{OperatorPath(p.grid, std::move(eta_vals), true),
                           params, local.sweeps, local.max_ratio};
    result.cert.segments.push_back({0.0, problem.horizon(), params.radius_r});
    return result;
  }
  throw PreconditionError(
      "eta: instance is neither dissipative nor covered by one certified step; "
      "refine the data or use the Picard route");
}

}  // namespace lqmfg
