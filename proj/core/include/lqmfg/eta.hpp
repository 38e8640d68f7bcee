#ifndef LQMFG_ETA_HPP
#define LQMFG_ETA_HPP

#include <vector>

#include "lqmfg/problem.hpp"

namespace lqmfg {

struct EtaSegment {
  double start = 0.0;
  double end = 0.0;
  double radius = 0.0;
};

/// Contraction certificate for the auxiliary Riccati equation: ball radius,
/// certified step length, global bound and the continuation segments used.
struct EtaCertificate {
  double radius_r = 0.0;
  double tau = 0.0;
  double beta_T = 0.0;
  bool global_ok = false;
  std::vector<EtaSegment> segments;
};

struct EtaOptions {
  /// Minimum trapezoid sub-intervals per continuation segment.
  int min_sub_intervals = 128;
  double picard_tol = 1e-10;
  int max_sweeps = 200;
};

struct DissipativityReport {
  bool qs_self_adjoint = false;
  bool qs_psd = false;
  bool qtst_self_adjoint = false;
  bool qtst_psd = false;
  double qs_min_eig = 0.0;
  double qtst_min_eig = 0.0;
  double qs_defect = 0.0;
  double qtst_defect = 0.0;
  bool ok() const {
    return qs_self_adjoint && qs_psd && qtst_self_adjoint && qtst_psd;
  }
};

/// Checks -Qbar S and -Qbar_T S_T for membership in Sigma^+ within a
/// relative tolerance.
DissipativityReport check_dissipativity(const MFGProblem& problem, double tol = 1e-10);

/// Ball radius r = 2 M_T^2 ||Qbar_T S_T||_W and the largest step tau (30
/// bisection iterations over (0, T]) for which both contraction
/// inequalities of the small-interval fixed point hold. tau is clamped to 0
/// when no step above the grid spacing qualifies; global_ok means one
/// certified step covers the whole horizon.
EtaCertificate eta_contraction_params(const MFGProblem& problem,
                                      const OperatorPath& p, double mt);

/// Global bound beta_T = M_T^2 (||Qbar_T S_T|| + T ||Qbar S||)
///   * exp(2 T M_T^2 sup_t ||P(t)|| ||B R^{-1} B*||).
double eta_beta_bound(const MFGProblem& problem, const OperatorPath& p, double mt);

/// Sampled sup of ||e^{t A}||_W over the horizon, the constant that plays
/// M_T for the truncated generator.
double eta_mt(const MFGProblem& problem);

struct LocalEtaResult {
  /// Fixed point on a uniform sub-grid of the interval, forward-time
  /// orientation; node k sits at t_a + k * (t_b - t_a)/m.
  OperatorPath path;
  int sweeps = 0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
};

/// Picard iteration of the mild-form map on [t_a, t_b] (forward-time
/// variable of the time-inverted equation) from initial datum eta_start,
/// iterated to successive-difference <= picard_tol in sup operator norm.
/// Throws ContractionFailureError when the sweep limit is exceeded.
LocalEtaResult solve_eta_local(const MFGProblem& problem, const OperatorPath& p,
                               double t_a, double t_b, const Matrix& eta_start,
                               const EtaOptions& opts = {});

struct GlobalEtaResult {
  /// eta on the solver grid, original (backward) orientation:
  /// eta(T) = -Qbar_T S_T exactly.
  OperatorPath eta;
  EtaCertificate cert;
  int total_sweeps = 0;
  double max_ratio = 0.0;
};

/// Continuation over segments of certified length under dissipativity,
/// restart radius r_1 = 2 M_T^2 beta_T, followed by time inversion by index
/// reversal on the shared grid. Preconditions: -Qbar S, -Qbar_T S_T PSD.
GlobalEtaResult solve_eta_global(const MFGProblem& problem, const OperatorPath& p,
                                 const EtaOptions& opts = {});

/// Route selection for the decoupled solver: the global continuation when
/// the dissipativity preconditions hold, a single certified local solve
/// when the horizon itself is small enough, an error otherwise.
GlobalEtaResult solve_eta_auto(const MFGProblem& problem, const OperatorPath& p,
                               const EtaOptions& opts = {});

}  // namespace lqmfg

#endif
