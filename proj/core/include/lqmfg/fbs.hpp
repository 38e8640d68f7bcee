#ifndef LQMFG_FBS_HPP
#define LQMFG_FBS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lqmfg/eta.hpp"
#include "lqmfg/problem.hpp"

namespace lqmfg {

/// Explicit small-horizon contraction data: C_T and the constants feeding
/// it. is_contraction certifies the Picard map when C_T < 1.
struct ContractionReport {
  double C_T = 0.0;
  double C_BR = 0.0;
  double C_QbarTST = 0.0;
  double C_QS = 0.0;  // computed from ||Qbar S||_W, the coupling in the r-dynamics
  double beta = 0.0;
  bool is_contraction = false;
};

ContractionReport contraction_constant(const MFGProblem& problem, const GrowthBound& gb);

enum class SolveMethod { decoupled, picard };

struct SolveDiagnostics {
  int iterations = 0;
  std::vector<double> contraction_ratios;
  double max_ratio = 0.0;
  bool converged = true;
  bool contraction_certified = false;
  double c_t = 0.0;
  double z_residual = 0.0;
  double r_residual = 0.0;
  std::optional<EtaCertificate> eta_cert;
};

/// The 4-tuple (P, z, r, s) plus diagnostics. s is empty for problems with
/// affine forcing, where no closed-form offset is computed.
struct LQMSolution {
  OperatorPath P;
  VectorPath z;
  VectorPath r;
  std::vector<double> s;
  SolveMethod method = SolveMethod::picard;
  SolveDiagnostics diagnostics;
};

/// Forward sweep: the unique solution of
///   z' = (A - B R^{-1} B* P(t)) z - B R^{-1} B* r(t),  z(0) = z0,
/// by fourth-order stepping on r's grid, coefficients interpolated linearly
/// at stage points.
VectorPath propagate_z(const MFGProblem& problem, const OperatorPath& p,
                       const VectorPath& r);

/// Backward sweep: the unique solution of
///   r' + (A* - P(t) B R^{-1} B*) r - Qbar S z(t) - c = 0,
///   r(T) = -Qbar_T S_T z(T) - c_T.
VectorPath propagate_r(const MFGProblem& problem, const OperatorPath& p,
                       const VectorPath& z);

struct PicardOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// Initial guess for r; zero path when absent.
  std::optional<VectorPath> initial_guess;
};

/// Picard iteration r <- (Phi o Psi)(r) from r = 0. Throws
/// NoCertificateError on non-convergence without a contraction certificate.
LQMSolution solve_picard(const MFGProblem& problem, const OperatorPath& p,
                         const PicardOptions& opts = {});

struct DecoupledOptions {
  EtaOptions eta;
};

/// Decoupling route: solve the auxiliary Riccati path eta, integrate the
/// closed-loop mean forward, and set r = eta z (+ the affine completion
/// kappa when the problem carries affine forcing).
LQMSolution solve_decoupled(const MFGProblem& problem, const OperatorPath& p,
                            const DecoupledOptions& opts = {});

/// Scalar offset s(t) by composite trapezoid of the explicit integral
/// expression. Requires zero affine terms.
std::vector<double> compute_s(const MFGProblem& problem, const OperatorPath& p,
                              const VectorPath& z, const VectorPath& r);

/// v(t,x) = 1/2 <P(t)x, x> + <r(t), x> + s(t), nearest-node lookup.
double value_function(const MFGProblem& problem, const LQMSolution& sol,
                      double t, const Vector& x);

/// alpha(t,x) = -R^{-1} B* (P(t) x + r(t)), nearest-node lookup.
Vector feedback_control(const MFGProblem& problem, const OperatorPath& p,
                        const VectorPath& r, double t, const Vector& x);

/// max_t (|z_a - z_b| + |r_a - r_b|) in the weighted norm; the operational
/// content of uniqueness across solution routes.
double cross_method_gap(const LQMSolution& a, const LQMSolution& b,
                        const HilbertSpace& space);

/// Defect of the variation-of-constants form of the z-equation (composite
/// trapezoid on the grid).
double mild_residual_z(const MFGProblem& problem, const OperatorPath& p,
                       const VectorPath& z, const VectorPath& r);

/// Same for the backward r-equation, affine terms included.
double mild_residual_r(const MFGProblem& problem, const OperatorPath& p,
                       const VectorPath& z, const VectorPath& r);

}  // namespace lqmfg

#endif
