#ifndef LQMFG_RICCATI_HPP
#define LQMFG_RICCATI_HPP

#include "lqmfg/problem.hpp"

namespace lqmfg {

/// Backward solve of
///   P' + PA + A*P - P B R^{-1} B* P + Q + Qbar = 0,  P(T) = Q_T + Qbar_T,
/// with a classical fourth-order one-step method on the grid, symmetrizing
/// after every step. The terminal node is exact. Throws DivergenceError
/// when any node norm exceeds the blow-up guard and PositivityLossError
/// when a node loses positivity beyond tolerance.
OperatorPath solve_riccati_p(const MFGProblem& problem, const TimeGrid& grid);

/// Sup over nodes and a probe set of W-unit vectors of the defect of the
/// variation-of-constants form of the equation, with the time integral
/// evaluated by composite trapezoid on the solver grid. This is the
/// solver-independent certificate for a computed P path.
double riccati_residual(const OperatorPath& p, const MFGProblem& problem);

/// Residual tolerance that keeps the certificate meaningful across data
/// scales: 1e-6 * (1 + ||Q_T + Qbar_T||_W).
double riccati_residual_tol(const MFGProblem& problem);

/// A-priori bound M^2 e^{2 omega^+ T} (||Q_T+Qbar_T|| + T ||Q+Qbar||) on
/// sup_t ||P(t)||_W.
double p_bound(const MFGProblem& problem, const GrowthBound& gb);

}  // namespace lqmfg

#endif
