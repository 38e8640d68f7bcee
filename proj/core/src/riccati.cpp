#include "lqmfg/riccati.hpp"

#include <cmath>
#include <sstream>

namespace lqmfg {

namespace {

constexpr double kBlowupGuard = 1e12;

}  // namespace

OperatorPath solve_riccati_p(const MFGProblem& problem, const TimeGrid& grid) {
  const auto& sp = problem.space();
  const Matrix& a = problem.a();
  const Matrix& a_adj = problem.a_adjoint();
  const Matrix& brb = problem.brb();
  const Matrix& q = problem.q_total();

  // Backward equation in the reversed time variable tau = T - t:
  //   dP/dtau = P A + A* P - P brb P + q,  P(tau = 0) = Q_T + Qbar_T.
  auto rhs = [&](const Matrix& p) -> Matrix {
    return p * a + a_adj * p - p * brb * p + q;
  };

  const int n = grid.n_steps();
  const double h = grid.step();
  std::vector<Matrix> values(static_cast<size_t>(n) + 1);
  values[static_cast<size_t>(n)] = problem.qT_total();

  Matrix p = problem.qT_total();
  for (int k = n; k > 0; --k) {
    const Matrix k1 = rhs(p);
    const Matrix k2 = rhs(p + 0.5 * h * k1);
    const Matrix k3 = rhs(p + 0.5 * h * k2);
    const Matrix k4 = rhs(p + h * k3);
    p = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p = weighted_symmetrize(p, sp);

    const int node = k - 1;
    const double norm = weighted_op_norm(p, sp);
    if (!p.allFinite() || norm > kBlowupGuard) {
      std::ostringstream os;
      os << "solve_riccati_p: blow-up at node " << node << " (t = "
         << grid.node(node) << "), norm " << norm;
      throw DivergenceError(os.str(), node, grid.node(node));
    }
    const double min_eig = symmetrized_eigenvalues(p, sp).minCoeff();
    if (min_eig < -1e-9 * (1.0 + norm)) {
      std::ostringstream os;
      os << "solve_riccati_p: positivity loss at node " << node
         << " (t = " << grid.node(node) << "), min eigenvalue " << min_eig;
      throw PositivityLossError(os.str(), node, min_eig);
    }
    values[static_cast<size_t>(node)] = p;
  }

  return OperatorPath(grid, std::move(values), /*sym=*/true);
}

double riccati_residual(const OperatorPath& p, const MFGProblem& problem) {
  const auto& sp = problem.space();
  const TimeGrid& grid = p.grid;
  const int n = grid.n_steps();
  const double h = grid.step();

  const Matrix e = mat_exp(problem.a(), h);
  const Matrix e_adj = weighted_adjoint(e, sp);

  // Integrand of the mild form: G(s) = Q + Qbar - P(s) brb P(s).
  std::vector<Matrix> g(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Matrix& pk = p.at_node(k);
    g[static_cast<size_t>(k)] = problem.q_total() - pk * problem.brb() * pk;
  }

  // Backward recurrences:
  //   E_k = e^{h A*} E_{k+1} e^{h A},                      E_n = Q_T + Qbar_T
  //   I_k = h/2 G_k + e^{h A*} (I_{k+1} + h/2 G_{k+1}) e^{h A},   I_n = 0
  // so that I_k is exactly the composite trapezoid value of the integral
  // from t_k to T and E_k is the terminal term of the mild form.
  Matrix terminal = problem.qT_total();
  Matrix integral = Matrix::Zero(problem.dim(), problem.dim());

  // Probe set: W-normalized canonical basis vectors.
  Matrix probes = sp.sqrt_weight().cwiseInverse().asDiagonal();

  double residual = 0.0;
  for (int k = n; k >= 0; --k) {
    if (k < n) {
      integral = 0.5 * h * g[static_cast<size_t>(k)] +
                 e_adj * (integral + 0.5 * h * g[static_cast<size_t>(k) + 1]) * e;
      terminal = e_adj * terminal * e;
    }
    const Matrix defect = p.at_node(k) - terminal - integral;
    for (int j = 0; j < problem.dim(); ++j) {
      residual = std::max(residual, sp.norm(defect * probes.col(j)));
    }
  }
  return residual;
}

double riccati_residual_tol(const MFGProblem& problem) {
  return 1e-6 * (1.0 + weighted_op_norm(problem.qT_total(), problem.space()));
}

double p_bound(const MFGProblem& problem, const GrowthBound& gb) {
  const auto& sp = problem.space();
  const double omega_plus = std::max(gb.omega, 0.0);
  return gb.M * gb.M * std::exp(2.0 * omega_plus * problem.horizon()) *
         (weighted_op_norm(problem.qT_total(), sp) +
          problem.horizon() * weighted_op_norm(problem.q_total(), sp));
}

}  // namespace lqmfg
