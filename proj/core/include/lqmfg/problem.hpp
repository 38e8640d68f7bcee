#ifndef LQMFG_PROBLEM_HPP
#define LQMFG_PROBLEM_HPP

#include <optional>

#include "lqmfg/hilbert.hpp"
#include "lqmfg/time_grid.hpp"

namespace lqmfg {

/// All problem data of the reduced mean-field game on a truncated space:
/// state operators, cost operators, noise, horizon, initial mean and the
/// affine forcing of the linear value coefficient.
///
/// Validated invariants: Q, Q_T PSD; Qbar, Qbar_T self-adjoint;
/// Q+Qbar, Q_T+Qbar_T PSD; R self-adjoint with min eigenvalue >= R_eps;
/// consistent dimensions. Use `unchecked` to bypass validation (tests,
/// deliberately broken data).
class MFGProblem {
public:
  struct Data {
    HilbertSpace space;          // state space H with Gram weights
    HilbertSpace control_space;  // U (Euclidean)
    HilbertSpace noise_space;    // K (Euclidean)
    Matrix A;                    // dim x dim
    Matrix B;                    // dim x control_dim
    Matrix Q, Qbar, QT, QbarT;   // dim x dim
    Matrix R;                    // control_dim x control_dim
    Matrix S, ST;                // dim x dim
    Matrix sigma;                // dim x noise_dim
    double T = 1.0;
    Vector z0;
    Vector affine_c;             // running forcing in the r-equation
    Vector affine_cT;            // terminal offset in the r-equation
    double R_eps = 1e-8;
  };

  static MFGProblem checked(Data data, double tol = 1e-10);
  static MFGProblem unchecked(Data data);

  const Data& data() const { return d_; }
  const HilbertSpace& space() const { return d_.space; }
  int dim() const { return d_.space.dim(); }
  double horizon() const { return d_.T; }

  // Cached composites used throughout the solvers.
  const Matrix& a() const { return d_.A; }
  const Matrix& a_adjoint() const { return a_adj_; }
  const Matrix& brb() const { return brb_; }          // B R^{-1} B*
  const Matrix& r_inv_badj() const { return rinvbadj_; }  // R^{-1} B*
  const Matrix& q_total() const { return q_total_; }  // Q + Qbar
  const Matrix& qT_total() const { return qT_total_; }
  const Matrix& qbar_s() const { return qbar_s_; }    // Qbar S
  const Matrix& qbarT_sT() const { return qbarT_sT_; }

  bool has_affine() const;

  /// Default solver grid: n_steps = max(200, ceil(200 T)).
  TimeGrid default_grid() const;

  /// Problem copy with the state generator replaced (Yosida studies).
  MFGProblem with_generator(const Matrix& a_new) const;

private:
  explicit MFGProblem(Data data);
  void finalize();

  Data d_;
  Matrix a_adj_, brb_, rinvbadj_, q_total_, qT_total_, qbar_s_, qbarT_sT_;
};

}  // namespace lqmfg

#endif
