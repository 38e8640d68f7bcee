#include "lqmfg/problem.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace lqmfg {

namespace {

void check_dims(const MFGProblem::Data& d) {
  const int n = d.space.dim();
  const int m = d.control_space.dim();
  const int k = d.noise_space.dim();
  auto square = [&](const Matrix& M, const char* name) {
    if (M.rows() != n || M.cols() != n) {
      std::ostringstream os;
      os << "MFGProblem: " << name << " must be " << n << "x" << n;
      throw InvalidOperatorError(os.str());
    }
  };
  square(d.A, "A");
  square(d.Q, "Q");
  square(d.Qbar, "Qbar");
  square(d.QT, "Q_T");
  square(d.QbarT, "Qbar_T");
  square(d.S, "S");
  square(d.ST, "S_T");
  if (d.B.rows() != n || d.B.cols() != m)
    throw InvalidOperatorError("MFGProblem: B must map control coordinates into state coordinates");
  if (d.R.rows() != m || d.R.cols() != m)
    throw InvalidOperatorError("MFGProblem: R must be square on the control space");
  if (d.sigma.rows() != n || d.sigma.cols() != k)
    throw InvalidOperatorError("MFGProblem: sigma must map noise coordinates into state coordinates");
  if (d.z0.size() != n) throw InvalidOperatorError("MFGProblem: z0 dimension mismatch");
  if (d.affine_c.size() != n) throw InvalidOperatorError("MFGProblem: affine_c dimension mismatch");
  if (d.affine_cT.size() != n) throw InvalidOperatorError("MFGProblem: affine_cT dimension mismatch");
  if (!(d.T > 0.0)) throw InvalidOperatorError("MFGProblem: horizon must be positive");
  if (!(d.R_eps > 0.0)) throw InvalidOperatorError("MFGProblem: R_eps must be positive");
  for (const Matrix* M : {&d.A, &d.B, &d.Q, &d.Qbar, &d.QT, &d.QbarT, &d.R, &d.S, &d.ST, &d.sigma})
    require_finite(*M, "MFGProblem");
}

}  // namespace

MFGProblem::MFGProblem(Data data) : d_(std::move(data)) { finalize(); }

void MFGProblem::finalize() {
  check_dims(d_);
  a_adj_ = weighted_adjoint(d_.A, d_.space);
  const Matrix b_adj = weighted_adjoint(d_.B, d_.space, d_.control_space);
  rinvbadj_ = d_.R.fullPivLu().solve(b_adj);
  brb_ = d_.B * rinvbadj_;
  q_total_ = d_.Q + d_.Qbar;
  qT_total_ = d_.QT + d_.QbarT;
  qbar_s_ = d_.Qbar * d_.S;
  qbarT_sT_ = d_.QbarT * d_.ST;
}

MFGProblem MFGProblem::unchecked(Data data) { return MFGProblem(std::move(data)); }

MFGProblem MFGProblem::checked(Data data, double tol) {
  MFGProblem p(std::move(data));
  const auto& d = p.d_;
  auto expect_psd = [&](const Matrix& M, const HilbertSpace& sp, const char* name) {
    PsdReport rep = is_psd(M, sp, tol);
    if (!rep.psd) {
      std::ostringstream os;
      os << "MFGProblem: " << name << " is not PSD (min eigenvalue "
         << rep.min_eigenvalue << ")";
      throw InvalidOperatorError(os.str());
    }
  };
  expect_psd(d.Q, d.space, "Q");
  expect_psd(d.QT, d.space, "Q_T");
  expect_psd(p.q_total_, d.space, "Q + Qbar");
  expect_psd(p.qT_total_, d.space, "Q_T + Qbar_T");
  const double qbar_defect = self_adjoint_defect(d.Qbar, d.space);
  const double qbarT_defect = self_adjoint_defect(d.QbarT, d.space);
  const double qscale = 1.0 + weighted_op_norm(d.Qbar, d.space) + weighted_op_norm(d.QbarT, d.space);
  if (qbar_defect > tol * qscale)
    throw SymmetryViolationError("MFGProblem: Qbar is not self-adjoint", qbar_defect);
  if (qbarT_defect > tol * qscale)
    throw SymmetryViolationError("MFGProblem: Qbar_T is not self-adjoint", qbarT_defect);
  const double r_defect = self_adjoint_defect(d.R, d.control_space);
  if (r_defect > tol * (1.0 + weighted_op_norm(d.R, d.control_space)))
    throw SymmetryViolationError("MFGProblem: R is not self-adjoint", r_defect);
  const double r_min = symmetrized_eigenvalues(d.R, d.control_space).minCoeff();
  if (r_min < d.R_eps) {
    std::ostringstream os;
    os << "MFGProblem: R is not coercive (min eigenvalue " << r_min
       << " < R_eps " << d.R_eps << ")";
    throw InvalidOperatorError(os.str());
  }
  return p;
}

bool MFGProblem::has_affine() const {
  return d_.affine_c.norm() > 0.0 || d_.affine_cT.norm() > 0.0;
}

TimeGrid MFGProblem::default_grid() const {
  const int n = std::max(200, static_cast<int>(std::ceil(200.0 * d_.T)));
  return TimeGrid(d_.T, n);
}

MFGProblem MFGProblem::with_generator(const Matrix& a_new) const {
  Data d = d_;
  d.A = a_new;
  return MFGProblem(std::move(d));
}

}  // namespace lqmfg
