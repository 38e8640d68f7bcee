#include "lqmfg/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace lqmfg {

HilbertSpace::HilbertSpace(Vector weight) : weight_(std::move(weight)) {
  if (weight_.size() < 1) throw InvalidOperatorError("HilbertSpace: dim must be >= 1");
  for (Eigen::Index i = 0; i < weight_.size(); ++i) {
    if (!(weight_[i] > 0.0) || !std::isfinite(weight_[i]))
      throw InvalidOperatorError("HilbertSpace: weights must be strictly positive");
  }
  sqrt_weight_ = weight_.cwiseSqrt();
}

HilbertSpace HilbertSpace::euclidean(int dim) {
  return HilbertSpace(Vector::Ones(dim));
}

double HilbertSpace::inner(const Vector& x, const Vector& y) const {
  return (weight_.array() * x.array() * y.array()).sum();
}

double HilbertSpace::norm(const Vector& x) const {
  return std::sqrt(inner(x, x));
}

Operator::Operator(Matrix m, HilbertSpace cod, HilbertSpace dom)
    : mat(std::move(m)), codomain(std::move(cod)), domain(std::move(dom)) {
  if (mat.rows() != codomain.dim() || mat.cols() != domain.dim())
    throw InvalidOperatorError("Operator: matrix dimensions do not match the spaces");
  require_finite(mat, "Operator");
}

Operator Operator::square(Matrix m, const HilbertSpace& space) {
  return Operator(std::move(m), space, space);
}

void require_finite(const Matrix& m, const char* label) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << label << ": non-finite entries";
    throw InvalidOperatorError(os.str());
  }
}

double weighted_op_norm(const Matrix& m, const HilbertSpace& codomain,
                        const HilbertSpace& domain) {
  // ||M||_W = sigma_max(D_cod M D_dom^{-1})
  Matrix scaled = codomain.sqrt_weight().asDiagonal() * m *
                  domain.sqrt_weight().cwiseInverse().asDiagonal();
  if (scaled.size() == 1) return std::abs(scaled(0, 0));
  Eigen::JacobiSVD<Matrix> svd(scaled);
  return svd.singularValues()(0);
}

double weighted_op_norm(const Matrix& m, const HilbertSpace& space) {
  return weighted_op_norm(m, space, space);
}

Matrix weighted_adjoint(const Matrix& m, const HilbertSpace& codomain,
                        const HilbertSpace& domain) {
  return domain.weight().cwiseInverse().asDiagonal() * m.transpose() *
         codomain.weight().asDiagonal();
}

Matrix weighted_adjoint(const Matrix& m, const HilbertSpace& space) {
  return weighted_adjoint(m, space, space);
}

Matrix weighted_symmetrize(const Matrix& m, const HilbertSpace& space) {
  return 0.5 * (m + weighted_adjoint(m, space));
}

double self_adjoint_defect(const Matrix& m, const HilbertSpace& space) {
  return weighted_op_norm(m - weighted_adjoint(m, space), space);
}

Vector symmetrized_eigenvalues(const Matrix& m, const HilbertSpace& space) {
  Matrix scaled = space.sqrt_weight().asDiagonal() * m *
                  space.sqrt_weight().cwiseInverse().asDiagonal();
  Matrix sym = 0.5 * (scaled + scaled.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SpectralEstimateError("symmetrized_eigenvalues: eigensolver failed");
  return es.eigenvalues();
}

Matrix mat_exp(const Matrix& a, double t) {
  require_finite(a, "mat_exp");
  if (t == 0.0) return Matrix::Identity(a.rows(), a.cols());
  return (t * a).exp();
}

Operator mat_exp(const Operator& a, double t) {
  if (!(a.codomain == a.domain))
    throw InvalidOperatorError("mat_exp: operator must be square on one space");
  return Operator(mat_exp(a.mat, t), a.codomain, a.domain);
}

Matrix yosida(const Matrix& a, double n) {
  require_finite(a, "yosida");
  const Eigen::Index d = a.rows();
  Matrix shifted = n * Matrix::Identity(d, d) - a;
  Eigen::FullPivLU<Matrix> lu(shifted);
  const double abscissa = spectral_abscissa(a);
  if (!lu.isInvertible() || n <= abscissa) {
    std::ostringstream os;
    os << "yosida: resolvent failure at n = " << n
       << " (spectral abscissa estimate " << abscissa << ")";
    throw ResolventFailure(os.str());
  }
  return n * n * lu.inverse() - n * Matrix::Identity(d, d);
}

Operator yosida(const Operator& a, double n) {
  if (!(a.codomain == a.domain))
    throw InvalidOperatorError("yosida: operator must be square on one space");
  return Operator(yosida(a.mat, n), a.codomain, a.domain);
}

double spectral_abscissa(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw SpectralEstimateError("spectral_abscissa: eigensolver failed");
  return es.eigenvalues().real().maxCoeff();
}

GrowthBound growth_bound(const Operator& a, double horizon, int grid_points) {
  if (!(horizon > 0.0)) throw InvalidOperatorError("growth_bound: horizon must be > 0");
  if (grid_points < 2) throw InvalidOperatorError("growth_bound: grid_points must be >= 2");
  GrowthBound gb;
  gb.omega = spectral_abscissa(a.mat);
  const Matrix step = mat_exp(a.mat, horizon / (grid_points - 1));
  Matrix current = Matrix::Identity(a.rows(), a.rows());
  double m = 1.0;
  for (int k = 0; k < grid_points; ++k) {
    const double t = horizon * k / (grid_points - 1);
    m = std::max(m, weighted_op_norm(current, a.codomain) * std::exp(-gb.omega * t));
    current = step * current;
  }
  gb.M = m;
  return gb;
}

Operator adjoint(const Operator& l) {
  return Operator(weighted_adjoint(l.mat, l.codomain, l.domain), l.domain, l.codomain);
}

PsdReport is_psd(const Matrix& m, const HilbertSpace& space, double tol) {
  const double scale = weighted_op_norm(m, space);
  const double defect = self_adjoint_defect(m, space);
  if (defect > tol * (1.0 + scale)) {
    std::ostringstream os;
    os << "is_psd: operator is not W-self-adjoint, defect " << defect;
    throw SymmetryViolationError(os.str(), defect);
  }
  PsdReport rep;
  rep.min_eigenvalue = symmetrized_eigenvalues(m, space).minCoeff();
  rep.psd = rep.min_eigenvalue >= -tol;
  return rep;
}

PsdReport is_psd(const Operator& l, double tol) {
  if (!(l.codomain == l.domain))
    throw InvalidOperatorError("is_psd: operator must be square on one space");
  return is_psd(l.mat, l.codomain, tol);
}

double sup_exp_norm(const Matrix& a, const HilbertSpace& space, double horizon,
                    int grid_points) {
  const Matrix step = mat_exp(a, horizon / (grid_points - 1));
  Matrix current = Matrix::Identity(a.rows(), a.rows());
  double m = 1.0;
  for (int k = 0; k < grid_points; ++k) {
    m = std::max(m, weighted_op_norm(current, space));
    current = step * current;
  }
  return m;
}

}  // namespace lqmfg
