#ifndef LQMFG_HILBERT_HPP
#define LQMFG_HILBERT_HPP

#include <Eigen/Dense>

#include "lqmfg/errors.hpp"

namespace lqmfg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Finite-dimensional real Hilbert space with a diagonal Gram matrix:
/// <x,y>_W = sum_i w_i x_i y_i. The weights encode the L^2 factor of a
/// lifted delay space on a uniform cell grid; the plain Euclidean space
/// has all weights equal to one.
class HilbertSpace {
public:
  explicit HilbertSpace(Vector weight);
  static HilbertSpace euclidean(int dim);

  int dim() const { return static_cast<int>(weight_.size()); }
  const Vector& weight() const { return weight_; }
  const Vector& sqrt_weight() const { return sqrt_weight_; }

  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  bool operator==(const HilbertSpace& other) const {
    return weight_ == other.weight_;
  }

private:
  Vector weight_;
  Vector sqrt_weight_;
};

/// Bounded linear operator between two weighted spaces, stored as its
/// coordinate matrix. Square operators on the state space cover A, Q, ...;
/// rectangular ones cover B (controls to states) and sigma (noise to states).
struct Operator {
  Matrix mat;
  HilbertSpace codomain;  // row space
  HilbertSpace domain;    // column space

  Operator(Matrix m, HilbertSpace cod, HilbertSpace dom);
  static Operator square(Matrix m, const HilbertSpace& space);

  int rows() const { return static_cast<int>(mat.rows()); }
  int cols() const { return static_cast<int>(mat.cols()); }
  bool is_square_on(const HilbertSpace& space) const {
    return codomain == space && domain == space;
  }
};

/// Certificate pair (M, omega) with ||e^{tA}||_W <= M e^{omega t} on [0,T],
/// checked on a sampling grid.
struct GrowthBound {
  double M = 1.0;
  double omega = 0.0;
};

// ---- weighted-norm helpers on raw matrices -------------------------------

/// Operator norm induced by the weighted inner products (largest singular
/// value of D_cod * M * D_dom^{-1} with D = diag(sqrt(w))).
double weighted_op_norm(const Matrix& m, const HilbertSpace& codomain,
                        const HilbertSpace& domain);
double weighted_op_norm(const Matrix& m, const HilbertSpace& space);

/// W-adjoint in coordinates: W_dom^{-1} M^T W_cod.
Matrix weighted_adjoint(const Matrix& m, const HilbertSpace& codomain,
                        const HilbertSpace& domain);
Matrix weighted_adjoint(const Matrix& m, const HilbertSpace& space);

/// Eigenvalues of the symmetrized coordinate form D M D^{-1} of a
/// W-self-adjoint operator (ascending).
Vector symmetrized_eigenvalues(const Matrix& m, const HilbertSpace& space);

/// ||M - M*||_W, the self-adjointness defect.
double self_adjoint_defect(const Matrix& m, const HilbertSpace& space);

/// (M + M*)/2 in the W sense.
Matrix weighted_symmetrize(const Matrix& m, const HilbertSpace& space);

// ---- linops operations ----------------------------------------------------

/// Matrix exponential e^{tA} (scaling-and-squaring with Pade approximation).
/// Exact identity for t = 0; negative t is allowed on truncations.
Operator mat_exp(const Operator& a, double t);
Matrix mat_exp(const Matrix& a, double t);

/// Yosida approximant A_n = n^2 (nI - A)^{-1} - n I. Requires n to exceed
/// the real parts of A's spectrum so that nI - A is invertible.
Operator yosida(const Operator& a, double n);
Matrix yosida(const Matrix& a, double n);

/// Growth certificate: omega = max real part of the spectrum, M = max over
/// a sampled grid of ||e^{tA}||_W e^{-omega t}, floored at one.
GrowthBound growth_bound(const Operator& a, double horizon, int grid_points);

/// W-adjoint as an Operator (swaps domain and codomain).
Operator adjoint(const Operator& l);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// Positive-semidefiniteness of a W-self-adjoint operator: smallest
/// eigenvalue of the symmetrized coordinate form >= -tol. Throws
/// SymmetryViolationError if the input is not self-adjoint within tol.
PsdReport is_psd(const Operator& l, double tol);
PsdReport is_psd(const Matrix& m, const HilbertSpace& space, double tol);

/// Sampled sup of ||e^{tA}||_W over [0, horizon], floored at one.
double sup_exp_norm(const Matrix& a, const HilbertSpace& space, double horizon,
                    int grid_points = 1000);

/// Largest real part of A's eigenvalues.
double spectral_abscissa(const Matrix& a);

void require_finite(const Matrix& m, const char* label);

}  // namespace lqmfg

#endif
