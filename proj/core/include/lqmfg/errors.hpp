#ifndef LQMFG_ERRORS_HPP
#define LQMFG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lqmfg {

/// Base class for all solver and validation errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operator entries are not finite or dimensions are inconsistent.
class InvalidOperatorError : public Error {
public:
  using Error::Error;
};

/// nI - A could not be inverted for the requested resolvent parameter.
class ResolventFailure : public Error {
public:
  using Error::Error;
};

/// Eigenvalue computation failed while estimating spectral quantities.
class SpectralEstimateError : public Error {
public:
  using Error::Error;
};

/// An operator expected to be self-adjoint in the weighted inner product
/// is not, beyond the allowed tolerance.
class SymmetryViolationError : public Error {
public:
  SymmetryViolationError(const std::string& what, double defect)
      : Error(what), defect(defect) {}
  double defect;
};

/// A time-stepped quantity exceeded the blow-up guard.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& what, int node_index, double t)
      : Error(what), node_index(node_index), t(t) {}
  int node_index;
  double t;
};

/// A path that must stay positive semidefinite lost positivity.
class PositivityLossError : public Error {
public:
  PositivityLossError(const std::string& what, int node_index, double min_eig)
      : Error(what), node_index(node_index), min_eig(min_eig) {}
  int node_index;
  double min_eig;
};

/// A fixed-point sweep failed to contract within the allowed iterations.
class ContractionFailureError : public Error {
public:
  ContractionFailureError(const std::string& what, double last_diff)
      : Error(what), last_diff(last_diff) {}
  double last_diff;
};

/// A structural precondition (e.g. dissipativity) does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Certified continuation would need an absurd number of segments.
class PathologicalInstanceError : public Error {
public:
  using Error::Error;
};

/// The requested case is outside what the library computes.
class UnsupportedCaseError : public Error {
public:
  using Error::Error;
};

/// Two paths that must share a time grid do not.
class GridMismatchError : public Error {
public:
  using Error::Error;
};

/// Picard iteration stopped without a contraction certificate.
class NoCertificateError : public Error {
public:
  NoCertificateError(const std::string& what, double last_diff)
      : Error(what), last_diff(last_diff) {}
  double last_diff;
};

/// Scenario configuration is malformed.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A Monte-Carlo trajectory became non-finite.
class SimulationBlowupError : public Error {
public:
  SimulationBlowupError(const std::string& what, long path_index, double t)
      : Error(what), path_index(path_index), t(t) {}
  long path_index;
  double t;
};

}  // namespace lqmfg

#endif
