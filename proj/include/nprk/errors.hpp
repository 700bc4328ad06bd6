#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nprk {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input supplied by the caller (unknown names, malformed methods,
/// inconsistent dimensions). The CLI maps these to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A computation that could not be completed (singular systems, solver
/// breakdown, non-finite values). The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class UnknownMethod : public UsageError {
 public:
  explicit UnknownMethod(const std::string& name)
      : UsageError("unknown method '" + name + "'") {}
};

class InvalidMethod : public UsageError {
 public:
  using UsageError::UsageError;
};

class DimensionMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

class InvalidConfig : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Method uses a coefficient outside the restricted diagonally-implicit ansatz.
class NotInAnsatz : public UsageError {
 public:
  using UsageError::UsageError;
};

class SharedWeightViolation : public UsageError {
 public:
  using UsageError::UsageError;
};

class AbscissaMismatch : public NumericalError {
 public:
  AbscissaMismatch(const std::string& what, double deviation)
      : NumericalError(what), deviation_(deviation) {}
  [[nodiscard]] double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularInterpolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleEncountered : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroDiagonal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// beta_infinity and gamma are only defined when the denominator of R does
/// not depend on z2 (implicit-explicit models).
class NotImexModel : public UsageError {
 public:
  using UsageError::UsageError;
};

class DivergentLimit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MaxIterExceeded : public NumericalError {
 public:
  MaxIterExceeded(const std::string& what, std::vector<double> last_iterate,
                  double residual_norm)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_norm_(residual_norm) {}
  [[nodiscard]] const std::vector<double>& last_iterate() const {
    return last_iterate_;
  }
  [[nodiscard]] double residual_norm() const { return residual_norm_; }

 private:
  std::vector<double> last_iterate_;
  double residual_norm_;
};

class SolverDiverged : public NumericalError {
 public:
  SolverDiverged(int stage, const std::string& detail)
      : NumericalError("implicit solve failed in stage " +
                       std::to_string(stage) + ": " + detail),
        stage_(stage) {}
  [[nodiscard]] int stage() const { return stage_; }

 private:
  int stage_;
};

class MissingSolver : public UsageError {
 public:
  using UsageError::UsageError;
};

class MissingCapability : public UsageError {
 public:
  using UsageError::UsageError;
};

class InsufficientData : public UsageError {
 public:
  using UsageError::UsageError;
};

class DimensionTooLarge : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace nprk
