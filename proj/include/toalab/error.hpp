#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace toalab {

/// Error categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  InvalidInput = 2,
  MethodInapplicable = 3,
  NonConvergence = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message)
      : Error(ErrorCode::InvalidInput, message) {}
};

/// Quantities expressed in different unit systems were combined.
class UnitMismatch : public InvalidInput {
 public:
  explicit UnitMismatch(const std::string& message) : InvalidInput(message) {}
};

class MethodInapplicable : public Error {
 public:
  explicit MethodInapplicable(const std::string& message)
      : Error(ErrorCode::MethodInapplicable, message) {}
};

class FluxInapplicable : public MethodInapplicable {
 public:
  explicit FluxInapplicable(const std::string& reason)
      : MethodInapplicable("flux inapplicable: " + reason) {}
};

class VanishingNormalization : public MethodInapplicable {
 public:
  explicit VanishingNormalization(const std::string& message)
      : MethodInapplicable(message) {}
};

class TrajectoryInterpretationRequired : public MethodInapplicable {
 public:
  explicit TrajectoryInterpretationRequired(const std::string& message)
      : MethodInapplicable("semiclassical inapplicable: " + message) {}
};

/// Two distributions give the same bin probability; no finite sample separates them.
class Indistinguishable : public MethodInapplicable {
 public:
  explicit Indistinguishable(const std::string& message)
      : MethodInapplicable(message) {}
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate reached.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, std::complex<double> best_value,
                 double best_error)
      : Error(ErrorCode::NonConvergence, message),
        best_value_(best_value),
        best_error_(best_error) {}

  std::complex<double> best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  std::complex<double> best_value_;
  double best_error_;
};

}  // namespace toalab
