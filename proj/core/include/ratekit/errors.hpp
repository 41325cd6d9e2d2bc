#pragma once

#include <stdexcept>
#include <string>

namespace ratekit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested at (or too close to) a pole of the gamma function.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& msg) : DomainError(msg) {}
};

// Adaptive quadrature could not meet the requested tolerance within budget.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Contour abscissa does not separate the left and right pole sets.
class ContourError : public Error {
 public:
  explicit ContourError(const std::string& msg) : Error(msg) {}
};

// Truncated contour still carries non-negligible integrand mass at +-iT.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& msg) : Error(msg) {}
};

// Two lower parameters differ by an integer: simple-pole residue series
// does not apply and the caller must fall back to the contour route.
class CoincidentPoleError : public Error {
 public:
  explicit CoincidentPoleError(const std::string& msg) : Error(msg) {}
};

// Residue terms kept growing instead of converging.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

// delta/rho is not a positive integer, so no Meijer-G reduction exists.
class NonIntegerRatioError : public Error {
 public:
  explicit NonIntegerRatioError(const std::string& msg) : Error(msg) {}
};

// Requested representation is not available for this integral family.
class UnsupportedVariantError : public Error {
 public:
  explicit UnsupportedVariantError(const std::string& msg) : Error(msg) {}
};

// Mellin transform evaluated outside its convergence strip.
class StripViolationError : public Error {
 public:
  explicit StripViolationError(const std::string& msg) : Error(msg) {}
};

// Finite-difference step so small that roundoff noise dominates.
class StepTooSmallError : public Error {
 public:
  explicit StepTooSmallError(const std::string& msg) : Error(msg) {}
};

// Independent evaluation methods disagree beyond their combined estimates.
class MethodDisagreement : public Error {
 public:
  MethodDisagreement(const std::string& msg, double first, double second)
      : Error(msg), first_value(first), second_value(second) {}
  double first_value;
  double second_value;
};

}  // namespace ratekit
