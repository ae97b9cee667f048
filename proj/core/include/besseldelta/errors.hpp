#pragma once

#include <stdexcept>
#include <string>

namespace bdelta {

// Base of every error raised by the library. The CLI maps ParameterError,
// HypothesisError and DomainError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (e.g. x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Violated precondition of a theorem or operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A derivative-test hypothesis failed on the verification grid.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, int derivative_order, double point)
      : Error(what), derivative_order_(derivative_order), point_(point) {}

  int derivative_order() const noexcept { return derivative_order_; }
  double point() const noexcept { return point_; }

 private:
  int derivative_order_;
  double point_;
};

// The requested tolerance could not be met; carries the achieved estimate.
class PrecisionLossError : public Error {
 public:
  PrecisionLossError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// A computation would exceed a fixed work or memory budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double required = 0.0)
      : Error(what), required_(required) {}

  double required() const noexcept { return required_; }

 private:
  double required_;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// Input for which the operation is undefined (principal character, L* = 0).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace bdelta
