#pragma once

#include <stdexcept>
#include <string>

namespace cubeforge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A canonical height at the requested tolerance would need coordinates
/// larger than the configured digit budget (CLI exit code 3).
class PrecisionBudgetExceeded : public Error {
 public:
  PrecisionBudgetExceeded(const std::string& what, double achievable_tol)
      : Error(what), achievable_tol_(achievable_tol) {}
  double achievable_tol() const noexcept { return achievable_tol_; }

 private:
  double achievable_tol_;
};

/// An exact identity that must hold by construction did not. Indicates a bug
/// or corrupted input, never a tolerance issue.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace cubeforge
