#pragma once

#include <stdexcept>
#include <string>

namespace infdelay {

/// Raised when arguments violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time integrator produced a non-finite value.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double time, const std::string& what);

  /// First time at which a non-finite state was observed.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Linear-algebra failure (eigensolver did not converge, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infdelay
