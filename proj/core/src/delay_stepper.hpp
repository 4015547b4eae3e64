#pragma once

// Scalar (single sine mode) integrator shared by the quadrature solver and the
// monodromy builder. Not installed.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "infdelay/history.hpp"

namespace infdelay::detail {

struct ScalarDelayProblem {
  double eigenvalue = 0.0;
  std::span<const double> theta;    // history grid
  std::span<const double> weights;  // kernel quadrature weights on theta
  std::span<const double> history;  // mode samples on theta
  const GridLocator* locator = nullptr;
  std::function<double(double)> forcing;  // absolute time -> value; empty means zero
};

class ScalarDelayStepper {
 public:
  explicit ScalarDelayStepper(const ScalarDelayProblem& problem);

  /// Exponential Euler with the memory term and forcing frozen at the step
  /// midpoint: u(t+h) = e^{ah} u(t) + phi1(ah) h [L(u_{t+h/2}) + f(t+h/2)].
  /// Returns u(t0 + i h), i = 0..steps.
  std::vector<double> integrate(double t0, double h, std::size_t steps) const;

  /// u(tau) for local time tau given the computed samples u (step h).
  double read(std::span<const double> u, double h, double tau) const;

 private:
  const ScalarDelayProblem& p_;
  bool has_support_ = false;
  bool unbounded_below_ = false;
  double support_lo_ = 0.0;  // history vanishes at and below this coordinate
  double support_hi_ = 0.0;  // ... and at and above this one
  bool zero_kernel_ = true;

  double history_at(double theta) const;
  double memory(double tl, std::span<const double> u, double h, double* last_coeff) const;
};

}  // namespace infdelay::detail
