#include "delay_stepper.hpp"

#include <algorithm>
#include <cmath>

#include "infdelay/errors.hpp"

namespace infdelay::detail {

namespace {

constexpr double kSnap = 1e-9;

// (e^{x} - 1) / x, stable near 0.
double phi1(double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }

}  // namespace

ScalarDelayStepper::ScalarDelayStepper(const ScalarDelayProblem& problem) : p_(problem) {
  if (p_.theta.size() != p_.weights.size() || p_.theta.size() != p_.history.size() || p_.theta.size() < 2) {
    throw InvalidInput("ScalarDelayStepper: grid, weights and history sizes differ");
  }
  if (p_.locator == nullptr) throw InvalidInput("ScalarDelayStepper: missing grid locator");
  zero_kernel_ = std::all_of(p_.weights.begin(), p_.weights.end(), [](double w) { return w == 0.0; });

  const std::size_t n = p_.history.size();
  std::size_t first = n, last = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (p_.history[j] != 0.0) {
      first = std::min(first, j);
      last = j;
    }
  }
  if (first < n) {
    has_support_ = true;
    unbounded_below_ = first == 0;
    support_lo_ = p_.theta[first == 0 ? 0 : first - 1];
    support_hi_ = last + 1 < n ? p_.theta[last + 1] : 1.0;
  }
}

double ScalarDelayStepper::history_at(double theta) const {
  const Bracket b = p_.locator->locate(theta);
  if (b.frac == 0.0) return p_.history[b.lo];
  return (1.0 - b.frac) * p_.history[b.lo] + b.frac * p_.history[b.lo + 1];
}

double ScalarDelayStepper::read(std::span<const double> u, double h, double tau) const {
  if (tau < 0.0) return history_at(tau);
  const double pos = tau / h;
  auto k = static_cast<std::size_t>(std::floor(pos));
  double frac = pos - static_cast<double>(k);
  if (frac > 1.0 - kSnap) {
    ++k;
    frac = 0.0;
  }
  if (k + 1 >= u.size()) return u.back();
  if (frac < kSnap) return u[k];
  return (1.0 - frac) * u[k] + frac * u[k + 1];
}

double ScalarDelayStepper::memory(double tl, std::span<const double> u, double h, double* last_coeff) const {
  *last_coeff = 0.0;
  if (zero_kernel_) return 0.0;
  const auto& th = p_.theta;
  const auto begin = th.begin();
  // nodes with tl + theta >= 0 read the computed samples
  const auto i0 = static_cast<std::size_t>(std::lower_bound(begin, th.end(), -tl - 1e-12) - begin);

  double acc = 0.0;
  if (has_support_ && i0 > 0) {
    std::size_t a = 0;
    if (!unbounded_below_) {
      a = static_cast<std::size_t>(std::upper_bound(begin, th.end(), support_lo_ - tl) - begin);
    }
    auto b = static_cast<std::size_t>(std::lower_bound(begin, th.end(), support_hi_ - tl) - begin);
    b = std::min(b, i0);
    for (std::size_t i = a; i < b; ++i) acc += p_.weights[i] * history_at(tl + th[i]);
  }

  const std::size_t last = u.size() - 1;
  for (std::size_t i = i0; i < th.size(); ++i) {
    const double tau = std::max(tl + th[i], 0.0);
    const double pos = tau / h;
    auto k = static_cast<std::size_t>(std::floor(pos));
    double frac = pos - static_cast<double>(k);
    if (frac > 1.0 - kSnap) {
      ++k;
      frac = 0.0;
    }
    if (frac < kSnap) frac = 0.0;
    if (k >= last) {
      acc += p_.weights[i] * u[last];
      *last_coeff += p_.weights[i];
    } else if (frac == 0.0) {
      acc += p_.weights[i] * u[k];
    } else {
      acc += p_.weights[i] * ((1.0 - frac) * u[k] + frac * u[k + 1]);
      if (k + 1 == last) *last_coeff += p_.weights[i] * frac;
    }
  }
  return acc;
}

std::vector<double> ScalarDelayStepper::integrate(double t0, double h, std::size_t steps) const {
  const double a = p_.eigenvalue;
  const double decay = std::exp(a * h);
  const double gain = h * phi1(a * h);

  std::vector<double> u;
  u.reserve(steps + 1);
  u.push_back(p_.history.back());

  double coeff = 0.0;
  double mem = memory(0.0, u, h, &coeff);
  for (std::size_t i = 0; i < steps; ++i) {
    const double tl = static_cast<double>(i) * h;
    const double f_mid = p_.forcing ? p_.forcing(t0 + tl + 0.5 * h) : 0.0;

    const double pred = decay * u[i] + gain * (mem + f_mid);
    u.push_back(pred);
    double c_next = 0.0;
    const double mem_pred = memory(tl + h, u, h, &c_next);
    const double next = decay * u[i] + gain * (0.5 * (mem + mem_pred) + f_mid);
    if (!std::isfinite(next)) {
      throw DivergenceError(t0 + tl + h, "delay solver produced a non-finite value");
    }
    u.back() = next;
    // memory is linear in the samples; only the newest sample changed
    mem = mem_pred + c_next * (next - pred);
  }
  return u;
}

}  // namespace infdelay::detail
