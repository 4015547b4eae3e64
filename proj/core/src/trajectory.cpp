#include "infdelay/trajectory.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "infdelay/errors.hpp"

namespace infdelay {

namespace {
constexpr double kSnap = 1e-9;
}

Trajectory::Trajectory(double t0, double step, std::vector<ModalField> values)
    : t0_(t0), step_(step), values_(std::move(values)) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) throw InvalidInput("Trajectory: step must be > 0");
  if (values_.empty()) throw InvalidInput("Trajectory: needs at least one sample");
  const std::size_t modes = values_.front().n_modes();
  for (const auto& v : values_) {
    if (v.n_modes() != modes) throw InvalidInput("Trajectory: inconsistent mode counts");
    if (!v.all_finite()) throw InvalidInput("Trajectory: non-finite sample");
  }
}

std::optional<std::size_t> Trajectory::index_of(double t) const {
  const double pos = (t - t0_) / step_;
  const double k = std::round(pos);
  if (std::abs(pos - k) > 1e-6) return std::nullopt;
  if (k < 0.0 || k > static_cast<double>(values_.size() - 1)) return std::nullopt;
  return static_cast<std::size_t>(k);
}

std::size_t Trajectory::require_index(double t, std::string_view op) const {
  auto idx = index_of(t);
  if (!idx) {
    throw InvalidInput(std::string(op) + ": t = " + std::to_string(t) +
                       " is not a time of the trajectory grid");
  }
  return *idx;
}

void Trajectory::locate(double t, std::size_t& lo, double& frac) const {
  const double pos = (t - t0_) / step_;
  const double last = static_cast<double>(values_.size() - 1);
  if (pos < -kSnap || pos > last + kSnap) {
    throw InvalidInput("Trajectory::at: t = " + std::to_string(t) + " outside the sampled range");
  }
  if (pos <= 0.0) {
    lo = 0;
    frac = 0.0;
    return;
  }
  if (pos >= last) {
    lo = values_.size() - 1;
    frac = 0.0;
    return;
  }
  lo = static_cast<std::size_t>(std::floor(pos));
  frac = pos - static_cast<double>(lo);
  if (frac < kSnap) frac = 0.0;
  if (frac > 1.0 - kSnap) {
    ++lo;
    frac = 0.0;
  }
}

ModalField Trajectory::at(double t) const {
  std::size_t lo;
  double frac;
  locate(t, lo, frac);
  if (frac == 0.0) return values_[lo];
  return values_[lo] * (1.0 - frac) + values_[lo + 1] * frac;
}

double Trajectory::at(double t, std::size_t mode) const {
  std::size_t lo;
  double frac;
  locate(t, lo, frac);
  if (frac == 0.0) return values_[lo][mode];
  return (1.0 - frac) * values_[lo][mode] + frac * values_[lo + 1][mode];
}

}  // namespace infdelay
