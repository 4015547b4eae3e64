#include "infdelay/forcing.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "infdelay/errors.hpp"

namespace infdelay {

ForcingSpec::ForcingSpec(std::size_t n_modes, std::string kind) : n_modes_(n_modes), kind_(std::move(kind)) {
  if (n_modes_ < 1) throw InvalidInput("ForcingSpec: need at least one mode");
}

ForcingSpec ForcingSpec::zero(std::size_t n_modes) { return ForcingSpec(n_modes, "zero"); }

ForcingSpec ForcingSpec::sin_sqrt(const ModalField& profile) {
  return custom([](double t) { return std::sin(std::sqrt(std::max(t, 0.0))); }, profile, "sin_sqrt");
}

ForcingSpec ForcingSpec::periodic(const ModalField& profile) {
  return custom([](double t) { return std::sin(2.0 * std::numbers::pi * t); }, profile, "periodic");
}

ForcingSpec ForcingSpec::quasi_periodic(const ModalField& profile) {
  return custom(
      [](double t) {
        return std::sin(2.0 * std::numbers::pi * t / std::numbers::sqrt2) + std::sin(2.0 * std::numbers::pi * t);
      },
      profile, "quasi_periodic");
}

ForcingSpec ForcingSpec::decaying(const ModalField& profile, double amplitude, double rate) {
  if (!(rate > 0.0)) throw InvalidInput("ForcingSpec::decaying: rate must be > 0");
  return custom([amplitude, rate](double t) { return amplitude * std::exp(-rate * t); }, profile, "decaying");
}

ForcingSpec ForcingSpec::from_samples(double t0, double step, std::vector<double> amplitudes,
                                      const ModalField& profile) {
  if (!(step > 0.0)) throw InvalidInput("ForcingSpec::from_samples: step must be > 0");
  if (amplitudes.empty()) throw InvalidInput("ForcingSpec::from_samples: no samples");
  for (double a : amplitudes) {
    if (!std::isfinite(a)) throw InvalidInput("ForcingSpec::from_samples: non-finite sample");
  }
  auto fn = [t0, step, a = std::move(amplitudes)](double t) {
    const double pos = (t - t0) / step;
    if (pos <= 0.0) return a.front();
    const double last = static_cast<double>(a.size() - 1);
    if (pos >= last) return a.back();
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    return (1.0 - frac) * a[lo] + frac * a[lo + 1];
  };
  return custom(std::move(fn), profile, "custom_samples");
}

ForcingSpec ForcingSpec::custom(std::function<double(double)> amplitude, const ModalField& profile, std::string kind) {
  ForcingSpec f(profile.n_modes(), std::move(kind));
  f.add(Term{std::move(amplitude), profile});
  return f;
}

ForcingSpec& ForcingSpec::add(Term term) {
  if (!term.amplitude) throw InvalidInput("ForcingSpec: empty amplitude function");
  if (term.profile.n_modes() != n_modes_) throw InvalidInput("ForcingSpec: profile mode count mismatch");
  if (!term.profile.all_finite()) throw InvalidInput("ForcingSpec: non-finite profile");
  if (!term.profile.is_zero()) terms_.push_back(std::move(term));
  return *this;
}

ForcingSpec& ForcingSpec::add(const ForcingSpec& other) {
  for (const auto& t : other.terms_) add(t);
  if (kind_ == "zero") kind_ = other.kind_;
  return *this;
}

ModalField ForcingSpec::at(double t) const {
  ModalField out(n_modes_);
  for (const auto& term : terms_) out.coeffs() += term.amplitude(t) * term.profile.coeffs();
  return out;
}

double ForcingSpec::at(double t, std::size_t mode) const {
  double v = 0.0;
  for (const auto& term : terms_) {
    const double g = term.profile[mode];
    if (g != 0.0) v += term.amplitude(t) * g;
  }
  return v;
}

bool ForcingSpec::touches(std::size_t mode) const {
  for (const auto& term : terms_) {
    if (term.profile[mode] != 0.0) return true;
  }
  return false;
}

}  // namespace infdelay
