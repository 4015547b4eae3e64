#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "infdelay/modal_field.hpp"

namespace infdelay {

/// f(t) = sum_k a_k(t) g_k: scalar amplitudes times fixed spatial profiles.
class ForcingSpec {
 public:
  struct Term {
    std::function<double(double)> amplitude;
    ModalField profile;
  };

  explicit ForcingSpec(std::size_t n_modes, std::string kind = "zero");

  static ForcingSpec zero(std::size_t n_modes);
  /// a(t) = sin(sqrt(t)) (sqrt of max(t, 0)).
  static ForcingSpec sin_sqrt(const ModalField& profile);
  /// a(t) = sin(2 pi t).
  static ForcingSpec periodic(const ModalField& profile);
  /// a(t) = sin(2 pi t / sqrt 2) + sin(2 pi t); no single phase makes it asymptotically periodic.
  static ForcingSpec quasi_periodic(const ModalField& profile);
  /// a(t) = amplitude * e^{-rate t}, a C_0 function on t >= 0.
  static ForcingSpec decaying(const ModalField& profile, double amplitude, double rate);
  /// Linear interpolation of samples a(t0 + i step); constant extension outside.
  static ForcingSpec from_samples(double t0, double step, std::vector<double> amplitudes, const ModalField& profile);
  static ForcingSpec custom(std::function<double(double)> amplitude, const ModalField& profile, std::string kind = "custom");

  ForcingSpec& add(Term term);
  ForcingSpec& add(const ForcingSpec& other);

  std::size_t n_modes() const { return n_modes_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::string& kind() const { return kind_; }
  bool is_zero() const { return terms_.empty(); }

  ModalField at(double t) const;
  /// Contribution to one mode (0-based index).
  double at(double t, std::size_t mode) const;
  /// True when some term has a non-zero profile entry in `mode`.
  bool touches(std::size_t mode) const;

 private:
  std::size_t n_modes_;
  std::string kind_;
  std::vector<Term> terms_;
};

}  // namespace infdelay
