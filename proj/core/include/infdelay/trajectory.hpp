#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "infdelay/modal_field.hpp"

namespace infdelay {

/// Uniformly sampled solution path u(t0 + i * step), i = 0..size-1.
class Trajectory {
 public:
  Trajectory(double t0, double step, std::vector<ModalField> values);

  double t0() const { return t0_; }
  double step() const { return step_; }
  std::size_t size() const { return values_.size(); }
  std::size_t n_modes() const { return values_.front().n_modes(); }
  double time(std::size_t i) const { return t0_ + static_cast<double>(i) * step_; }
  double t_end() const { return time(values_.size() - 1); }

  const std::vector<ModalField>& values() const { return values_; }
  const ModalField& value(std::size_t i) const { return values_[i]; }

  /// Index of a grid time, if `t` lies on the grid (relative tolerance 1e-9 of a step).
  std::optional<std::size_t> index_of(double t) const;
  /// As index_of, throwing InvalidInput naming `op` when off-grid.
  std::size_t require_index(double t, std::string_view op) const;

  /// Linear interpolation on [t0, t_end].
  ModalField at(double t) const;
  double at(double t, std::size_t mode) const;

  /// Samples of f(t) at the trajectory times, when recorded.
  std::optional<std::vector<ModalField>> forcing_record;
  /// Samples of the C_0 perturbation eps(t), when recorded.
  std::optional<std::vector<ModalField>> epsilon_record;

 private:
  double t0_;
  double step_;
  std::vector<ModalField> values_;

  void locate(double t, std::size_t& lo, double& frac) const;
};

}  // namespace infdelay
