#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "infdelay/trajectory.hpp"

namespace infdelay {

/// Closed time interval [begin, end].
struct Window {
  double begin = 0.0;
  double end = 0.0;
};

/// Uniform samples of a bounded function R -> X (complexified), t0 + i * step.
/// `tail_window` marks the stretch used for modulo-C_0 estimates.
struct SampledFunction {
  double t0 = 0.0;
  double step = 1.0;
  std::vector<Eigen::VectorXcd> samples;
  Window tail_window;

  std::size_t size() const { return samples.size(); }
  std::size_t dim() const { return samples.empty() ? 0 : static_cast<std::size_t>(samples.front().size()); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * step; }
  double t_end() const { return time(samples.size() - 1); }

  /// Index of a grid time (tolerance 1e-6 of a step), if any.
  std::optional<std::size_t> index_of(double t) const;
  /// Number of samples per unit time; throws when the step does not divide 1.
  std::size_t samples_per_unit() const;
  /// sup_i ||samples[i]||
  double sup_norm() const;

  void validate() const;

  static SampledFunction from_trajectory(const Trajectory& traj, Window tail);
  static SampledFunction scalar(double t0, double step, std::size_t count,
                                const std::function<std::complex<double>(double)>& fn, Window tail);
};

}  // namespace infdelay
