#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "infdelay/sampled_function.hpp"

namespace infdelay {

struct PeriodicityResult {
  double tail_sup = 0.0;
  std::vector<double> times;   ///< grid times t with t + 1 in range
  std::vector<double> values;  ///< r(t) = ||x(t+1) - e^{ip} x(t)||
};

/// Residual of x against the twisted shift, sup taken over x.tail_window.
/// Step must divide 1 and tail_window.end + 1 must lie in the sampled range.
PeriodicityResult periodicity_residual(const SampledFunction& x, double p);

struct C0Result {
  bool in_c0 = false;
  double tail_sup = 0.0;
  std::vector<Window> windows;  ///< [T0/4, T0/2], [T0/2, T0], [T0, T1], clipped to the samples
  std::vector<double> window_sups;
};

/// x is taken to vanish at infinity when its sup over the tail window is
/// below tol and the windowed sups do not increase.
C0Result c0_test(const SampledFunction& x, double tol);

/// sum_{k=0}^{N} lambda^{-k-1} x(t + k). Requires |lambda| > 1, t on the grid
/// and t + N within range.
Eigen::VectorXcd truncated_resolvent(const SampledFunction& x, std::complex<double> lambda, std::size_t N, double t);

struct IndicatorOptions {
  std::size_t zeta_count = 256;
  std::vector<double> radii{1.5, 1.25, 1.1, 1.05, 1.02};
  std::size_t N = 200;
  /// Range of resolvent start times. Default: last quarter of [t0, t_end - N].
  std::optional<Window> window;
  double threshold_fraction = 0.1;  ///< theta_abs = fraction * sup ||x||
  double slack = 0.05;              ///< tolerated relative drop per radius step
};

struct SpectrumIndicator {
  std::vector<std::complex<double>> zeta_grid;
  std::vector<double> radii;
  Eigen::MatrixXd values;  ///< values(i, k) = I(zeta_i, radii[k])
  std::vector<std::size_t> flagged;
  double threshold = 0.0;
  Window window;

  bool is_flagged(std::size_t zeta_index) const;
  std::vector<std::complex<double>> flagged_points() const;
};

/// I(zeta, r) = (r - 1) sup_{t in window} ||truncated_resolvent(x, r zeta, N, t)||.
/// zeta is flagged when I(zeta, r_min) > theta_abs and I does not drop by more
/// than `slack` between consecutive radii as r decreases to 1. Heuristic.
SpectrumIndicator spectrum_indicator(const SampledFunction& x, const IndicatorOptions& opts = {});

/// Index of the grid point of an n-point equispaced circle grid nearest to e^{ip}.
std::size_t nearest_zeta(std::size_t zeta_count, double p);

}  // namespace infdelay
