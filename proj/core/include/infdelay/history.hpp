#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "infdelay/modal_field.hpp"

namespace infdelay {

/// Uniform truncated history grid on [-theta_max, 0] with `intervals` cells,
/// together with the weight exponent gamma of the phase space C_gamma.
struct GridSpec {
  double theta_max = 40.0;
  std::size_t intervals = 400;
  double gamma = 0.5;

  double spacing() const { return theta_max / static_cast<double>(intervals); }

  /// Nodes -theta_max + j * spacing; the first node is exactly -theta_max and
  /// the last exactly 0.
  std::vector<double> nodes() const;

  void validate() const;
};

/// Grid that coincides with `grid` for theta < -2 and switches to a uniform
/// power-of-two spacing no larger than min(spacing, 1/(2n)) on [-2, 0].
/// Used wherever the width-1/n ramp of the G^n lift must be resolved.
std::vector<double> refined_nodes(const GridSpec& grid, int n);

/// Position of a coordinate inside a strictly increasing node array.
struct Bracket {
  std::size_t lo = 0;   ///< left node index
  double frac = 0.0;    ///< weight of node lo + 1, in [0, 1)
  bool clamped = false; ///< coordinate fell below the first node
};

/// O(1) lookup on uniform grids, binary search otherwise.
class GridLocator {
 public:
  GridLocator() = default;
  explicit GridLocator(std::span<const double> nodes);

  Bracket locate(double x) const;
  bool uniform() const { return uniform_; }

 private:
  std::span<const double> nodes_;
  bool uniform_ = false;
  double first_ = 0.0;
  double spacing_ = 0.0;
};

/// A sampled element of C_gamma: values on a strictly increasing grid of
/// [-Theta, 0] ending exactly at 0, read between nodes by linear
/// interpolation. Requests below -Theta are clamped to the oldest node and
/// flagged, never extrapolated.
class History {
 public:
  History(std::vector<double> theta, std::vector<ModalField> values, double gamma);
  History(const History& other);
  History(History&& other) noexcept;
  History& operator=(const History& other);
  History& operator=(History&& other) noexcept;
  ~History() = default;

  static History constant(const GridSpec& grid, const ModalField& value);
  static History zero(const GridSpec& grid, std::size_t n_modes);
  static History from_function(std::vector<double> theta, double gamma,
                               const std::function<ModalField(double)>& fn);
  static History from_function(const GridSpec& grid, const std::function<ModalField(double)>& fn);

  const std::vector<double>& theta() const { return theta_; }
  const std::vector<ModalField>& values() const { return values_; }
  const ModalField& value(std::size_t node) const { return values_[node]; }
  double gamma() const { return gamma_; }
  double truncation() const { return -theta_.front(); }
  std::size_t size() const { return theta_.size(); }
  std::size_t n_modes() const { return values_.front().n_modes(); }

  /// Linear interpolation at theta <= 0.
  ModalField at(double theta, bool* clamped = nullptr) const;
  /// Scalar interpolation of one mode (0-based index).
  double at(double theta, std::size_t mode, bool* clamped = nullptr) const;

  /// Samples of one mode across the grid (0-based index).
  std::vector<double> mode_samples(std::size_t mode) const;

  /// Set when the history was assembled from reads below the truncation.
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  friend bool operator==(const History& a, const History& b) {
    return a.gamma_ == b.gamma_ && a.theta_ == b.theta_ && a.values_ == b.values_;
  }

 private:
  std::vector<double> theta_;
  std::vector<ModalField> values_;
  double gamma_;
  bool truncated_ = false;
  GridLocator locator_;

  void rebind();
};

/// Weighted sup-norm max_j e^{gamma theta_j} ||phi(theta_j)||.
double norm_gamma(const History& phi);

/// G^n lift of a point value: (n theta + 1) x on [-1/n, 0], zero before.
History gn_lift(const ModalField& x, int n, std::vector<double> theta, double gamma);
History gn_lift(const ModalField& x, int n, const GridSpec& grid);

/// Trapezoid weights for a strictly increasing node array.
std::vector<double> trapezoid_weights(std::span<const double> nodes);

}  // namespace infdelay
