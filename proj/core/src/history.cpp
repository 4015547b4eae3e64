#include "infdelay/history.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "infdelay/errors.hpp"

namespace infdelay {

namespace {

constexpr double kSnap = 1e-9;

void validate_nodes(const std::vector<double>& theta) {
  if (theta.empty()) throw InvalidInput("History: empty theta grid");
  if (theta.back() != 0.0) throw InvalidInput("History: last grid node must be exactly 0");
  if (theta.size() < 2) throw InvalidInput("History: grid needs at least two nodes");
  for (std::size_t j = 1; j < theta.size(); ++j) {
    if (!(theta[j] > theta[j - 1])) throw InvalidInput("History: grid must be strictly increasing");
  }
  if (!std::isfinite(theta.front())) throw InvalidInput("History: non-finite grid node");
}

}  // namespace

std::vector<double> GridSpec::nodes() const {
  validate();
  std::vector<double> out(intervals + 1);
  const double d = spacing();
  for (std::size_t j = 0; j <= intervals; ++j) {
    out[j] = -theta_max + static_cast<double>(j) * d;
  }
  out.front() = -theta_max;
  out.back() = 0.0;
  return out;
}

void GridSpec::validate() const {
  if (!(theta_max > 0.0) || !std::isfinite(theta_max)) throw InvalidInput("GridSpec: theta_max must be > 0");
  if (intervals < 1) throw InvalidInput("GridSpec: need at least one interval");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidInput("GridSpec: gamma must be > 0");
}

std::vector<double> refined_nodes(const GridSpec& grid, int n) {
  if (n < 1) throw InvalidInput("refined_nodes: n must be >= 1");
  const auto coarse = grid.nodes();
  const double target = std::min(grid.spacing(), 1.0 / (2.0 * n));
  double fine = 1.0;
  while (fine > target) fine *= 0.5;

  const double fine_lo = std::max(-2.0, -grid.theta_max);
  std::vector<double> fine_nodes;
  for (std::size_t i = 0;; ++i) {
    const double x = -static_cast<double>(i) * fine;
    if (x < fine_lo - kSnap * fine) break;
    fine_nodes.push_back(x);
  }
  const double last_fine = fine_nodes.back();

  std::vector<double> out;
  for (double x : coarse) {
    if (x < last_fine - kSnap * grid.spacing()) out.push_back(x);
  }
  if (out.empty() && last_fine > -grid.theta_max) out.push_back(-grid.theta_max);
  for (auto it = fine_nodes.rbegin(); it != fine_nodes.rend(); ++it) out.push_back(*it);
  out.back() = 0.0;
  return out;
}

GridLocator::GridLocator(std::span<const double> nodes) : nodes_(nodes) {
  if (nodes_.size() < 2) return;
  first_ = nodes_.front();
  spacing_ = (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
  uniform_ = true;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double expected = first_ + static_cast<double>(j) * spacing_;
    if (std::abs(nodes_[j] - expected) > 1e-9 * spacing_) {
      uniform_ = false;
      break;
    }
  }
}

Bracket GridLocator::locate(double x) const {
  const std::size_t last = nodes_.size() - 1;
  if (x <= nodes_.front()) {
    return {0, 0.0, x < nodes_.front() - kSnap * std::max(spacing_, 1e-300)};
  }
  if (x >= nodes_.back()) return {last, 0.0, false};
  std::size_t lo;
  if (uniform_) {
    const double pos = (x - first_) / spacing_;
    lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= last) lo = last - 1;
    // correct for rounding at cell boundaries
    while (lo > 0 && nodes_[lo] > x) --lo;
    while (lo + 1 < last && nodes_[lo + 1] <= x) ++lo;
  } else {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    lo = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
  }
  const double width = nodes_[lo + 1] - nodes_[lo];
  double frac = (x - nodes_[lo]) / width;
  if (frac < kSnap) frac = 0.0;
  if (frac > 1.0 - kSnap) {
    ++lo;
    frac = 0.0;
  }
  return {lo, frac, false};
}

History::History(std::vector<double> theta, std::vector<ModalField> values, double gamma)
    : theta_(std::move(theta)), values_(std::move(values)), gamma_(gamma) {
  validate_nodes(theta_);
  if (values_.size() != theta_.size()) {
    throw InvalidInput("History: " + std::to_string(values_.size()) + " values for " +
                       std::to_string(theta_.size()) + " nodes");
  }
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw InvalidInput("History: gamma must be > 0");
  const std::size_t modes = values_.front().n_modes();
  if (modes < 1) throw InvalidInput("History: values need at least one mode");
  for (const auto& v : values_) {
    if (v.n_modes() != modes) throw InvalidInput("History: inconsistent mode counts");
    if (!v.all_finite()) throw InvalidInput("History: non-finite value");
  }
  rebind();
}

History::History(const History& other)
    : theta_(other.theta_), values_(other.values_), gamma_(other.gamma_), truncated_(other.truncated_) {
  rebind();
}

History::History(History&& other) noexcept
    : theta_(std::move(other.theta_)),
      values_(std::move(other.values_)),
      gamma_(other.gamma_),
      truncated_(other.truncated_) {
  rebind();
}

History& History::operator=(const History& other) {
  if (this != &other) {
    theta_ = other.theta_;
    values_ = other.values_;
    gamma_ = other.gamma_;
    truncated_ = other.truncated_;
    rebind();
  }
  return *this;
}

History& History::operator=(History&& other) noexcept {
  theta_ = std::move(other.theta_);
  values_ = std::move(other.values_);
  gamma_ = other.gamma_;
  truncated_ = other.truncated_;
  rebind();
  return *this;
}

void History::rebind() { locator_ = GridLocator(std::span<const double>(theta_)); }

History History::constant(const GridSpec& grid, const ModalField& value) {
  auto theta = grid.nodes();
  std::vector<ModalField> values(theta.size(), value);
  return History(std::move(theta), std::move(values), grid.gamma);
}

History History::zero(const GridSpec& grid, std::size_t n_modes) {
  return constant(grid, ModalField(n_modes));
}

History History::from_function(std::vector<double> theta, double gamma,
                               const std::function<ModalField(double)>& fn) {
  std::vector<ModalField> values;
  values.reserve(theta.size());
  for (double th : theta) values.push_back(fn(th));
  return History(std::move(theta), std::move(values), gamma);
}

History History::from_function(const GridSpec& grid, const std::function<ModalField(double)>& fn) {
  return from_function(grid.nodes(), grid.gamma, fn);
}

ModalField History::at(double theta, bool* clamped) const {
  if (theta > kSnap) throw InvalidInput("History::at: theta must be <= 0");
  const Bracket b = locator_.locate(theta);
  if (clamped) *clamped = b.clamped;
  if (b.frac == 0.0) return values_[b.lo];
  return values_[b.lo] * (1.0 - b.frac) + values_[b.lo + 1] * b.frac;
}

double History::at(double theta, std::size_t mode, bool* clamped) const {
  if (theta > kSnap) throw InvalidInput("History::at: theta must be <= 0");
  const Bracket b = locator_.locate(theta);
  if (clamped) *clamped = b.clamped;
  if (b.frac == 0.0) return values_[b.lo][mode];
  return (1.0 - b.frac) * values_[b.lo][mode] + b.frac * values_[b.lo + 1][mode];
}

std::vector<double> History::mode_samples(std::size_t mode) const {
  if (mode >= n_modes()) throw InvalidInput("History::mode_samples: mode index out of range");
  std::vector<double> out(theta_.size());
  for (std::size_t j = 0; j < theta_.size(); ++j) out[j] = values_[j][mode];
  return out;
}

double norm_gamma(const History& phi) {
  if (phi.size() == 0) throw InvalidInput("norm_gamma: empty history");
  double best = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    best = std::max(best, std::exp(phi.gamma() * phi.theta()[j]) * phi.value(j).norm());
  }
  return best;
}

History gn_lift(const ModalField& x, int n, std::vector<double> theta, double gamma) {
  if (n < 1) throw InvalidInput("gn_lift: n must be >= 1");
  const double width = 1.0 / static_cast<double>(n);
  return History::from_function(std::move(theta), gamma, [&](double th) {
    if (th < -width) return ModalField(x.n_modes());
    return x * (static_cast<double>(n) * th + 1.0);
  });
}

History gn_lift(const ModalField& x, int n, const GridSpec& grid) {
  return gn_lift(x, n, grid.nodes(), grid.gamma);
}

std::vector<double> trapezoid_weights(std::span<const double> nodes) {
  std::vector<double> w(nodes.size(), 0.0);
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const double half = 0.5 * (nodes[j + 1] - nodes[j]);
    w[j] += half;
    w[j + 1] += half;
  }
  return w;
}

}  // namespace infdelay
