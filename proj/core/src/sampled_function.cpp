#include "infdelay/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "infdelay/errors.hpp"

namespace infdelay {

std::optional<std::size_t> SampledFunction::index_of(double t) const {
  const double pos = (t - t0) / step;
  const double k = std::round(pos);
  if (std::abs(pos - k) > 1e-6 || k < 0.0 || k > static_cast<double>(samples.size()) - 1.0) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(k);
}

std::size_t SampledFunction::samples_per_unit() const {
  const double per = 1.0 / step;
  const double k = std::round(per);
  if (k < 1.0 || std::abs(per - k) > 1e-6 * k) throw InvalidInput("SampledFunction: step must divide 1");
  return static_cast<std::size_t>(k);
}

double SampledFunction::sup_norm() const {
  double best = 0.0;
  for (const auto& s : samples) best = std::max(best, s.norm());
  return best;
}

void SampledFunction::validate() const {
  if (!(step > 0.0)) throw InvalidInput("SampledFunction: step must be > 0");
  if (samples.empty()) throw InvalidInput("SampledFunction: no samples");
  const auto d = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != d) throw InvalidInput("SampledFunction: inconsistent dimensions");
    if (!s.allFinite()) throw InvalidInput("SampledFunction: non-finite sample");
  }
}

SampledFunction SampledFunction::from_trajectory(const Trajectory& traj, Window tail) {
  SampledFunction out;
  out.t0 = traj.t0();
  out.step = traj.step();
  out.tail_window = tail;
  out.samples.reserve(traj.size());
  for (const auto& v : traj.values()) out.samples.push_back(v.coeffs().cast<std::complex<double>>());
  return out;
}

SampledFunction SampledFunction::scalar(double t0, double step, std::size_t count,
                                        const std::function<std::complex<double>(double)>& fn, Window tail) {
  SampledFunction out;
  out.t0 = t0;
  out.step = step;
  out.tail_window = tail;
  out.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::VectorXcd v(1);
    v[0] = fn(t0 + static_cast<double>(i) * step);
    out.samples.push_back(std::move(v));
  }
  return out;
}

}  // namespace infdelay
