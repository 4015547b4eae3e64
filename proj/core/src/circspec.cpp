#include "infdelay/circspec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infdelay/errors.hpp"

namespace infdelay {

namespace {

constexpr double kTimeTol = 1e-9;

// First and last sample indices inside [w.begin, w.end].
std::pair<std::size_t, std::size_t> index_range(const SampledFunction& x, Window w) {
  const double lo = std::ceil((w.begin - x.t0) / x.step - 1e-6);
  const double hi = std::floor((w.end - x.t0) / x.step + 1e-6);
  const double last = static_cast<double>(x.size()) - 1.0;
  if (hi < 0.0 || lo > last || lo > hi) throw InvalidInput("circspec: window contains no samples");
  return {static_cast<std::size_t>(std::max(lo, 0.0)), static_cast<std::size_t>(std::min(hi, last))};
}

void require_tail(const SampledFunction& x) {
  const Window& w = x.tail_window;
  if (!(w.begin < w.end)) throw InvalidInput("circspec: tail window must satisfy T0 < T1");
  if (w.begin < x.t0 - kTimeTol || w.end > x.t_end() + kTimeTol) {
    throw InvalidInput("circspec: tail window outside the sampled range");
  }
}

double window_sup(const SampledFunction& x, Window w) {
  const auto [a, b] = index_range(x, w);
  double best = 0.0;
  for (std::size_t i = a; i <= b; ++i) best = std::max(best, x.samples[i].norm());
  return best;
}

}  // namespace

PeriodicityResult periodicity_residual(const SampledFunction& x, double p) {
  x.validate();
  require_tail(x);
  const std::size_t spu = x.samples_per_unit();
  if (x.tail_window.end + 1.0 > x.t_end() + kTimeTol) {
    throw InvalidInput("periodicity_residual: tail window shifted by 1 leaves the sampled range");
  }
  const std::complex<double> twist = std::polar(1.0, p);
  PeriodicityResult out;
  const std::size_t count = x.size() - spu;
  out.times.reserve(count);
  out.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.times.push_back(x.time(i));
    out.values.push_back((x.samples[i + spu] - twist * x.samples[i]).norm());
  }
  const auto [a, b] = index_range(x, x.tail_window);
  for (std::size_t i = a; i <= b; ++i) out.tail_sup = std::max(out.tail_sup, out.values[i]);
  return out;
}

C0Result c0_test(const SampledFunction& x, double tol) {
  x.validate();
  require_tail(x);
  const double t0 = x.tail_window.begin;
  const double t1 = x.tail_window.end;
  C0Result out;
  out.tail_sup = window_sup(x, x.tail_window);
  const Window candidates[] = {{t0 / 4.0, t0 / 2.0}, {t0 / 2.0, t0}, {t0, t1}};
  for (Window w : candidates) {
    w.begin = std::max(w.begin, x.t0);
    w.end = std::min(w.end, x.t_end());
    if (!(w.begin <= w.end)) continue;
    out.windows.push_back(w);
    out.window_sups.push_back(window_sup(x, w));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < out.window_sups.size(); ++i) {
    if (out.window_sups[i] > out.window_sups[i - 1]) monotone = false;
  }
  out.in_c0 = out.tail_sup < tol && monotone;
  return out;
}

namespace {

Eigen::VectorXcd neumann_sum(const SampledFunction& x, std::complex<double> inv, std::size_t N, std::size_t start,
                             std::size_t spu) {
  // Horner: inv (x_0 + inv (x_1 + ... + inv x_N))
  Eigen::VectorXcd acc = x.samples[start + N * spu];
  for (std::size_t k = N; k-- > 0;) {
    acc *= inv;
    acc += x.samples[start + k * spu];
  }
  return acc * inv;
}

}  // namespace

Eigen::VectorXcd truncated_resolvent(const SampledFunction& x, std::complex<double> lambda, std::size_t N, double t) {
  if (!(std::abs(lambda) > 1.0)) throw InvalidInput("truncated_resolvent: requires |lambda| > 1");
  x.validate();
  const std::size_t spu = x.samples_per_unit();
  const auto start = x.index_of(t);
  if (!start) throw InvalidInput("truncated_resolvent: t is not a sample time");
  if (*start + N * spu >= x.size()) throw InvalidInput("truncated_resolvent: t + N beyond the sampled range");
  return neumann_sum(x, 1.0 / lambda, N, *start, spu);
}

bool SpectrumIndicator::is_flagged(std::size_t zeta_index) const {
  return std::find(flagged.begin(), flagged.end(), zeta_index) != flagged.end();
}

std::vector<std::complex<double>> SpectrumIndicator::flagged_points() const {
  std::vector<std::complex<double>> out;
  out.reserve(flagged.size());
  for (auto i : flagged) out.push_back(zeta_grid[i]);
  return out;
}

std::size_t nearest_zeta(std::size_t zeta_count, double p) {
  if (zeta_count == 0) throw InvalidInput("nearest_zeta: empty grid");
  const double turns = p / (2.0 * std::numbers::pi);
  const double frac = turns - std::floor(turns);
  return static_cast<std::size_t>(std::llround(frac * static_cast<double>(zeta_count))) % zeta_count;
}

SpectrumIndicator spectrum_indicator(const SampledFunction& x, const IndicatorOptions& opts) {
  x.validate();
  if (opts.zeta_count == 0) throw InvalidInput("spectrum_indicator: zeta_count must be > 0");
  if (opts.radii.empty()) throw InvalidInput("spectrum_indicator: no radii");
  for (std::size_t k = 0; k < opts.radii.size(); ++k) {
    if (!(opts.radii[k] > 1.0)) throw InvalidInput("spectrum_indicator: radii must exceed 1");
    if (k > 0 && !(opts.radii[k] < opts.radii[k - 1])) throw InvalidInput("spectrum_indicator: radii must decrease");
  }
  if (!(opts.slack >= 0.0 && opts.slack < 1.0)) throw InvalidInput("spectrum_indicator: slack must lie in [0, 1)");
  const std::size_t spu = x.samples_per_unit();
  const double reach = static_cast<double>(opts.N);
  const double last_start = x.t_end() - reach;
  if (last_start < x.t0 - kTimeTol) throw InvalidInput("spectrum_indicator: N exceeds the sampled range");

  SpectrumIndicator out;
  out.radii = opts.radii;
  out.window = opts.window.value_or(Window{last_start - 0.25 * (last_start - x.t0), last_start});
  if (out.window.end > last_start + kTimeTol || out.window.begin < x.t0 - kTimeTol) {
    throw InvalidInput("spectrum_indicator: window plus N exceeds the sampled range");
  }
  const auto [a, b] = index_range(x, out.window);
  out.threshold = opts.threshold_fraction * x.sup_norm();

  out.zeta_grid.reserve(opts.zeta_count);
  for (std::size_t i = 0; i < opts.zeta_count; ++i) {
    out.zeta_grid.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                static_cast<double>(opts.zeta_count)));
  }
  const auto nz = static_cast<Eigen::Index>(opts.zeta_count);
  const auto nr = static_cast<Eigen::Index>(opts.radii.size());
  out.values = Eigen::MatrixXd::Zero(nz, nr);

  for (Eigen::Index i = 0; i < nz; ++i) {
    for (Eigen::Index k = 0; k < nr; ++k) {
      const double r = opts.radii[static_cast<std::size_t>(k)];
      const std::complex<double> inv = 1.0 / (r * out.zeta_grid[static_cast<std::size_t>(i)]);
      double sup = 0.0;
      for (std::size_t s = a; s <= b; ++s) sup = std::max(sup, neumann_sum(x, inv, opts.N, s, spu).norm());
      out.values(i, k) = (r - 1.0) * sup;
    }
    bool rising = out.values(i, nr - 1) > out.threshold;
    for (Eigen::Index k = 1; k < nr && rising; ++k) {
      if (out.values(i, k) < (1.0 - opts.slack) * out.values(i, k - 1)) rising = false;
    }
    if (rising) out.flagged.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace infdelay
