#include <cmath>
#include <complex>

#include <benchmark/benchmark.h>

#include "infdelay/circspec.hpp"
#include "infdelay/monodromy.hpp"
#include "infdelay/solver.hpp"

using namespace infdelay;

namespace {

History exp_half(const GridSpec& g, std::size_t modes) {
  return History::from_function(g, [modes](double th) { return ModalField::unit(modes, 1) * std::exp(0.5 * th); });
}

SolveOptions horizon(double t_final) {
  SolveOptions o;
  o.t_final = t_final;
  o.step = 1e-3;
  return o;
}

}  // namespace

static void BM_SolveModal(benchmark::State& state) {
  const auto modes = static_cast<std::size_t>(state.range(0));
  const Equation eq = Equation::lotka_volterra(modes);
  const History phi = exp_half(GridSpec{}, modes);
  const ForcingSpec f = ForcingSpec::sin_sqrt(ModalField::unit(modes, 1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_modal(eq, phi, f, horizon(10.0)));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SolveModal)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SolveQuadrature(benchmark::State& state) {
  const auto modes = static_cast<std::size_t>(state.range(0));
  const Equation eq = Equation::lotka_volterra(modes);
  const History phi = exp_half(GridSpec{}, modes);
  const ForcingSpec f = ForcingSpec::sin_sqrt(ModalField::unit(modes, 1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_quadrature(eq, phi, f, horizon(2.0)));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_SolveQuadrature)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_BuildMonodromy(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  const double theta_max = static_cast<double>(nodes) / 10.0;
  const Equation eq = Equation::lotka_volterra(1, theta_max);
  const GridSpec g{theta_max, nodes, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(build_monodromy(eq, g, 1e-3));
}
BENCHMARK(BM_BuildMonodromy)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
  const MonodromyMatrix p = build_monodromy(Equation::lotka_volterra(1), GridSpec{}, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(p));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

static void BM_SpectrumIndicator(benchmark::State& state) {
  const SampledFunction x = SampledFunction::scalar(
      0.0, 0.25, 1681, [](double t) { return std::complex<double>(std::cos(M_PI * t)); }, Window{380.0, 419.0});
  IndicatorOptions o;
  o.zeta_count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_indicator(x, o));
}
BENCHMARK(BM_SpectrumIndicator)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_HnApply(benchmark::State& state) {
  const Equation eq = Equation::lotka_volterra(2);
  const ForcingSpec f = ForcingSpec::sin_sqrt(ModalField::unit(2, 1));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hn_apply(eq, f, 100.0, n, HnOptions{}));
}
BENCHMARK(BM_HnApply)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
