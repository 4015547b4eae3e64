#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "infdelay/errors.hpp"
#include "infdelay/operators.hpp"

using namespace infdelay;

TEST(DiagonalGenerator, HeatEigenvalues) {
  const auto gen = DiagonalGenerator::heat(5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(gen.eigenvalue(k), -static_cast<double>((k + 1) * (k + 1)));
  EXPECT_THROW(DiagonalGenerator(std::vector<double>{}), InvalidInput);
}

TEST(Semigroup, ActsModeByModeAndComposes) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ut(0.0, 2.0);
  ModalField z(4);
  for (std::size_t m = 0; m < 4; ++m) z[m] = nd(rng);
  EXPECT_EQ(semigroup_apply(z, 0.0), z);
  const ModalField a = semigroup_apply(z, 0.3);
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_NEAR(a[m], z[m] * std::exp(-static_cast<double>((m + 1) * (m + 1)) * 0.3), 1e-15);
  }
  for (int i = 0; i < 50; ++i) {
    const double s = ut(rng), t = ut(rng);
    const ModalField lhs = semigroup_apply(semigroup_apply(z, s), t);
    const ModalField rhs = semigroup_apply(z, s + t);
    EXPECT_LE((lhs - rhs).norm(), 1e-14 * (1.0 + z.norm()));
    EXPECT_LE(semigroup_apply(z, t).norm(), z.norm());
  }
  EXPECT_THROW(semigroup_apply(z, -0.1), InvalidInput);
}

TEST(DelayKernel, ExactOnWeightedLinearHistories) {
  // phi(theta) = e^{-theta/2} (a + b theta): L phi = 1/2 int e^{theta/2} (a + b theta)
  const GridSpec g;
  const auto k = DelayKernel::exponential();
  const double e20 = std::exp(-20.0);
  for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {2.0, -0.5}}) {
    const History phi = History::from_function(g, [&](double th) {
      return ModalField::unit(1, 1) * (std::exp(-0.5 * th) * (a + b * th));
    });
    const double exact = a * (1.0 - e20) + b * (-2.0 + 42.0 * e20);
    EXPECT_NEAR(apply_L(k, phi)[0], exact, 1e-11) << a << "," << b;
  }
}

TEST(DelayKernel, ContractionInGammaNorm) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const GridSpec g;
  const auto k = DelayKernel::exponential();
  const double bound = 1.0 - std::exp(-20.0);
  for (int trial = 0; trial < 300; ++trial) {
    ModalField dir(3);
    for (std::size_t m = 0; m < 3; ++m) dir[m] = nd(rng);
    const double freq = 3.0 * ud(rng);
    const bool rough = trial % 2 == 0;
    const History phi = History::from_function(g, [&](double th) {
      const double amp = rough ? ud(rng) : std::cos(freq * th);
      return dir * (amp * std::exp(-0.5 * th));
    });
    EXPECT_LE(apply_L(k, phi).norm(), bound * norm_gamma(phi) * (1.0 + 1e-14));
  }
  const History aligned = History::from_function(g, [](double th) { return ModalField::unit(2, 1) * std::exp(-0.5 * th); });
  EXPECT_LE(apply_L(k, aligned).norm(), 1.0);
  EXPECT_NEAR(apply_L(k, aligned).norm(), bound, 1e-12);
}

TEST(DelayKernel, ZeroKernelAndMismatch) {
  const GridSpec g;
  const History phi = History::constant(g, ModalField::unit(2, 2));
  EXPECT_TRUE(apply_L(DelayKernel::zero(), phi).is_zero());
  EXPECT_THROW(apply_L(DelayKernel::exponential(0.5, 20.0), phi), InvalidInput);
  EXPECT_THROW(DelayKernel::exponential(0.0), InvalidInput);
  EXPECT_TRUE(DelayKernel::exponential().is_exponential());
  EXPECT_FALSE(DelayKernel([](double) { return 1.0; }, 1.0, 40.0).is_exponential());
}

TEST(DelayKernel, CustomWeightIntegratesPolynomialTimesExponential) {
  // w = 1, gamma = 1/2, phi = e^{-theta/2}: L phi = int_{-4}^0 e^{-theta/2} = 2 (e^2 - 1)
  const GridSpec g{4.0, 40, 0.5};
  const DelayKernel k([](double) { return 1.0; }, 1.0, 4.0);
  const History phi = History::from_function(g, [](double th) { return ModalField::unit(1, 1) * std::exp(-0.5 * th); });
  EXPECT_NEAR(apply_L(k, phi)[0], 2.0 * (std::exp(2.0) - 1.0), 1e-10);
}

TEST(Equation, LotkaVolterraDefaults) {
  const Equation eq = Equation::lotka_volterra(8);
  EXPECT_EQ(eq.n_modes(), 8u);
  EXPECT_EQ(eq.generator.eigenvalue(7), -64.0);
  EXPECT_EQ(eq.kernel.scale(), 0.5);
  EXPECT_EQ(eq.kernel.truncation(), 40.0);
}

TEST(EvolutionSemigroup, ShiftsAndDamps) {
  const auto gen = DiagonalGenerator::heat(2);
  SampledFunction g;
  g.t0 = 0.0;
  g.step = 0.1;
  for (int i = 0; i <= 50; ++i) {
    Eigen::VectorXcd v(2);
    v << std::complex<double>(0.1 * i, 0.0), std::complex<double>(0.0, 1.0);
    g.samples.push_back(v);
  }
  const SampledFunction out = evolution_semigroup_apply(gen, g, 0.5);
  EXPECT_NEAR(out.t0, 0.5, 1e-15);
  ASSERT_EQ(out.size(), g.size() - 5);
  // [T^h g](xi) = T(h) g(xi - h)
  EXPECT_NEAR(out.samples[10][0].real(), std::exp(-0.5) * 0.1 * 10, 1e-14);
  EXPECT_NEAR(out.samples[10][1].imag(), std::exp(-2.0), 1e-14);
  EXPECT_THROW(evolution_semigroup_apply(gen, g, 0.05), InvalidInput);
  EXPECT_THROW(evolution_semigroup_apply(gen, g, -0.1), InvalidInput);
}
