#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "infdelay/errors.hpp"
#include "infdelay/history.hpp"
#include "infdelay/modal_field.hpp"

using namespace infdelay;

TEST(ModalField, ArithmeticAndNorm) {
  ModalField a(3), b(3);
  a[0] = 3.0;
  a[1] = 4.0;
  b[2] = 1.0;
  EXPECT_DOUBLE_EQ(a.norm(), 5.0);
  const ModalField c = a + 2.0 * b;
  EXPECT_DOUBLE_EQ(c[2], 2.0);
  EXPECT_EQ(c - 2.0 * b, a);
  EXPECT_TRUE(ModalField(4).is_zero());
  EXPECT_EQ(ModalField::unit(4, 2)[1], 1.0);
  EXPECT_EQ(ModalField::unit(4, 2).norm(), 1.0);
}

TEST(GridSpec, NodesHitEndpointsExactly) {
  const GridSpec g;
  const auto n = g.nodes();
  ASSERT_EQ(n.size(), 401u);
  EXPECT_EQ(n.front(), -40.0);
  EXPECT_EQ(n.back(), 0.0);
  EXPECT_NEAR(g.spacing(), 0.1, 1e-15);
  EXPECT_NEAR(n[390], -1.0, 1e-12);
}

TEST(GridSpec, RejectsBadParameters) {
  EXPECT_THROW((GridSpec{0.0, 10, 0.5}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{40.0, 0, 0.5}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{40.0, 10, 0.0}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{40.0, 10, -1.0}.nodes()), InvalidInput);
}

TEST(RefinedNodes, CoarseBelowMinusTwoFineAbove) {
  const GridSpec g;
  for (int n : {1, 8, 64, 128}) {
    const auto r = refined_nodes(g, n);
    EXPECT_EQ(r.front(), -40.0);
    EXPECT_EQ(r.back(), 0.0);
    const double limit = std::min(g.spacing(), 1.0 / (2.0 * n));
    for (std::size_t j = 1; j < r.size(); ++j) {
      ASSERT_GT(r[j], r[j - 1]);
      if (r[j - 1] >= -2.0 - 1e-12) EXPECT_LE(r[j] - r[j - 1], limit + 1e-15) << "n=" << n << " j=" << j;
    }
  }
  EXPECT_THROW(refined_nodes(g, 0), InvalidInput);
}

TEST(GridLocator, UniformLookupAgreesWithBinarySearch) {
  const auto nodes = GridSpec{}.nodes();
  std::vector<double> jittered = nodes;
  jittered[200] += 1e-3;  // breaks uniformity
  const GridLocator fast(nodes), slow(jittered);
  EXPECT_TRUE(fast.uniform());
  EXPECT_FALSE(slow.uniform());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-40.0, 0.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const Bracket b = fast.locate(x);
    ASSERT_LE(nodes[b.lo], x + 1e-12);
    ASSERT_GE(nodes[b.lo + 1], x - 1e-12);
    EXPECT_NEAR(nodes[b.lo] + b.frac * (nodes[b.lo + 1] - nodes[b.lo]), x, 1e-12);
    if (std::abs(x - jittered[200]) > 0.2) {
      const Bracket c = slow.locate(x);
      EXPECT_EQ(b.lo, c.lo);
    }
  }
  EXPECT_TRUE(fast.locate(-41.0).clamped);
}

TEST(History, ValidatesGrid) {
  const std::vector<ModalField> v(3, ModalField(1));
  EXPECT_THROW(History({-2.0, -1.0, -0.5}, v, 0.5), InvalidInput);
  EXPECT_THROW(History({-2.0, -2.0, 0.0}, v, 0.5), InvalidInput);
  EXPECT_THROW(History({-2.0, -1.0, 0.0}, std::vector<ModalField>(2, ModalField(1)), 0.5), InvalidInput);
  EXPECT_THROW(History({-2.0, -1.0, 0.0}, v, 0.0), InvalidInput);
  std::vector<ModalField> bad = v;
  bad[1][0] = std::nan("");
  EXPECT_THROW(History({-2.0, -1.0, 0.0}, bad, 0.5), InvalidInput);
}

TEST(History, InterpolatesLinearFunctionsExactly) {
  const GridSpec g{10.0, 37, 0.5};
  const History h = History::from_function(g, [](double th) {
    ModalField v(2);
    v[0] = 2.0 * th + 1.0;
    v[1] = -th;
    return v;
  });
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    const double th = u(rng);
    EXPECT_NEAR(h.at(th, std::size_t{0}), 2.0 * th + 1.0, 1e-12);
    EXPECT_NEAR(h.at(th)[1], -th, 1e-12);
  }
  bool clamped = false;
  EXPECT_NEAR(h.at(-12.0, std::size_t{0}, &clamped), -19.0, 1e-12);
  EXPECT_TRUE(clamped);
  EXPECT_THROW(h.at(0.5), InvalidInput);
}

TEST(History, CopiesAndMovesStayUsable) {
  auto make = [] { return History::from_function(GridSpec{4.0, 40, 0.5}, [](double th) {
                     ModalField v(1);
                     v[0] = th * th;
                     return v;
                   }); };
  History copy = make();
  {
    History original = make();
    copy = original;
  }
  History moved = std::move(copy);
  EXPECT_NEAR(moved.at(-1.05, std::size_t{0}), 0.5 * (1.0 + 1.21), 1e-12);
  EXPECT_EQ(moved, make());
}

TEST(NormGamma, WeightedSup) {
  const GridSpec g;
  ModalField c(3);
  c[0] = 1.0;
  c[2] = -2.0;
  EXPECT_NEAR(norm_gamma(History::constant(g, c)), c.norm(), 1e-15);
  const History decaying = History::from_function(g, [&](double th) { return c * std::exp(-0.5 * th); });
  EXPECT_NEAR(norm_gamma(decaying), c.norm(), 1e-12);
  std::vector<ModalField> vals = decaying.values();
  vals[200] *= 3.0;
  EXPECT_NEAR(norm_gamma(History(g.nodes(), vals, g.gamma)), 3.0 * c.norm(), 1e-12);
}

TEST(GnLift, NormPreservedAndSupportOneOverN) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const GridSpec g;
  for (int n : {1, 2, 4, 16, 64, 100}) {
    ModalField x(4);
    for (std::size_t m = 0; m < 4; ++m) x[m] = nd(rng);
    const History lift = gn_lift(x, n, g);
    EXPECT_NEAR(norm_gamma(lift), x.norm(), 1e-12) << n;
    EXPECT_EQ(lift.value(lift.size() - 1), x);
    for (std::size_t j = 0; j < lift.size(); ++j) {
      if (lift.theta()[j] <= -1.0 / n) EXPECT_TRUE(lift.value(j).is_zero());
    }
  }
  EXPECT_THROW(gn_lift(ModalField(1), 0, g), InvalidInput);
}

TEST(TrapezoidWeights, IntegratesLinearExactly) {
  const auto nodes = refined_nodes(GridSpec{}, 16);
  const auto w = trapezoid_weights(nodes);
  double len = 0.0, first = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    len += w[j];
    first += w[j] * nodes[j];
  }
  EXPECT_NEAR(len, 40.0, 1e-12);
  EXPECT_NEAR(first, -800.0, 1e-9);
}
