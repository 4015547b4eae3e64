#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "infdelay/errors.hpp"
#include "infdelay/monodromy.hpp"
#include "infdelay/solver.hpp"
#include "oracles.hpp"

using namespace infdelay;

namespace {

const MonodromyMatrix& default_p2() {
  static const MonodromyMatrix p = build_monodromy(Equation::lotka_volterra(2), GridSpec{}, 1e-3);
  return p;
}

}  // namespace

TEST(CharacteristicRoots, MatchLongDoubleFormulaAndAreNegative) {
  for (int n = 1; n <= 12; ++n) {
    const auto [lo, hi] = characteristic_roots(n);
    const auto [olo, ohi] = oracle::roots_ld(n);
    EXPECT_NEAR(lo, static_cast<double>(olo), 1e-12 * std::abs(static_cast<double>(olo)));
    EXPECT_NEAR(hi, static_cast<double>(ohi), 1e-13);
    EXPECT_LT(lo, hi);
    EXPECT_LT(hi, 0.0);
    EXPECT_LT(std::abs(static_cast<double>(oracle::char_poly_ld(n, hi))), 1e-12);
    EXPECT_DOUBLE_EQ(characteristic_discriminant(n), std::pow(1.0 - n * n, 2) + 2.0);
  }
  const auto [lo, hi] = characteristic_roots(-1.0, 0.5);
  EXPECT_NEAR(hi, -1.0 + std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(lo, -1.0 - std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(MultiplierOracle, AgreesWithMatrixExponential) {
  for (int n = 1; n <= 6; ++n) {
    const auto [lo, hi] = multiplier_oracle(n);
    const auto [elo, ehi] = oracle::multipliers_expm(n);
    EXPECT_NEAR(hi, ehi, 1e-12 * ehi) << n;
    EXPECT_NEAR(lo, elo, 1e-9 * elo + 1e-15) << n;
  }
  EXPECT_NEAR(multiplier_oracle(1).first, std::exp(-1.0 - std::sqrt(2.0) / 2.0), 1e-15);
}

TEST(BuildMonodromy, ShiftRowsAreExact) {
  const MonodromyMatrix& p = default_p2();
  ASSERT_EQ(p.n_modes(), 2u);
  const auto& b = p.blocks[0];
  ASSERT_EQ(b.rows(), 401);
  // theta_i <= -1 reads the history at theta_i + 1, i.e. node i + 10
  for (Eigen::Index i = 0; i + 10 < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      ASSERT_EQ(b(i, j), j == i + 10 ? 1.0 : 0.0) << i << "," << j;
    }
  }
}

TEST(BuildMonodromy, ColumnsMatchEvolve) {
  const Equation eq = Equation::lotka_volterra(1, 10.0);
  const GridSpec g{10.0, 100, 0.5};
  const MonodromyMatrix p = build_monodromy(eq, g, 1e-3);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  const History phi = History::from_function(g, [&](double th) { return ModalField::unit(1, 1) * (nd(rng) * std::exp(-0.5 * th)); });
  Eigen::VectorXd v(static_cast<Eigen::Index>(phi.size()));
  for (std::size_t j = 0; j < phi.size(); ++j) v[static_cast<Eigen::Index>(j)] = phi.value(j)[0];
  const Eigen::VectorXd pv = p.blocks[0] * v;
  const History direct = evolve(eq, phi, 0.0, 1.0, 1e-3);
  double err = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double w = std::exp(0.5 * phi.theta()[j]);
    err = std::max(err, w * std::abs(pv[static_cast<Eigen::Index>(j)] - direct.value(j)[0]));
    scale = std::max(scale, w * std::abs(direct.value(j)[0]));
  }
  EXPECT_LE(err, 1e-12 * scale);
}

TEST(BuildMonodromy, AutonomousStartTimeIrrelevant) {
  const Equation eq = Equation::lotka_volterra(1, 8.0);
  const GridSpec g{8.0, 80, 0.5};
  const MonodromyMatrix a = build_monodromy(eq, g, 1e-3, 0.0);
  const MonodromyMatrix b = build_monodromy(eq, g, 1e-3, 0.5);
  EXPECT_EQ(a.blocks[0], b.blocks[0]);
  EXPECT_EQ(b.start_time, 0.5);
}

TEST(BuildMonodromy, RejectsIncompatibleGrids) {
  const Equation eq = Equation::lotka_volterra(1);
  EXPECT_THROW(build_monodromy(eq, GridSpec{40.0, 300, 0.5}, 1e-3), InvalidInput);
  EXPECT_THROW(build_monodromy(eq, GridSpec{20.0, 200, 0.5}, 1e-3), InvalidInput);
  EXPECT_THROW(build_monodromy(eq, GridSpec{}, 0.3), InvalidInput);
}

TEST(Spectrum, SortedAndMatchesLeadingMultiplier) {
  const SpectrumReport r = spectrum(default_p2());
  ASSERT_EQ(r.eigenvalues.size(), 2u);
  for (const auto& block : r.eigenvalues) {
    ASSERT_EQ(block.size(), 401u);
    for (std::size_t i = 1; i < block.size(); ++i) ASSERT_GE(std::abs(block[i - 1]), std::abs(block[i]) - 1e-15);
  }
  const double mu1 = oracle::multipliers_expm(1).second;
  EXPECT_NEAR(r.eigenvalues[0][0].real(), mu1, 1e-3 * mu1);
  EXPECT_NEAR(r.eigenvalues[0][0].imag(), 0.0, 1e-12);
  EXPECT_NEAR(r.max_modulus, mu1, 1e-3 * mu1);
  EXPECT_TRUE(r.sigma_gamma_empty);
  EXPECT_TRUE(r.on_circle.empty());
  EXPECT_NEAR(r.circle_distance, 1.0 - r.max_modulus, 1e-15);

  bool found = false;
  for (const auto& m : r.matches) {
    if (m.mode == 1 && std::abs(m.multiplier - mu1) < 1e-12) {
      found = true;
      EXPECT_TRUE(m.within_tolerance);
      EXPECT_LT(m.rel_error, 1e-3);
    }
  }
  EXPECT_TRUE(found);

  // every eigenvalue that is not a matched multiplier sits inside the essential radius
  for (std::size_t b = 0; b < r.eigenvalues.size(); ++b) {
    for (const auto& mu : r.eigenvalues[b]) {
      bool matched = false;
      for (const auto& m : r.matches) matched = matched || (m.mode == b + 1 && m.nearest == mu && m.within_tolerance);
      if (!matched) EXPECT_LT(std::abs(mu), std::exp(-0.5)) << "mode " << b + 1 << " " << mu;
    }
  }
}

TEST(Spectrum, NeutralModeLandsOnTheCircle) {
  const Equation eq{DiagonalGenerator({0.0}), DelayKernel::zero(10.0)};
  const MonodromyMatrix p = build_monodromy(eq, GridSpec{10.0, 100, 0.5}, 1e-3);
  const SpectrumReport r = spectrum(p);
  EXPECT_FALSE(r.sigma_gamma_empty);
  ASSERT_FALSE(r.on_circle.empty());
  EXPECT_NEAR(std::abs(r.on_circle.front().second - 1.0), 0.0, 1e-9);
  EXPECT_TRUE(r.matches.empty());
}

TEST(Spectrum, JsonCarriesVerdictsAndMatchTable) {
  const Equation eq = Equation::lotka_volterra(4);
  const SpectrumReport r = spectrum(build_monodromy(eq, GridSpec{}, 1e-3));
  const auto j = nlohmann::json::parse(spectrum_to_json(r));
  for (const char* key : {"sigma_gamma_empty", "max_modulus", "circle_distance", "on_circle", "matches",
                          "matched_count", "oracle_count", "blocks"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  // mu_+(1..4) and mu_-(1) are above the 0.05 floor
  EXPECT_EQ(j["oracle_count"].get<int>(), 5);
  EXPECT_TRUE(j["sigma_gamma_empty"].get<bool>());
  ASSERT_EQ(j["blocks"].size(), 4u);
  EXPECT_EQ(j["blocks"][3]["mode"].get<int>(), 4);
  EXPECT_EQ(j["blocks"][0]["eigenvalues"].size(), 401u);
  EXPECT_EQ(j["blocks"][0]["eigenvalues"][0].size(), 2u);
  EXPECT_NEAR(j["max_modulus"].get<double>(), r.max_modulus, 1e-15);
}

TEST(ProcessAxioms, HoldOnTheDiscretization) {
  const Equation eq = Equation::lotka_volterra(2, 10.0);
  const GridSpec g{10.0, 100, 0.5};
  std::vector<History> hs;
  hs.push_back(History::from_function(g, [](double th) {
    ModalField v(2);
    v[0] = std::exp(0.5 * th);
    v[1] = std::sin(th);
    return v;
  }));
  hs.push_back(History::constant(g, ModalField::unit(2, 2)));
  const std::vector<ProcessTriple> triples{{0.0, 0.5, 1.0}, {0.2, 1.2, 2.0}};
  const ProcessAxiomReport rep = check_process_axioms(eq, 1e-2, hs, triples);
  EXPECT_TRUE(rep.identity_exact);
  EXPECT_LT(rep.cocycle_max_residual, 1e-2);
  EXPECT_EQ(rep.periodicity_max_residual, 0.0);
  EXPECT_TRUE(rep.bound_holds);
  EXPECT_TRUE(rep.ok(1e-2));
  EXPECT_LT(rep.continuity_max_jump, 0.5);
}
