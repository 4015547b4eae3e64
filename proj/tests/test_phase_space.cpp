#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "infdelay/errors.hpp"
#include "infdelay/phase_space.hpp"

using namespace infdelay;

namespace {

History ramp_history(const GridSpec& g, std::size_t modes) {
  return History::from_function(g, [modes](double th) {
    ModalField v(modes);
    for (std::size_t m = 0; m < modes; ++m) v[m] = 1.0 + th / static_cast<double>(m + 1);
    return v;
  });
}

Trajectory random_path(std::mt19937_64& rng, const ModalField& start, double step, std::size_t n) {
  std::normal_distribution<double> nd;
  std::vector<ModalField> path;
  ModalField x = start;
  for (std::size_t i = 0; i < n; ++i) {
    path.push_back(x);
    for (std::size_t m = 0; m < x.n_modes(); ++m) x[m] += 0.3 * nd(rng);
  }
  return Trajectory(0.0, step, path);
}

}  // namespace

TEST(SegmentReader, SwitchesFromHistoryToTrajectory) {
  const GridSpec g{5.0, 50, 0.5};
  const History phi = ramp_history(g, 2);
  std::vector<ModalField> vals;
  for (int i = 0; i <= 20; ++i) {
    ModalField v(2);
    v[0] = 1.0 + 0.1 * i;
    v[1] = -0.1 * i;
    vals.push_back(v);
  }
  const Trajectory traj(0.0, 0.1, vals);
  const SegmentReader r(traj, phi);
  EXPECT_NEAR(r.read(1.05, std::size_t{0}), 2.05, 1e-12);
  EXPECT_NEAR(r.read(-2.0, std::size_t{0}), 1.0 - 2.0, 1e-12);
  EXPECT_NEAR(r.read(-2.0, 1), 1.0 - 1.0, 1e-12);
  bool clamped = false;
  r.read(-6.0, &clamped);
  EXPECT_TRUE(clamped);
}

TEST(Segment, InitialAtStartAndTruncationCarriesOver) {
  const GridSpec g{5.0, 50, 0.5};
  const History phi = ramp_history(g, 1);
  std::vector<ModalField> vals(31, ModalField::unit(1, 1) * 1.0);
  const Trajectory traj(0.0, 0.1, vals);
  EXPECT_EQ(segment(traj, phi, 0.0), phi);
  const History s = segment(traj, phi, 2.0);
  EXPECT_FALSE(s.truncated());
  History marked = phi;
  marked.mark_truncated();
  EXPECT_TRUE(segment(traj, marked, 2.0).truncated());
  EXPECT_NEAR(s.at(-1.0, std::size_t{0}), 1.0, 1e-12);
  EXPECT_NEAR(s.at(-3.0, std::size_t{0}), 1.0 - 1.0, 1e-12);
  EXPECT_THROW(segment(traj, phi, 0.05), InvalidInput);
}

TEST(AxiomA1, HoldsOnRandomPaths) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  const GridSpec g;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t modes = 1 + static_cast<std::size_t>(trial % 3);
    const History phi = History::from_function(g, [&](double th) {
      ModalField v(modes);
      for (std::size_t m = 0; m < modes; ++m) v[m] = nd(rng) * std::exp(-0.4 * th);
      return v;
    });
    const Trajectory traj = random_path(rng, phi.value(phi.size() - 1), 0.05, 101);
    const double sigma = 0.05 * std::uniform_int_distribution<int>(0, 50)(rng);
    const double t = sigma + 0.05 * std::uniform_int_distribution<int>(0, 50)(rng);
    const AxiomA1Report rep = check_axiom_A1(traj, phi, sigma, t);
    EXPECT_TRUE(rep.holds(1e-12)) << "trial " << trial << " left " << rep.left_slack << " right " << rep.right_slack;
    EXPECT_NEAR(rep.memory_coefficient, std::exp(-0.5 * (t - sigma)), 1e-12);
    EXPECT_GE(rep.segment_norm, rep.point_norm);
  }
}

TEST(AxiomA1, RejectsReversedTimes) {
  const GridSpec g{5.0, 50, 0.5};
  const Trajectory traj(0.0, 0.1, std::vector<ModalField>(11, ModalField(1)));
  EXPECT_THROW(check_axiom_A1(traj, History::zero(g, 1), 0.5, 0.2), InvalidInput);
}
