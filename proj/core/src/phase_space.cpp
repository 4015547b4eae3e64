#include "infdelay/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "infdelay/errors.hpp"

namespace infdelay {

namespace {
// Times this close below t0 are read from the trajectory.
constexpr double kEdge = 1e-12;
}

SegmentReader::SegmentReader(const Trajectory& traj, const History& initial)
    : traj_(traj), initial_(initial) {
  if (traj.n_modes() != initial.n_modes()) {
    throw InvalidInput("SegmentReader: trajectory and history mode counts differ");
  }
}

ModalField SegmentReader::read(double tau, bool* clamped) const {
  if (clamped) *clamped = false;
  if (tau >= traj_.t0() - kEdge) return traj_.at(std::max(tau, traj_.t0()));
  return initial_.at(tau - traj_.t0(), clamped);
}

double SegmentReader::read(double tau, std::size_t mode, bool* clamped) const {
  if (clamped) *clamped = false;
  if (tau >= traj_.t0() - kEdge) return traj_.at(std::max(tau, traj_.t0()), mode);
  return initial_.at(tau - traj_.t0(), mode, clamped);
}

History segment(const Trajectory& traj, const History& initial, double t) {
  const std::size_t idx = traj.require_index(t, "segment");
  const double tt = traj.time(idx);
  if (idx == 0) return initial;

  SegmentReader reader(traj, initial);
  std::vector<ModalField> values;
  values.reserve(initial.size());
  bool any_clamped = false;
  for (double th : initial.theta()) {
    bool clamped = false;
    values.push_back(reader.read(tt + th, &clamped));
    any_clamped = any_clamped || clamped;
  }
  values.back() = traj.value(idx);
  History out(initial.theta(), std::move(values), initial.gamma());
  if (any_clamped || initial.truncated()) out.mark_truncated();
  return out;
}

AxiomA1Report check_axiom_A1(const Trajectory& traj, const History& initial, double sigma, double t) {
  if (sigma > t) throw InvalidInput("check_axiom_A1: sigma must not exceed t");
  const std::size_t i_sigma = traj.require_index(sigma, "check_axiom_A1");
  const std::size_t i_t = traj.require_index(t, "check_axiom_A1");
  const double gamma = initial.gamma();
  const double ts = traj.time(i_sigma);
  const double tt = traj.time(i_t);

  SegmentReader reader(traj, initial);
  const History x_t = segment(traj, initial, tt);
  const History x_sigma = segment(traj, initial, ts);

  AxiomA1Report rep;
  rep.truncated = x_t.truncated() || x_sigma.truncated();
  rep.segment_norm = norm_gamma(x_t);
  rep.point_norm = traj.value(i_t).norm();
  rep.memory_coefficient = std::exp(-gamma * (tt - ts));

  double recent = 0.0;
  for (std::size_t i = i_sigma; i <= i_t; ++i) recent = std::max(recent, traj.value(i).norm());
  // Points of x_t older than sigma are read through x_sigma's continuous
  // interpolant; include them in its sup so both sides see the same samples.
  double past = norm_gamma(x_sigma);
  const auto& theta = initial.theta();
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double tau = tt + theta[j];
    if (tau >= ts) {
      recent = std::max(recent, x_t.value(j).norm());
    } else {
      past = std::max(past, std::exp(gamma * (tau - ts)) * x_t.value(j).norm());
    }
  }
  rep.recent_sup = recent;
  rep.past_norm = past;
  rep.left_slack = rep.segment_norm - rep.point_norm;
  rep.right_slack = recent + rep.memory_coefficient * past - rep.segment_norm;
  return rep;
}

}  // namespace infdelay
