#pragma once

#include <cstddef>

#include "infdelay/history.hpp"
#include "infdelay/modal_field.hpp"
#include "infdelay/trajectory.hpp"

namespace infdelay {

/// Reads u(tau) for a solution that starts at traj.t0() with initial history
/// `initial`: the trajectory for tau >= t0, the history at tau - t0 before.
/// Both sources are interpolated linearly. The reader borrows its arguments.
class SegmentReader {
 public:
  SegmentReader(const Trajectory& traj, const History& initial);

  ModalField read(double tau, bool* clamped = nullptr) const;
  double read(double tau, std::size_t mode, bool* clamped = nullptr) const;

 private:
  const Trajectory& traj_;
  const History& initial_;
};

/// Solution segment u_t on the grid of `initial`. `t` must be a trajectory
/// time. Reads older than the truncation are clamped and flag the result.
History segment(const Trajectory& traj, const History& initial, double t);

/// Slack values of the two (A1)(iii) inequalities for C_gamma with N = 1,
/// K = 1 and M(s) = e^{-gamma s}:
///   left:  ||x_t|| - ||x(t)||
///   right: sup_{sigma<=s<=t} ||x(s)|| + M(t - sigma) ||x_sigma|| - ||x_t||
/// The sup norms are taken over the sample points that the segments read.
struct AxiomA1Report {
  double left_slack = 0.0;
  double right_slack = 0.0;
  double memory_coefficient = 0.0;  ///< M(t - sigma)
  double segment_norm = 0.0;        ///< ||x_t||_gamma
  double point_norm = 0.0;          ///< ||x(t)||
  double recent_sup = 0.0;          ///< sup over [sigma, t]
  double past_norm = 0.0;           ///< ||x_sigma||_gamma
  bool truncated = false;

  bool holds(double tol) const { return left_slack >= -tol && right_slack >= -tol; }
};

AxiomA1Report check_axiom_A1(const Trajectory& traj, const History& initial, double sigma, double t);

}  // namespace infdelay
