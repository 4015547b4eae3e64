#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infdelay/forcing.hpp"
#include "infdelay/history.hpp"
#include "infdelay/modal_field.hpp"
#include "infdelay/operators.hpp"
#include "infdelay/trajectory.hpp"

namespace infdelay {

struct SolveOptions {
  double t_final = 1.0;  ///< horizon length, measured from t0; must be a multiple of step
  double step = 1e-3;
  double t0 = 0.0;
  /// Optional C_0 perturbation added to the forcing (the eps channel of an
  /// asymptotic mild solution). Recorded separately when record_forcing is set.
  std::optional<ForcingSpec> epsilon;
  bool record_forcing = false;
};

/// Per-mode pair (u_n, y_n) with y_n = int_{-inf}^0 e^theta u_n(t + theta) dtheta.
struct AugmentedState {
  ModalField u;
  ModalField y;
};

/// u = phi(0); y = int e^theta phi(theta) dtheta, discretized as in apply_L.
AugmentedState init_memory(const History& phi);

/// Exact memory-variable reduction of the exponential kernel:
///   u_n' = a_n u_n + s y_n + f_n(t),   y_n' = u_n - y_n,
/// integrated with classical RK4. Requires an exponential kernel.
Trajectory solve_modal(const Equation& eq, const History& phi, const ForcingSpec& f, const SolveOptions& opts);

/// Generic history-quadrature path for any trapezoid-defined kernel:
/// exponential Euler with L(u_{t+h/2}) + f(t+h/2) frozen over each step.
/// Uniform history grids must satisfy h | dtheta or dtheta | h.
Trajectory solve_quadrature(const Equation& eq, const History& phi, const ForcingSpec& f, const SolveOptions& opts);

/// || u(t) - T(t-sigma) u(sigma) - int_sigma^t T(t-xi) [L(u_xi) + f(xi) + eps(xi)] dxi ||
/// with trapezoid time quadrature on the trajectory grid.
double verify_mild(const Equation& eq, const Trajectory& traj, const History& phi, const ForcingSpec& f,
                   double sigma, double t, const std::optional<ForcingSpec>& epsilon = std::nullopt);

/// U(t, s) phi: segment at t of the homogeneous solution started from phi at s.
History evolve(const Equation& eq, const History& phi, double s, double t, double step);

struct HnOptions {
  GridSpec grid;              ///< base grid; refined near 0 for the ramp
  double step = 1e-3;         ///< upper bound on the solver step
  int quadrature_nodes = 0;   ///< trapezoid intervals over [t, t+1]; 0 selects max(64, 4n)
  int grid_n = 0;             ///< ramp width the output grid resolves; 0 selects n
};

/// [H_n f](t) = int_t^{t+1} U(t+1, s) G^n f(s) ds by trapezoid quadrature in s.
/// The equation is autonomous, so U(t+1, s) = U(1 - (s - t), 0) and one
/// homogeneous solve per forcing term serves every quadrature node.
History hn_apply(const Equation& eq, const ForcingSpec& f, double t, int n, const HnOptions& opts);

struct ResidualPoint {
  double t = 0.0;
  double r = 0.0;
};

/// r(t) = ||u(t+1) - e^{ip} u(t)|| on the trajectory grid (step must divide 1).
std::vector<ResidualPoint> asymptotic_residual(const Trajectory& traj, double p);

}  // namespace infdelay
