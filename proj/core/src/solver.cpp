#include "infdelay/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "delay_stepper.hpp"
#include "infdelay/errors.hpp"
#include "infdelay/phase_space.hpp"

namespace infdelay {

namespace {

std::size_t step_count(double span, double h, const char* op) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput(std::string(op) + ": step must be > 0");
  if (span < 0.0) throw InvalidInput(std::string(op) + ": horizon must be >= 0");
  const double n = std::round(span / h);
  if (std::abs(n * h - span) > 1e-9 * std::max(1.0, span)) {
    throw InvalidInput(std::string(op) + ": horizon " + std::to_string(span) + " is not a multiple of the step " +
                       std::to_string(h));
  }
  return static_cast<std::size_t>(n);
}

void check_modes(const Equation& eq, const History& phi, const ForcingSpec& f, const char* op) {
  if (phi.n_modes() != eq.n_modes() || f.n_modes() != eq.n_modes()) {
    throw InvalidInput(std::string(op) + ": mode counts of equation, history and forcing differ");
  }
}

void check_truncation(const Equation& eq, const History& phi, const char* op) {
  const double k = eq.kernel.truncation();
  if (std::abs(phi.truncation() - k) > 1e-9 * k) {
    throw InvalidInput(std::string(op) + ": history truncation does not match kernel truncation");
  }
}

ForcingSpec total_forcing(const ForcingSpec& f, const std::optional<ForcingSpec>& eps) {
  ForcingSpec total = f;
  if (eps) {
    if (eps->n_modes() != f.n_modes()) throw InvalidInput("epsilon channel mode count mismatch");
    total.add(*eps);
  }
  return total;
}

void record(Trajectory& traj, const ForcingSpec& f, const SolveOptions& opts) {
  if (!opts.record_forcing) return;
  std::vector<ModalField> fr, er;
  fr.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) fr.push_back(f.at(traj.time(i)));
  traj.forcing_record = std::move(fr);
  if (opts.epsilon) {
    er.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) er.push_back(opts.epsilon->at(traj.time(i)));
    traj.epsilon_record = std::move(er);
  }
}

// h | dtheta or dtheta | h on uniform grids; refined grids are read by interpolation.
void check_grid_compatibility(const History& phi, double h) {
  GridLocator loc(phi.theta());
  if (!loc.uniform()) return;
  const double d = phi.theta()[1] - phi.theta()[0];
  const double ratio = d >= h ? d / h : h / d;
  if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio) {
    throw InvalidInput("solve_quadrature: step " + std::to_string(h) + " and history spacing " + std::to_string(d) +
                       " are incommensurate");
  }
}

}  // namespace

AugmentedState init_memory(const History& phi) {
  AugmentedState s{phi.value(phi.size() - 1), apply_L(DelayKernel::exponential(1.0, phi.truncation()), phi)};
  return s;
}

Trajectory solve_modal(const Equation& eq, const History& phi, const ForcingSpec& f, const SolveOptions& opts) {
  if (!eq.kernel.is_exponential()) throw InvalidInput("solve_modal: requires the exponential kernel");
  check_modes(eq, phi, f, "solve_modal");
  check_truncation(eq, phi, "solve_modal");
  if (opts.t_final < opts.step) throw InvalidInput("solve_modal: t_final must be >= step");
  const std::size_t steps = step_count(opts.t_final, opts.step, "solve_modal");
  const ForcingSpec total = total_forcing(f, opts.epsilon);

  const std::size_t m = eq.n_modes();
  const double h = opts.step;
  const double s = eq.kernel.scale();
  AugmentedState st = init_memory(phi);
  std::vector<double> u(st.u.coeffs().data(), st.u.coeffs().data() + m);
  std::vector<double> y(st.y.coeffs().data(), st.y.coeffs().data() + m);
  std::vector<bool> forced(m);
  for (std::size_t k = 0; k < m; ++k) forced[k] = total.touches(k);

  std::vector<ModalField> values;
  values.reserve(steps + 1);
  values.push_back(st.u);
  ModalField row(m);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = opts.t0 + static_cast<double>(i) * h;
    for (std::size_t k = 0; k < m; ++k) {
      const double a = eq.generator.eigenvalue(k);
      double f0 = 0.0, fm = 0.0, f1 = 0.0;
      if (forced[k]) {
        f0 = total.at(t, k);
        fm = total.at(t + 0.5 * h, k);
        f1 = total.at(t + h, k);
      }
      const double u0 = u[k], y0 = y[k];
      const double ku1 = a * u0 + s * y0 + f0, ky1 = u0 - y0;
      const double u1 = u0 + 0.5 * h * ku1, y1 = y0 + 0.5 * h * ky1;
      const double ku2 = a * u1 + s * y1 + fm, ky2 = u1 - y1;
      const double u2 = u0 + 0.5 * h * ku2, y2 = y0 + 0.5 * h * ky2;
      const double ku3 = a * u2 + s * y2 + fm, ky3 = u2 - y2;
      const double u3 = u0 + h * ku3, y3 = y0 + h * ky3;
      const double ku4 = a * u3 + s * y3 + f1, ky4 = u3 - y3;
      u[k] = u0 + h / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
      y[k] = y0 + h / 6.0 * (ky1 + 2.0 * ky2 + 2.0 * ky3 + ky4);
      if (!std::isfinite(u[k]) || !std::isfinite(y[k])) {
        throw DivergenceError(t + h, "solve_modal: non-finite state in mode " + std::to_string(k + 1));
      }
      row[k] = u[k];
    }
    values.push_back(row);
  }
  Trajectory traj(opts.t0, h, std::move(values));
  record(traj, f, opts);
  return traj;
}

Trajectory solve_quadrature(const Equation& eq, const History& phi, const ForcingSpec& f, const SolveOptions& opts) {
  check_modes(eq, phi, f, "solve_quadrature");
  check_truncation(eq, phi, "solve_quadrature");
  check_grid_compatibility(phi, opts.step);
  const std::size_t steps = step_count(opts.t_final, opts.step, "solve_quadrature");
  const ForcingSpec total = total_forcing(f, opts.epsilon);

  const std::size_t m = eq.n_modes();
  const auto weights = eq.kernel.quadrature_weights(phi.theta(), phi.gamma());
  const GridLocator locator(phi.theta());

  std::vector<std::vector<double>> per_mode(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto hist = phi.mode_samples(k);
    detail::ScalarDelayProblem prob;
    prob.eigenvalue = eq.generator.eigenvalue(k);
    prob.theta = phi.theta();
    prob.weights = weights;
    prob.history = hist;
    prob.locator = &locator;
    if (total.touches(k)) prob.forcing = [&total, k](double t) { return total.at(t, k); };
    per_mode[k] = detail::ScalarDelayStepper(prob).integrate(opts.t0, opts.step, steps);
  }

  std::vector<ModalField> values(steps + 1, ModalField(m));
  for (std::size_t i = 0; i <= steps; ++i) {
    for (std::size_t k = 0; k < m; ++k) values[i][k] = per_mode[k][i];
  }
  Trajectory traj(opts.t0, opts.step, std::move(values));
  record(traj, f, opts);
  return traj;
}

double verify_mild(const Equation& eq, const Trajectory& traj, const History& phi, const ForcingSpec& f,
                   double sigma, double t, const std::optional<ForcingSpec>& epsilon) {
  if (sigma > t) throw InvalidInput("verify_mild: sigma must not exceed t");
  check_modes(eq, phi, f, "verify_mild");
  check_truncation(eq, phi, "verify_mild");
  const std::size_t is = traj.require_index(sigma, "verify_mild");
  const std::size_t it = traj.require_index(t, "verify_mild");
  const ForcingSpec total = total_forcing(f, epsilon);
  const std::size_t m = eq.n_modes();
  const double h = traj.step();
  const double tt = traj.time(it);

  const auto q = eq.kernel.quadrature_weights(phi.theta(), phi.gamma());
  SegmentReader reader(traj, phi);

  Eigen::VectorXd integral = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = is; i <= it; ++i) {
    const double xi = traj.time(i);
    Eigen::VectorXd bracket = total.at(xi).coeffs();
    if (!eq.kernel.is_zero()) {
      for (std::size_t j = 0; j < phi.size(); ++j) {
        if (q[j] == 0.0) continue;
        bracket += q[j] * reader.read(xi + phi.theta()[j]).coeffs();
      }
    }
    const double w = (it == is) ? 0.0 : ((i == is || i == it) ? 0.5 * h : h);
    for (std::size_t k = 0; k < m; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      integral[kk] += w * std::exp(eq.generator.eigenvalue(k) * (tt - xi)) * bracket[kk];
    }
  }
  const ModalField start = semigroup_apply(eq.generator, traj.value(is), tt - traj.time(is));
  return (traj.value(it).coeffs() - start.coeffs() - integral).norm();
}

History evolve(const Equation& eq, const History& phi, double s, double t, double step) {
  if (t < s) throw InvalidInput("evolve: t must be >= s");
  const std::size_t steps = step_count(t - s, step, "evolve");
  if (steps == 0) return phi;
  SolveOptions opts;
  opts.t0 = s;
  opts.step = step;
  opts.t_final = static_cast<double>(steps) * step;
  const Trajectory traj = solve_quadrature(eq, phi, ForcingSpec::zero(eq.n_modes()), opts);
  return segment(traj, phi, traj.t_end());
}

History hn_apply(const Equation& eq, const ForcingSpec& f, double t, int n, const HnOptions& opts) {
  if (n < 1) throw InvalidInput("hn_apply: n must be >= 1");
  if (f.n_modes() != eq.n_modes()) throw InvalidInput("hn_apply: mode count mismatch");
  const int q = opts.quadrature_nodes > 0 ? opts.quadrature_nodes : std::max(64, 4 * n);
  const int grid_n = opts.grid_n > 0 ? opts.grid_n : n;
  auto theta = refined_nodes(opts.grid, grid_n);
  const std::size_t m = eq.n_modes();

  std::vector<ModalField> acc(theta.size(), ModalField(m));
  if (!f.is_zero()) {
    // every node s_j = t + j/q must be a solver time
    const auto sub = static_cast<std::size_t>(std::ceil(1.0 / (static_cast<double>(q) * opts.step) - 1e-9));
    const double h = 1.0 / (static_cast<double>(q) * static_cast<double>(sub));
    const std::size_t total_steps = static_cast<std::size_t>(q) * sub;

    SolveOptions so;
    so.step = h;
    so.t_final = static_cast<double>(total_steps) * h;
    const ForcingSpec none = ForcingSpec::zero(m);
    for (const auto& term : f.terms()) {
      const History lift = gn_lift(term.profile, n, theta, opts.grid.gamma);
      const Trajectory traj = solve_quadrature(eq, lift, none, so);
      SegmentReader reader(traj, lift);
      for (int j = 0; j <= q; ++j) {
        const double s = t + static_cast<double>(j) / q;
        const double w = (j == 0 || j == q) ? 0.5 / q : 1.0 / q;
        const double amp = term.amplitude(s) * w;
        if (amp == 0.0) continue;
        // duration 1 - j/q, i.e. sample index (q - j) * sub
        const double d = traj.time(static_cast<std::size_t>(q - j) * sub);
        for (std::size_t i = 0; i < theta.size(); ++i) {
          acc[i].coeffs() += amp * reader.read(d + theta[i]).coeffs();
        }
      }
    }
  }
  return History(std::move(theta), std::move(acc), opts.grid.gamma);
}

std::vector<ResidualPoint> asymptotic_residual(const Trajectory& traj, double p) {
  const double per = 1.0 / traj.step();
  const double k_d = std::round(per);
  if (std::abs(per - k_d) > 1e-6 * k_d || k_d < 1.0) {
    throw InvalidInput("asymptotic_residual: trajectory step must divide 1");
  }
  const auto k = static_cast<std::size_t>(k_d);
  if (traj.size() < 2 * k + 1) throw InvalidInput("asymptotic_residual: trajectory must span at least 2 time units");
  const std::complex<double> phase = std::polar(1.0, p);
  std::vector<ResidualPoint> out;
  out.reserve(traj.size() - k);
  const std::size_t m = traj.n_modes();
  for (std::size_t i = 0; i + k < traj.size(); ++i) {
    double sq = 0.0;
    const auto& a = traj.value(i + k);
    const auto& b = traj.value(i);
    for (std::size_t mode = 0; mode < m; ++mode) sq += std::norm(a[mode] - phase * b[mode]);
    out.push_back({traj.time(i), std::sqrt(sq)});
  }
  return out;
}

}  // namespace infdelay
