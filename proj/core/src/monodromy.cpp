#include "infdelay/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "delay_stepper.hpp"
#include "infdelay/errors.hpp"
#include "infdelay/solver.hpp"

namespace infdelay {

namespace {

double gamma_distance(const History& a, const History& b) {
  std::vector<ModalField> diff;
  diff.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) diff.push_back(a.value(j) - b.value(j));
  return norm_gamma(History(a.theta(), std::move(diff), a.gamma()));
}

std::size_t exact_count(double span, double unit, const char* what) {
  const double n = std::round(span / unit);
  if (n < 1.0 || std::abs(n * unit - span) > 1e-9 * std::max(1.0, span)) {
    throw InvalidInput(std::string("build_monodromy: ") + what);
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

std::pair<double, double> characteristic_roots(double eigenvalue, double scale) {
  // lambda^2 + (1 - a) lambda - (a + s) = 0
  const double b = 1.0 - eigenvalue;
  const double c = -(eigenvalue + scale);
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) throw NumericError("characteristic_roots: complex roots");
  const double sq = std::sqrt(disc);
  // avoid cancellation in the root of smaller magnitude
  const double big = -0.5 * (b + std::copysign(sq, b));
  const double other = c / big;
  return {std::min(big, other), std::max(big, other)};
}

std::pair<double, double> characteristic_roots(int n) {
  if (n < 1) throw InvalidInput("characteristic_roots: n must be >= 1");
  const double nn = static_cast<double>(n);
  return characteristic_roots(-nn * nn, 0.5);
}

double characteristic_discriminant(int n) {
  if (n < 1) throw InvalidInput("characteristic_discriminant: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double d = 1.0 - nn * nn;
  return d * d + 2.0;
}

std::pair<double, double> multiplier_oracle(double eigenvalue, double scale) {
  const auto [lo, hi] = characteristic_roots(eigenvalue, scale);
  return {std::exp(lo), std::exp(hi)};
}

std::pair<double, double> multiplier_oracle(int n) {
  const auto [lo, hi] = characteristic_roots(n);
  return {std::exp(lo), std::exp(hi)};
}

MonodromyMatrix build_monodromy(const Equation& eq, const GridSpec& grid, double step, double start_time) {
  grid.validate();
  if (std::abs(grid.theta_max - eq.kernel.truncation()) > 1e-9 * grid.theta_max) {
    throw InvalidInput("build_monodromy: grid truncation does not match kernel truncation");
  }
  if (grid.theta_max < 1.0) throw InvalidInput("build_monodromy: truncation must be >= 1");
  const std::size_t shift = exact_count(1.0, grid.spacing(), "grid spacing must divide 1");
  const std::size_t steps = exact_count(1.0, step, "step must divide 1");
  const double d = grid.spacing();
  const double ratio = d >= step ? d / step : step / d;
  if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio) {
    throw InvalidInput("build_monodromy: step and grid spacing are incommensurate");
  }

  MonodromyMatrix p;
  p.theta = grid.nodes();
  p.grid = grid;
  p.step = step;
  p.start_time = start_time;
  p.eigenvalues = eq.generator.eigenvalues();
  p.exponential_kernel = eq.kernel.is_exponential();
  p.kernel_scale = eq.kernel.scale();

  const std::size_t nodes = p.theta.size();
  const auto weights = eq.kernel.quadrature_weights(p.theta, grid.gamma);
  const GridLocator locator(p.theta);
  std::vector<double> hat(nodes, 0.0);

  for (std::size_t k = 0; k < eq.n_modes(); ++k) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes), static_cast<Eigen::Index>(nodes));
    for (std::size_t j = 0; j < nodes; ++j) {
      hat[j] = 1.0;
      detail::ScalarDelayProblem prob;
      prob.eigenvalue = eq.generator.eigenvalue(k);
      prob.theta = p.theta;
      prob.weights = weights;
      prob.history = hat;
      prob.locator = &locator;
      const detail::ScalarDelayStepper stepper(prob);
      const auto u = stepper.integrate(start_time, step, steps);
      for (std::size_t i = 0; i < nodes; ++i) {
        double v;
        if (i + shift < nodes) {
          v = (i + shift == j) ? 1.0 : 0.0;  // shifted initial history
        } else {
          v = stepper.read(u, step, 1.0 + p.theta[i]);
        }
        block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
      hat[j] = 0.0;
    }
    p.blocks.push_back(std::move(block));
  }
  return p;
}

bool SpectrumReport::all_matched() const {
  return std::all_of(matches.begin(), matches.end(), [](const MultiplierMatch& m) { return m.within_tolerance; });
}

SpectrumReport spectrum(const MonodromyMatrix& p, const SpectrumOptions& opts) {
  if (!(opts.band > 0.0)) throw InvalidInput("spectrum: band must be > 0");
  SpectrumReport rep;
  rep.options = opts;
  rep.grid = p.grid;
  rep.step = p.step;
  rep.start_time = p.start_time;
  rep.circle_distance = std::numeric_limits<double>::infinity();
  Eigen::VectorXd weight(static_cast<Eigen::Index>(p.theta.size()));
  for (std::size_t i = 0; i < p.theta.size(); ++i) weight[static_cast<Eigen::Index>(i)] = std::exp(p.grid.gamma * p.theta[i]);

  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    // similarity by the C_gamma weight; unscaled blocks are badly conditioned
    const Eigen::MatrixXd scaled = weight.asDiagonal() * p.blocks[k] * weight.cwiseInverse().asDiagonal();
    Eigen::EigenSolver<Eigen::MatrixXd> es(scaled, false);
    if (es.info() != Eigen::Success) {
      throw NumericError("spectrum: eigensolver failed on block " + std::to_string(k + 1));
    }
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
      const double ma = std::abs(a), mb = std::abs(b);
      if (ma != mb) return ma > mb;
      return std::arg(a) < std::arg(b);
    });
    for (const auto& mu : ev) {
      const double mod = std::abs(mu);
      rep.max_modulus = std::max(rep.max_modulus, mod);
      const double dist = std::abs(mod - 1.0);
      rep.circle_distance = std::min(rep.circle_distance, dist);
      if (dist < opts.band) {
        rep.sigma_gamma_empty = false;
        rep.on_circle.emplace_back(k + 1, mu);
      }
    }

    if (p.exponential_kernel && k < p.eigenvalues.size()) {
      const auto roots = characteristic_roots(p.eigenvalues[k], p.kernel_scale);
      std::vector<bool> used(ev.size(), false);
      for (double root : {roots.second, roots.first}) {
        const double mult = std::exp(root);
        if (mult < opts.match_floor) continue;
        std::size_t best = ev.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ev.size(); ++i) {
          if (used[i]) continue;
          const double dd = std::abs(ev[i] - mult);
          if (dd < best_d) {
            best_d = dd;
            best = i;
          }
        }
        MultiplierMatch m;
        m.mode = k + 1;
        m.root = root;
        m.multiplier = mult;
        if (best < ev.size()) {
          used[best] = true;
          m.nearest = ev[best];
          m.rel_error = best_d / mult;
        } else {
          m.rel_error = std::numeric_limits<double>::infinity();
        }
        m.within_tolerance = m.rel_error <= opts.match_tol;
        rep.matches.push_back(m);
      }
    }
    rep.eigenvalues.push_back(std::move(ev));
  }
  return rep;
}

std::string spectrum_to_json(const SpectrumReport& r) {
  using nlohmann::json;
  json doc;
  doc["metadata"] = {{"theta_max", r.grid.theta_max},
                     {"theta_nodes", r.grid.intervals},
                     {"theta_spacing", r.grid.spacing()},
                     {"gamma", r.grid.gamma},
                     {"n_modes", r.eigenvalues.size()},
                     {"step_h", r.step},
                     {"start_time", r.start_time},
                     {"band", r.options.band},
                     {"match_floor", r.options.match_floor},
                     {"match_tol", r.options.match_tol}};
  doc["sigma_gamma_empty"] = r.sigma_gamma_empty;
  doc["max_modulus"] = r.max_modulus;
  doc["circle_distance"] = r.circle_distance;
  json on = json::array();
  for (const auto& [mode, mu] : r.on_circle) on.push_back({{"mode", mode}, {"eigenvalue", {mu.real(), mu.imag()}}});
  doc["on_circle"] = on;
  json matches = json::array();
  std::size_t matched = 0;
  for (const auto& m : r.matches) {
    matches.push_back({{"mode", m.mode},
                       {"root", m.root},
                       {"multiplier", m.multiplier},
                       {"nearest", {m.nearest.real(), m.nearest.imag()}},
                       {"rel_error", m.rel_error},
                       {"within_tolerance", m.within_tolerance}});
    if (m.within_tolerance) ++matched;
  }
  doc["matches"] = matches;
  doc["matched_count"] = matched;
  doc["oracle_count"] = r.matches.size();
  json blocks = json::array();
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    json ev = json::array();
    for (const auto& mu : r.eigenvalues[k]) ev.push_back({mu.real(), mu.imag()});
    blocks.push_back({{"mode", k + 1}, {"eigenvalues", ev}});
  }
  doc["blocks"] = blocks;
  return doc.dump(2);
}

ProcessAxiomReport check_process_axioms(const Equation& eq, double step, const std::vector<History>& histories,
                                        const std::vector<ProcessTriple>& triples) {
  ProcessAxiomReport rep;
  std::vector<std::pair<double, double>> growth;  // (duration, ||U||-ratio)

  for (const auto& phi : histories) {
    const double norm_phi = norm_gamma(phi);
    const double scale = norm_phi > 0.0 ? norm_phi : 1.0;
    for (const auto& tr : triples) {
      if (!(tr.r <= tr.s && tr.s <= tr.t)) throw InvalidInput("check_process_axioms: need r <= s <= t");

      if (!(evolve(eq, phi, tr.t, tr.t, step) == phi)) rep.identity_exact = false;

      const History two_leg = evolve(eq, evolve(eq, phi, tr.r, tr.s, step), tr.s, tr.t, step);
      const History one_leg = evolve(eq, phi, tr.r, tr.t, step);
      rep.cocycle_max_residual = std::max(rep.cocycle_max_residual, gamma_distance(two_leg, one_leg) / scale);

      const History base = evolve(eq, phi, tr.s, tr.t, step);
      const History later = evolve(eq, phi, tr.s, tr.t + 10.0 * step, step);
      rep.continuity_max_jump = std::max(rep.continuity_max_jump, gamma_distance(later, base) / scale);

      const History shifted = evolve(eq, phi, tr.s + 1.0, tr.t + 1.0, step);
      rep.periodicity_max_residual = std::max(rep.periodicity_max_residual, gamma_distance(shifted, base));

      if (norm_phi > 0.0) {
        growth.emplace_back(tr.t - tr.r, norm_gamma(one_leg) / norm_phi);
        growth.emplace_back(tr.t - tr.s, norm_gamma(base) / norm_phi);
      }
    }
  }

  if (!growth.empty()) {
    // least-squares slope of log ratio against duration, floored at 0
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [d, rho] : growth) {
      const double ly = std::log(std::max(rho, 1e-300));
      sx += d;
      sy += ly;
      sxx += d * d;
      sxy += d * ly;
    }
    const double n = static_cast<double>(growth.size());
    const double den = n * sxx - sx * sx;
    rep.bound_omega = den > 0.0 ? std::max(0.0, (n * sxy - sx * sy) / den) : 0.0;
    rep.bound_N = 1.0;
    for (const auto& [d, rho] : growth) rep.bound_N = std::max(rep.bound_N, rho * std::exp(-rep.bound_omega * d));
    for (const auto& [d, rho] : growth) {
      if (rho > rep.bound_N * std::exp(rep.bound_omega * d) * (1.0 + 1e-12)) rep.bound_holds = false;
    }
  }
  return rep;
}

}  // namespace infdelay
