#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infdelay/circspec.hpp"
#include "infdelay/errors.hpp"
#include "infdelay/io.hpp"
#include "infdelay/monodromy.hpp"
#include "infdelay/phase_space.hpp"
#include "infdelay/scenario.hpp"
#include "infdelay/solver.hpp"

namespace infdelay::cli {

namespace {

using nlohmann::json;

struct ConfigOptions {
  std::string source = "default";
  std::map<std::string, std::string> overrides;
};

void add_config_options(CLI::App* sub, ConfigOptions& opts) {
  sub->add_option("--config", opts.source, "default, or a key = value file")->capture_default_str();
  for (const auto& key : config_keys()) {
    std::string dashed = key.name;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    std::string names = "--" + key.name;
    if (dashed != key.name) names += ",--" + dashed;
    sub->add_option_function<std::string>(
           names, [&opts, name = key.name](const std::string& v) { opts.overrides[name] = v; }, key.help)
        ->group("Config keys");
  }
}

ScenarioConfig resolve(const ConfigOptions& opts) {
  ScenarioConfig cfg = load_config(opts.source);
  for (const auto& [k, v] : opts.overrides) apply_override(cfg, k, v);
  cfg.validate();
  return cfg;
}

void emit(std::ostream& out, const std::string& target, const std::string& content) {
  if (target.empty() || target == "-") {
    out << content;
  } else {
    io::write_file(target, content);
  }
}

Trajectory simulate(const ScenarioConfig& cfg, double t_final) {
  SolveOptions so;
  so.t_final = t_final;
  so.step = cfg.step_h;
  if (cfg.epsilon_amplitude != 0.0) {
    so.epsilon = ForcingSpec::decaying(ModalField::unit(cfg.n_modes, cfg.forcing_profile_mode),
                                       cfg.epsilon_amplitude, cfg.epsilon_rate);
  }
  const Equation eq = cfg.equation();
  const History phi = make_initial(cfg, cfg.initial_kind);
  const ForcingSpec f = make_forcing(cfg, cfg.forcing_kind);
  return cfg.solver == "modal" ? solve_modal(eq, phi, f, so) : solve_quadrature(eq, phi, f, so);
}

int run_simulate(const ConfigOptions& co, const std::string& out_path, std::ostream& out) {
  const ScenarioConfig cfg = resolve(co);
  const Trajectory traj = simulate(cfg, cfg.t_final);
  std::ostringstream os;
  io::write_trajectory_csv(os, traj, cfg.output_stride);
  emit(out, out_path, os.str());
  return 0;
}

int run_monodromy(const ConfigOptions& co, const std::string& out_path, std::ostream& out) {
  const ScenarioConfig cfg = resolve(co);
  const MonodromyMatrix p = build_monodromy(cfg.equation(), cfg.grid(), cfg.step_h);
  SpectrumOptions so;
  so.band = cfg.band;
  so.match_floor = cfg.match_floor;
  so.match_tol = cfg.match_tol;
  const SpectrumReport rep = spectrum(p, so);
  emit(out, out_path, spectrum_to_json(rep) + "\n");
  return rep.sigma_gamma_empty ? 0 : 1;
}

SampledFunction circspec_signal(const ScenarioConfig& cfg, const std::string& signal) {
  const Window tail{cfg.tail_begin, cfg.tail_end};
  const double step = cfg.indicator_step;
  const auto count = static_cast<std::size_t>(std::llround(cfg.t_final / step)) + 1;
  if (signal == "trajectory") {
    const Trajectory traj = simulate(cfg, cfg.t_final);
    const double k = std::round(step / cfg.step_h);
    if (k < 1.0 || std::abs(k * cfg.step_h - step) > 1e-9 * step) {
      throw InvalidInput("indicator_step must be a multiple of step_h");
    }
    SampledFunction x;
    x.t0 = traj.t0();
    x.step = step;
    x.tail_window = tail;
    for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(k)) {
      x.samples.push_back(traj.value(i).coeffs().cast<std::complex<double>>());
    }
    return x;
  }
  std::function<std::complex<double>(double)> fn;
  if (signal == "constant") {
    fn = [](double) { return std::complex<double>(1.0); };
  } else if (signal == "cos_pi") {
    fn = [](double t) { return std::complex<double>(std::cos(std::numbers::pi * t)); };
  } else if (signal == "exp_decay") {
    fn = [](double t) { return std::complex<double>(std::exp(-t)); };
  } else if (signal == "sin_sqrt") {
    fn = [](double t) { return std::complex<double>(std::sin(std::sqrt(t))); };
  } else {
    throw InvalidInput("unknown signal '" + signal + "'");
  }
  return SampledFunction::scalar(0.0, step, count, fn, tail);
}

int run_circspec(const ConfigOptions& co, const std::string& signal, double p, double tol, std::ostream& out) {
  const ScenarioConfig cfg = resolve(co);
  const SampledFunction x = circspec_signal(cfg, signal);
  IndicatorOptions opts;
  opts.zeta_count = cfg.zeta_count;
  opts.radii = cfg.radii;
  opts.N = cfg.indicator_n;
  const SpectrumIndicator ind = spectrum_indicator(x, opts);
  std::ostringstream csv;
  io::write_indicator_csv(csv, ind);
  io::write_file(std::filesystem::path(cfg.output_dir) / "indicator.csv", csv.str());

  const PeriodicityResult per = periodicity_residual(x, p);
  const C0Result c0 = c0_test(x, tol);
  json flagged = json::array();
  for (const auto& z : ind.flagged_points()) flagged.push_back({z.real(), z.imag()});
  json doc{{"signal", signal},
           {"flagged", flagged},
           {"threshold", ind.threshold},
           {"window", {ind.window.begin, ind.window.end}},
           {"periodicity", {{"p", p}, {"tail_sup", per.tail_sup}}},
           {"c0", {{"tol", tol}, {"in_c0", c0.in_c0}, {"tail_sup", c0.tail_sup}, {"window_sups", c0.window_sups}}},
           {"table", (std::filesystem::path(cfg.output_dir) / "indicator.csv").string()}};
  out << doc.dump(2) << "\n";
  return 0;
}

History random_history(const GridSpec& grid, std::size_t modes, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<ModalField> vals;
  const auto theta = grid.nodes();
  for (std::size_t j = 0; j < theta.size(); ++j) {
    ModalField v(modes);
    for (std::size_t m = 0; m < modes; ++m) v[m] = nd(rng) * std::exp(-grid.gamma * theta[j]);
    vals.push_back(v);
  }
  History h(theta, std::move(vals), grid.gamma);
  const double n = norm_gamma(h);
  std::vector<ModalField> scaled = h.values();
  for (auto& v : scaled) v *= 1.0 / n;
  return History(theta, std::move(scaled), grid.gamma);
}

int run_verify(const ConfigOptions& co, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const ScenarioConfig cfg = resolve(co);
  const Equation eq = cfg.equation();
  const GridSpec grid = cfg.grid();
  std::mt19937_64 rng(seed);
  constexpr double tol = 1e-6;

  // (A1) on a short trajectory of the configured problem
  const Trajectory traj = simulate(cfg, std::min(cfg.t_final, 5.0));
  const History phi = make_initial(cfg, cfg.initial_kind);
  double a1_min = std::numeric_limits<double>::infinity();
  for (auto [s, t] : {std::pair{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}, {2.0, 5.0}}) {
    if (t > traj.t_end()) continue;
    const auto r = check_axiom_A1(traj, phi, s, t);
    a1_min = std::min({a1_min, r.left_slack, r.right_slack});
  }

  double gn_err = 0.0;
  std::normal_distribution<double> nd;
  for (int n : {1, 4, 16, 64}) {
    ModalField x(cfg.n_modes);
    for (std::size_t m = 0; m < cfg.n_modes; ++m) x[m] = nd(rng);
    gn_err = std::max(gn_err, std::abs(norm_gamma(gn_lift(x, n, grid)) - x.norm()));
  }

  double l_ratio = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    l_ratio = std::max(l_ratio, apply_L(eq.kernel, random_history(grid, cfg.n_modes, rng)).norm());
  }
  const double l_bound = cfg.kernel_scale / (1.0 - cfg.gamma);

  std::vector<History> hs;
  for (int i = 0; i < 2; ++i) hs.push_back(random_history(grid, cfg.n_modes, rng));
  const std::vector<ProcessTriple> triples{{0.0, 0.5, 1.0}, {0.25, 1.0, 2.0}};
  const ProcessAxiomReport pr = check_process_axioms(eq, cfg.step_h, hs, triples);

  const bool a1_ok = a1_min >= -tol;
  const bool gn_ok = gn_err <= 1e-12;
  const bool l_ok = cfg.gamma >= 1.0 || l_ratio <= l_bound * (1.0 + tol);
  const bool proc_ok = pr.ok(1e-3);
  json doc{{"axiom_a1", {{"min_slack", a1_min}, {"ok", a1_ok}}},
           {"gn_norm", {{"max_error", gn_err}, {"ok", gn_ok}}},
           {"delay_operator_bound", {{"max_norm", l_ratio}, {"bound", l_bound}, {"samples", samples}, {"ok", l_ok}}},
           {"process",
            {{"identity_exact", pr.identity_exact},
             {"cocycle_max_residual", pr.cocycle_max_residual},
             {"continuity_max_jump", pr.continuity_max_jump},
             {"bound_N", pr.bound_N},
             {"bound_omega", pr.bound_omega},
             {"periodicity_max_residual", pr.periodicity_max_residual},
             {"ok", proc_ok}}},
           {"all_ok", a1_ok && gn_ok && l_ok && proc_ok}};
  out << doc.dump(2) << "\n";
  return a1_ok && gn_ok && l_ok && proc_ok ? 0 : 1;
}

int run_scenario_cmd(const ConfigOptions& co, std::ostream& out) {
  const ScenarioConfig cfg = resolve(co);
  const VerdictReport rep = run_scenario(cfg);
  out << "sigma_gamma_empty           " << (rep.sigma_gamma_empty ? "true" : "false") << "  max |mu| "
      << io::format_double(rep.max_modulus) << "\n";
  out << "asymptotic_periodic         " << (rep.asymptotic_periodic ? "true" : "false") << "  r_early "
      << io::format_double(rep.r_early) << "  r_late " << io::format_double(rep.r_late) << "\n";
  out << "uniqueness_mod_c0           " << (rep.uniqueness_mod_c0 ? "true" : "false") << "  ratio "
      << io::format_double(rep.decay_ratio) << "  d_check/d0 "
      << io::format_double(rep.d_initial > 0 ? rep.d_check / rep.d_initial : 0.0) << "\n";
  out << "contrapositive_non_periodic " << (rep.contrapositive_non_periodic ? "true" : "false") << "  min residual "
      << io::format_double(rep.contrapositive_solution_min) << "\n";
  out << "artifacts in " << cfg.output_dir << " (config " << rep.config_hash << ")\n";
  return rep.all_pass() ? 0 : 1;
}

std::vector<std::pair<double, double>> read_series(const std::filesystem::path& path) {
  std::istringstream in(io::read_file(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> out;
  while (std::getline(in, line)) {
    const auto c = line.find(',');
    if (c == std::string::npos) continue;
    out.emplace_back(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)));
  }
  return out;
}

std::string svg_residual(const std::vector<std::pair<double, double>>& pts) {
  const double w = 640, h = 400, pad = 50;
  double tmax = 1.0, lo = 0.0, hi = 1.0;
  bool first = true;
  for (auto [t, r] : pts) {
    if (!(r > 0.0)) continue;
    const double l = std::log10(r);
    tmax = std::max(tmax, t);
    lo = first ? l : std::min(lo, l);
    hi = first ? l : std::max(hi, l);
    first = false;
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << pad << "\" y=\"20\" font-size=\"14\">log10 r(t)</text>\n<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (auto [t, r] : pts) {
    if (!(r > 0.0)) continue;
    const double x = pad + (w - 2 * pad) * t / tmax;
    const double y = h - pad - (h - 2 * pad) * (std::log10(r) - lo) / (hi - lo);
    s << x << ',' << y << ' ';
  }
  s << "\"/>\n</svg>\n";
  return s.str();
}

std::string svg_eigenvalues(const json& spectrum) {
  const double size = 400, c = 200, scale = 180;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << scale << "\" fill=\"none\" stroke=\"gray\"/>\n";
  for (const auto& block : spectrum.at("blocks")) {
    for (const auto& mu : block.at("eigenvalues")) {
      s << "<circle cx=\"" << c + scale * mu[0].get<double>() << "\" cy=\"" << c - scale * mu[1].get<double>()
        << "\" r=\"2\" fill=\"black\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

int run_report(const std::string& dir_name, bool svg, std::ostream& out) {
  const std::filesystem::path dir(dir_name);
  const json verdict = json::parse(io::read_file(dir / "verdict.json"));
  const json spec = json::parse(io::read_file(dir / "spectrum.json"));
  const auto residual = read_series(dir / "residual.csv");

  out << "Scenario report (" << dir.string() << ", config " << verdict["provenance"]["config_hash"].get<std::string>()
      << ")\n\n";
  for (const char* key : {"sigma_gamma_empty", "asymptotic_periodic", "uniqueness_mod_c0", "contrapositive_non_periodic"}) {
    out << "  " << key << ": " << (verdict[key]["verdict"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  out << "\nSpectrum: max |mu| = " << io::format_double(spec["max_modulus"].get<double>())
      << ", distance to unit circle = " << io::format_double(spec["circle_distance"].get<double>()) << "\n";
  out << "Multipliers (oracle vs nearest eigenvalue):\n";
  for (const auto& m : spec["matches"]) {
    out << "  mode " << m["mode"].get<int>() << "  " << io::format_double(m["multiplier"].get<double>()) << "  "
        << io::format_double(m["nearest"][0].get<double>()) << "  rel " << io::format_double(m["rel_error"].get<double>())
        << (m["within_tolerance"].get<bool>() ? "" : "  (outside tolerance)") << "\n";
  }
  const auto& ap = verdict["asymptotic_periodic"];
  out << "\nResidual r(t): r(" << ap["t_early"].get<double>() << ") = " << io::format_double(ap["r_early"].get<double>())
      << ", r(" << ap["t_late"].get<double>() << ") = " << io::format_double(ap["r_late"].get<double>()) << " ("
      << residual.size() << " samples)\n";
  const auto& un = verdict["uniqueness_mod_c0"];
  out << "Difference decay ratio per unit time: "
      << (un["decay_ratio"].is_null() ? std::string("n/a") : io::format_double(un["decay_ratio"].get<double>())) << "\n";
  out << "\nOverall: " << (verdict["all_pass"].get<bool>() ? "all verdicts pass" : "some verdicts fail") << "\n";
  if (svg) {
    io::write_file(dir / "residual.svg", svg_residual(residual));
    io::write_file(dir / "eigenvalues.svg", svg_eigenvalues(spec));
    out << "wrote " << (dir / "residual.svg").string() << " and " << (dir / "eigenvalues.svg").string() << "\n";
  }
  return verdict["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infinite-delay evolution equations: simulation, monodromy spectra and circular-spectrum diagnostics",
               "infdelay"};
  app.require_subcommand(1);

  ConfigOptions co;
  std::string out_path;
  std::string signal = "trajectory";
  double phase = 0.0;
  double c0_tol = 1e-6;
  std::size_t samples = 100;
  std::uint64_t seed = 20240601;
  std::string report_dir;
  bool svg = false;

  auto* sim = app.add_subcommand("simulate", "Integrate the configured problem and write a trajectory CSV");
  add_config_options(sim, co);
  sim->add_option("--out", out_path, "output file; '-' or empty for stdout");

  auto* mono = app.add_subcommand("monodromy", "Build the period map and write its spectrum as JSON");
  add_config_options(mono, co);
  mono->add_option("--out", out_path, "output file; '-' or empty for stdout");

  auto* circ = app.add_subcommand("circspec", "Circular-spectrum indicator, periodicity residual and C0 test");
  add_config_options(circ, co);
  circ->add_option("--signal", signal, "trajectory | constant | cos_pi | exp_decay | sin_sqrt")->capture_default_str();
  circ->add_option("--p", phase, "phase of the periodicity residual")->capture_default_str();
  circ->add_option("--tol", c0_tol, "tail tolerance of the C0 test")->capture_default_str();

  auto* ver = app.add_subcommand("verify-axioms", "Check phase-space and evolutionary-process properties");
  add_config_options(ver, co);
  ver->add_option("--samples", samples, "random histories for the delay-operator bound")->capture_default_str();
  ver->add_option("--seed", seed, "random seed")->capture_default_str();

  auto* scen = app.add_subcommand("scenario", "Run the full pipeline and write all artifacts");
  add_config_options(scen, co);

  auto* rep = app.add_subcommand("report", "Summarize the artifacts of a scenario run");
  rep->add_option("dir", report_dir, "artifact directory")->required();
  rep->add_flag("--svg", svg, "also write residual and eigenvalue plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) return run_simulate(co, out_path, out);
    if (*mono) return run_monodromy(co, out_path, out);
    if (*circ) return run_circspec(co, signal, phase, c0_tol, out);
    if (*ver) return run_verify(co, samples, seed, out);
    if (*scen) return run_scenario_cmd(co, out);
    if (*rep) return run_report(report_dir, svg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: malformed artifact: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << " (t = " << e.time() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace infdelay::cli
