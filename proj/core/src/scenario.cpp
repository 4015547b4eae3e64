#include "infdelay/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "infdelay/circspec.hpp"
#include "infdelay/errors.hpp"
#include "infdelay/io.hpp"
#include "infdelay/solver.hpp"

namespace infdelay {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw InvalidInput("config: invalid value '" + value + "' for key " + key);
}

void parse_into(const std::string& key, const std::string& v, double& out) {
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, v);
}

void parse_into(const std::string& key, const std::string& v, std::size_t& out) {
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, v);
}

void parse_into(const std::string&, const std::string& v, std::string& out) { out = v; }

void parse_into(const std::string& key, const std::string& v, std::vector<double>& out) {
  std::vector<double> vals;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x = 0.0;
    parse_into(key, trim(item), x);
    vals.push_back(x);
  }
  if (vals.empty()) bad_value(key, v);
  out = std::move(vals);
}

std::string show(double v) { return io::format_double(v); }
std::string show(std::size_t v) { return std::to_string(v); }
std::string show(const std::string& v) { return v; }
std::string show(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + show(v[i]);
  return s;
}

struct KeyEntry {
  ConfigKey key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class T>
KeyEntry entry(const char* name, T ScenarioConfig::*member, const char* help) {
  return KeyEntry{{name, help},
                  [name, member](ScenarioConfig& c, const std::string& v) { parse_into(name, v, c.*member); },
                  [member](const ScenarioConfig& c) { return show(c.*member); }};
}

const std::vector<KeyEntry>& registry() {
  using C = ScenarioConfig;
  static const std::vector<KeyEntry> keys{
      entry("theta_max", &C::theta_max, "history truncation Theta"),
      entry("theta_nodes", &C::theta_nodes, "history grid intervals M"),
      entry("n_modes", &C::n_modes, "sine modes kept"),
      entry("step_h", &C::step_h, "time step"),
      entry("t_final", &C::t_final, "simulation horizon"),
      entry("gamma", &C::gamma, "phase-space weight exponent"),
      entry("kernel_scale", &C::kernel_scale, "scale of the e^theta memory kernel"),
      entry("solver", &C::solver, "modal | quadrature"),
      entry("band", &C::band, "unit-circle band half-width"),
      entry("match_floor", &C::match_floor, "smallest oracle multiplier matched"),
      entry("match_tol", &C::match_tol, "relative tolerance of a multiplier match"),
      entry("forcing_kind", &C::forcing_kind, "zero | sin_sqrt | periodic | quasi_periodic | decaying | samples"),
      entry("forcing_profile_mode", &C::forcing_profile_mode, "sine mode carrying the forcing"),
      entry("forcing_amplitude", &C::forcing_amplitude, "forcing amplitude"),
      entry("forcing_rate", &C::forcing_rate, "decay rate of the decaying kind"),
      entry("forcing_samples", &C::forcing_samples, "CSV (t,a) for the samples kind"),
      entry("epsilon_amplitude", &C::epsilon_amplitude, "amplitude of the decaying perturbation"),
      entry("epsilon_rate", &C::epsilon_rate, "decay rate of the perturbation"),
      entry("initial_kind", &C::initial_kind, "zero | exp_half | constant"),
      entry("second_initial_kind", &C::second_initial_kind, "initial history of the comparison run"),
      entry("initial_mode", &C::initial_mode, "sine mode of the initial history"),
      entry("initial_amplitude", &C::initial_amplitude, "initial history amplitude"),
      entry("residual_early", &C::residual_early, "early residual time"),
      entry("residual_late", &C::residual_late, "late residual time"),
      entry("residual_threshold", &C::residual_threshold, "late residual bound"),
      entry("residual_drop", &C::residual_drop, "required early/late residual ratio"),
      entry("tail_begin", &C::tail_begin, "tail window start"),
      entry("tail_end", &C::tail_end, "tail window end"),
      entry("decay_fit_begin", &C::decay_fit_begin, "decay fit window start"),
      entry("decay_fit_end", &C::decay_fit_end, "decay fit window end"),
      entry("decay_check", &C::decay_check, "time of the decay factor check"),
      entry("decay_ratio_min", &C::decay_ratio_min, "lower bound of the decay ratio"),
      entry("decay_ratio_max", &C::decay_ratio_max, "upper bound of the decay ratio"),
      entry("decay_factor", &C::decay_factor, "required d(check)/d(0)"),
      entry("contrapositive_kind", &C::contrapositive_kind, "forcing of the non-periodic run"),
      entry("contrapositive_threshold", &C::contrapositive_threshold, "residual floor of the non-periodic run"),
      entry("contrapositive_phases", &C::contrapositive_phases, "phases p tested in [0, 2 pi)"),
      entry("indicator_step", &C::indicator_step, "sample step of the indicator input"),
      entry("zeta_count", &C::zeta_count, "unit-circle grid size"),
      entry("indicator_n", &C::indicator_n, "Neumann sum length N"),
      entry("radii", &C::radii, "decreasing radii > 1, comma separated"),
      entry("output_dir", &C::output_dir, "artifact directory"),
      entry("output_stride", &C::output_stride, "sample stride of CSV time series"),
  };
  return keys;
}

const KeyEntry& find_key(const std::string& raw) {
  const std::string key = normalize_key(raw);
  for (const auto& e : registry()) {
    if (e.key.name == key) return e;
  }
  throw InvalidInput("config: unknown key '" + raw + "'");
}

bool divides_one(double step) {
  const double k = std::round(1.0 / step);
  return k >= 1.0 && std::abs(k * step - 1.0) < 1e-9;
}

bool is_multiple(double span, double step) {
  const double k = std::round(span / step);
  return std::abs(k * step - span) <= 1e-9 * std::max(1.0, std::abs(span));
}

template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  const std::string prefix = std::string("stage ") + name + ": ";
  try {
    return fn();
  } catch (const DivergenceError& e) {
    throw DivergenceError(e.time(), prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(prefix + e.what());
  }
}

struct Series {
  std::vector<double> t;
  std::vector<double> v;

  double at(double time, const char* what) const {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::abs(t[i] - time) < 1e-9 * std::max(1.0, time)) return v[i];
    }
    throw InvalidInput(std::string(what) + ": time " + std::to_string(time) + " is not on the output grid");
  }
  double sup_on(double begin, double end) const {
    double best = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= begin - 1e-9 && t[i] <= end + 1e-9) best = std::max(best, v[i]);
    }
    return best;
  }
};

Trajectory solve(const ScenarioConfig& cfg, const Equation& eq, const History& phi, const ForcingSpec& f) {
  SolveOptions opts;
  opts.t_final = cfg.t_final;
  opts.step = cfg.step_h;
  if (cfg.epsilon_amplitude != 0.0) {
    opts.epsilon = ForcingSpec::decaying(ModalField::unit(cfg.n_modes, cfg.forcing_profile_mode),
                                         cfg.epsilon_amplitude, cfg.epsilon_rate);
  }
  return cfg.solver == "modal" ? solve_modal(eq, phi, f, opts) : solve_quadrature(eq, phi, f, opts);
}

SampledFunction subsample(const Trajectory& traj, std::size_t stride, Window tail) {
  SampledFunction out;
  out.t0 = traj.t0();
  out.step = traj.step() * static_cast<double>(stride);
  out.tail_window = tail;
  for (std::size_t i = 0; i < traj.size(); i += stride) {
    out.samples.push_back(traj.value(i).coeffs().cast<std::complex<double>>());
  }
  return out;
}

std::size_t stride_for(double want, double step, const char* what) {
  const double k = std::round(want / step);
  if (k < 1.0 || std::abs(k * step - want) > 1e-9 * want) {
    throw InvalidInput(std::string("config: ") + what + " must be a multiple of step_h");
  }
  return static_cast<std::size_t>(k);
}

}  // namespace

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string("config: ") + name + " must be > 0");
  };
  positive(theta_max, "theta_max");
  positive(step_h, "step_h");
  positive(t_final, "t_final");
  positive(gamma, "gamma");
  positive(band, "band");
  positive(match_tol, "match_tol");
  positive(indicator_step, "indicator_step");
  positive(residual_drop, "residual_drop");
  if (theta_nodes < 2) throw InvalidInput("config: theta_nodes must be >= 2");
  if (n_modes < 1) throw InvalidInput("config: n_modes must be >= 1");
  if (output_stride < 1) throw InvalidInput("config: output_stride must be >= 1");
  if (zeta_count < 1) throw InvalidInput("config: zeta_count must be >= 1");
  if (contrapositive_phases < 1) throw InvalidInput("config: contrapositive_phases must be >= 1");
  if (solver != "modal" && solver != "quadrature") throw InvalidInput("config: solver must be modal or quadrature");
  for (const auto* kind : {&forcing_kind, &contrapositive_kind}) {
    static const char* known[] = {"zero", "sin_sqrt", "periodic", "quasi_periodic", "decaying", "samples"};
    if (std::find(std::begin(known), std::end(known), *kind) == std::end(known)) {
      throw InvalidInput("config: unknown forcing kind '" + *kind + "'");
    }
  }
  for (const auto* kind : {&initial_kind, &second_initial_kind}) {
    if (*kind != "zero" && *kind != "exp_half" && *kind != "constant") {
      throw InvalidInput("config: unknown initial kind '" + *kind + "'");
    }
  }
  if (forcing_profile_mode < 1 || forcing_profile_mode > n_modes) {
    throw InvalidInput("config: forcing_profile_mode out of range");
  }
  if (initial_mode < 1 || initial_mode > n_modes) throw InvalidInput("config: initial_mode out of range");
  if (!divides_one(step_h)) throw InvalidInput("config: step_h must divide 1");
  if (!is_multiple(t_final, step_h)) throw InvalidInput("config: t_final must be a multiple of step_h");
  if (!(tail_begin < tail_end) || tail_end + 1.0 > t_final) {
    throw InvalidInput("config: tail window must satisfy tail_begin < tail_end <= t_final - 1");
  }
  if (residual_late + 1.0 > t_final || residual_early < 0.0) throw InvalidInput("config: residual times out of range");
  if (!(decay_fit_begin < decay_fit_end) || decay_check > t_final) {
    throw InvalidInput("config: decay window out of range");
  }
  if (radii.empty()) throw InvalidInput("config: radii must not be empty");
  GridSpec{theta_max, theta_nodes, gamma}.validate();
}

std::vector<ConfigKey> config_keys() {
  std::vector<ConfigKey> out;
  for (const auto& e : registry()) out.push_back(e.key);
  return out;
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  find_key(key).set(cfg, trim(value));
}

std::string config_value(const ScenarioConfig& cfg, const std::string& key) { return find_key(key).get(cfg); }

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
    apply_override(cfg, trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& source) {
  if (source == "default") return ScenarioConfig{};
  return parse_config(io::read_file(source));
}

std::string to_text(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& e : registry()) out += e.key.name + " = " + e.get(cfg) + "\n";
  return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
  ScenarioConfig keyed = cfg;
  keyed.output_dir.clear();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_text(keyed)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xF];
  return s;
}

ForcingSpec make_forcing(const ScenarioConfig& cfg, const std::string& kind) {
  const ModalField g = ModalField::unit(cfg.n_modes, cfg.forcing_profile_mode) * cfg.forcing_amplitude;
  if (kind == "zero") return ForcingSpec::zero(cfg.n_modes);
  if (kind == "sin_sqrt") return ForcingSpec::sin_sqrt(g);
  if (kind == "periodic") return ForcingSpec::periodic(g);
  if (kind == "quasi_periodic") return ForcingSpec::quasi_periodic(g);
  if (kind == "decaying") return ForcingSpec::decaying(g, 1.0, cfg.forcing_rate);
  if (kind == "samples") {
    if (cfg.forcing_samples.empty()) throw InvalidInput("config: forcing_samples is required for the samples kind");
    std::istringstream in(io::read_file(cfg.forcing_samples));
    std::string line;
    std::vector<double> t, a;
    while (std::getline(in, line)) {
      const std::string body = trim(line);
      if (body.empty() || body.front() == '#' || std::isalpha(static_cast<unsigned char>(body.front()))) continue;
      const auto comma = body.find(',');
      if (comma == std::string::npos) throw InvalidInput(cfg.forcing_samples + ": expected t,a rows");
      double tv = 0.0, av = 0.0;
      parse_into("forcing_samples", trim(std::string_view(body).substr(0, comma)), tv);
      parse_into("forcing_samples", trim(std::string_view(body).substr(comma + 1)), av);
      t.push_back(tv);
      a.push_back(av);
    }
    if (t.size() < 2) throw InvalidInput(cfg.forcing_samples + ": need at least two samples");
    const double step = t[1] - t[0];
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (std::abs((t[i] - t[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) {
        throw InvalidInput(cfg.forcing_samples + ": sample times must be uniform");
      }
    }
    auto f = ForcingSpec::from_samples(t.front(), step, std::move(a), g);
    return f;
  }
  throw InvalidInput("config: unknown forcing kind '" + kind + "'");
}

History make_initial(const ScenarioConfig& cfg, const std::string& kind) {
  const GridSpec grid = cfg.grid();
  const ModalField e = ModalField::unit(cfg.n_modes, cfg.initial_mode) * cfg.initial_amplitude;
  if (kind == "zero") return History::zero(grid, cfg.n_modes);
  if (kind == "constant") return History::constant(grid, e);
  if (kind == "exp_half") return History::from_function(grid, [&](double th) { return e * std::exp(0.5 * th); });
  throw InvalidInput("config: unknown initial kind '" + kind + "'");
}

bool periodicity_verdict(double r_early, double r_late, double threshold, double drop) {
  if (r_early == 0.0 && r_late == 0.0) return true;
  return r_late < r_early / drop && r_late < threshold;
}

double fit_decay_ratio(const std::vector<double>& t, const std::vector<double>& d, double begin, double end) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size() && i < d.size(); ++i) {
    if (t[i] < begin - 1e-9 || t[i] > end + 1e-9 || !(d[i] > 0.0)) continue;
    const double ly = std::log(d[i]);
    sx += t[i];
    sy += ly;
    sxx += t[i] * t[i];
    sxy += t[i] * ly;
    ++n;
  }
  const double nn = static_cast<double>(n);
  const double den = nn * sxx - sx * sx;
  if (n < 2 || !(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::exp((nn * sxy - sx * sy) / den);
}

std::string verdict_to_json(const VerdictReport& r, const ScenarioConfig& cfg) {
  using nlohmann::json;
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json flagged = json::array();
  for (const auto& z : r.indicator_flagged) flagged.push_back({z.real(), z.imag()});
  json doc;
  doc["sigma_gamma_empty"] = {{"verdict", r.sigma_gamma_empty},
                              {"max_modulus", r.max_modulus},
                              {"circle_distance", r.circle_distance},
                              {"band", cfg.band}};
  doc["asymptotic_periodic"] = {{"verdict", r.asymptotic_periodic},
                                {"t_early", cfg.residual_early},
                                {"t_late", cfg.residual_late},
                                {"r_early", r.r_early},
                                {"r_late", r.r_late},
                                {"threshold", cfg.residual_threshold},
                                {"drop", cfg.residual_drop},
                                {"solution_tail_sup", r.solution_tail_sup},
                                {"forcing_tail_sup", r.forcing_tail_sup},
                                {"tail_window", {cfg.tail_begin, cfg.tail_end}},
                                {"curve", "residual.csv"}};
  doc["uniqueness_mod_c0"] = {{"verdict", r.uniqueness_mod_c0},
                              {"decay_ratio", finite_or_null(r.decay_ratio)},
                              {"fit_window", {cfg.decay_fit_begin, cfg.decay_fit_end}},
                              {"ratio_bracket", {cfg.decay_ratio_min, cfg.decay_ratio_max}},
                              {"d_initial", r.d_initial},
                              {"d_check", r.d_check},
                              {"t_check", cfg.decay_check},
                              {"factor", cfg.decay_factor},
                              {"curve", "difference.csv"}};
  doc["contrapositive_non_periodic"] = {{"verdict", r.contrapositive_non_periodic},
                                        {"forcing_kind", cfg.contrapositive_kind},
                                        {"forcing_min_tail_residual", r.contrapositive_forcing_min},
                                        {"solution_min_tail_residual", r.contrapositive_solution_min},
                                        {"threshold", cfg.contrapositive_threshold},
                                        {"phases", cfg.contrapositive_phases},
                                        {"table", "contrapositive.csv"}};
  doc["indicator"] = {{"flagged", flagged}, {"table", "indicator.csv"}};
  doc["all_pass"] = r.all_pass();
  doc["provenance"] = {{"config_hash", r.config_hash},
                       {"theta_max", cfg.theta_max},
                       {"theta_nodes", cfg.theta_nodes},
                       {"gamma", cfg.gamma},
                       {"n_modes", cfg.n_modes},
                       {"step_h", cfg.step_h},
                       {"t_final", cfg.t_final},
                       {"solver", cfg.solver},
                       {"forcing_kind", cfg.forcing_kind},
                       {"initial_kind", cfg.initial_kind},
                       {"second_initial_kind", cfg.second_initial_kind}};
  return doc.dump(2);
}

VerdictReport run_scenario(const ScenarioConfig& cfg) {
  stage("config", [&] { cfg.validate(); });
  const std::filesystem::path dir(cfg.output_dir);
  const auto write = [&](const char* name, const std::string& content) { io::write_file(dir / name, content); };
  write("config.txt", to_text(cfg));

  VerdictReport rep;
  rep.config_hash = config_hash(cfg);
  const Equation eq = cfg.equation();
  const std::size_t stride = cfg.output_stride;

  stage("monodromy", [&] {
    const MonodromyMatrix p = build_monodromy(eq, cfg.grid(), cfg.step_h);
    SpectrumOptions so;
    so.band = cfg.band;
    so.match_floor = cfg.match_floor;
    so.match_tol = cfg.match_tol;
    const SpectrumReport sr = spectrum(p, so);
    rep.sigma_gamma_empty = sr.sigma_gamma_empty;
    rep.max_modulus = sr.max_modulus;
    rep.circle_distance = sr.circle_distance;
    write("spectrum.json", spectrum_to_json(sr));
  });

  const ForcingSpec f = stage("forcing", [&] { return make_forcing(cfg, cfg.forcing_kind); });
  const History phi1 = stage("initial", [&] { return make_initial(cfg, cfg.initial_kind); });
  const History phi2 = stage("initial", [&] { return make_initial(cfg, cfg.second_initial_kind); });

  const Trajectory u = stage("simulate", [&] { return solve(cfg, eq, phi1, f); });
  {
    std::ostringstream os;
    io::write_trajectory_csv(os, u, stride);
    write("trajectory.csv", os.str());
  }

  stage("periodicity", [&] {
    const auto res = asymptotic_residual(u, 0.0);
    Series r;
    for (std::size_t i = 0; i < res.size(); i += stride) {
      r.t.push_back(res[i].t);
      r.v.push_back(res[i].r);
    }
    std::ostringstream os;
    io::write_series_csv(os, "t", "r", r.t, r.v);
    write("residual.csv", os.str());
    rep.r_early = r.at(cfg.residual_early, "residual_early");
    rep.r_late = r.at(cfg.residual_late, "residual_late");
    rep.solution_tail_sup = r.sup_on(cfg.tail_begin, cfg.tail_end);
    rep.asymptotic_periodic =
        periodicity_verdict(rep.r_early, rep.r_late, cfg.residual_threshold, cfg.residual_drop);
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      if (r.t[i] < cfg.tail_begin - 1e-9 || r.t[i] > cfg.tail_end + 1e-9) continue;
      rep.forcing_tail_sup = std::max(rep.forcing_tail_sup, (f.at(r.t[i] + 1.0) - f.at(r.t[i])).norm());
    }
  });

  stage("uniqueness", [&] {
    const Trajectory v = solve(cfg, eq, phi2, f);
    Series d;
    for (std::size_t i = 0; i < u.size(); i += stride) {
      d.t.push_back(u.time(i));
      d.v.push_back((u.value(i) - v.value(i)).norm());
    }
    std::ostringstream os;
    io::write_series_csv(os, "t", "d", d.t, d.v);
    write("difference.csv", os.str());
    rep.d_initial = d.v.front();
    rep.d_check = d.at(cfg.decay_check, "decay_check");
    rep.decay_ratio = fit_decay_ratio(d.t, d.v, cfg.decay_fit_begin, cfg.decay_fit_end);
    const bool identical = phi1 == phi2;
    rep.uniqueness_mod_c0 = identical || (std::isfinite(rep.decay_ratio) && rep.decay_ratio >= cfg.decay_ratio_min &&
                                          rep.decay_ratio <= cfg.decay_ratio_max &&
                                          rep.d_check < cfg.decay_factor * rep.d_initial);
  });

  stage("indicator", [&] {
    const SampledFunction x =
        subsample(u, stride_for(cfg.indicator_step, cfg.step_h, "indicator_step"), {cfg.tail_begin, cfg.tail_end});
    IndicatorOptions io_opts;
    io_opts.zeta_count = cfg.zeta_count;
    io_opts.radii = cfg.radii;
    io_opts.N = cfg.indicator_n;
    const SpectrumIndicator ind = spectrum_indicator(x, io_opts);
    rep.indicator_flagged = ind.flagged_points();
    std::ostringstream os;
    io::write_indicator_csv(os, ind);
    write("indicator.csv", os.str());
  });

  stage("contrapositive", [&] {
    const ForcingSpec g = make_forcing(cfg, cfg.contrapositive_kind);
    const Trajectory w = solve(cfg, eq, phi1, g);
    const Window tail{cfg.tail_begin, cfg.tail_end};
    const SampledFunction xs = subsample(w, stride, tail);
    SampledFunction xf = xs;
    for (std::size_t i = 0; i < xf.size(); ++i) xf.samples[i] = g.at(xf.time(i)).coeffs().cast<std::complex<double>>();
    rep.contrapositive_forcing_min = std::numeric_limits<double>::infinity();
    rep.contrapositive_solution_min = std::numeric_limits<double>::infinity();
    std::vector<double> ps, fs, ss;
    for (std::size_t k = 0; k < cfg.contrapositive_phases; ++k) {
      const double p = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.contrapositive_phases);
      const double rf = periodicity_residual(xf, p).tail_sup;
      const double rs = periodicity_residual(xs, p).tail_sup;
      ps.push_back(p);
      fs.push_back(rf);
      ss.push_back(rs);
      rep.contrapositive_forcing_min = std::min(rep.contrapositive_forcing_min, rf);
      rep.contrapositive_solution_min = std::min(rep.contrapositive_solution_min, rs);
    }
    std::ostringstream os;
    os << "p,forcing_tail_sup,solution_tail_sup\n";
    for (std::size_t k = 0; k < ps.size(); ++k) {
      os << io::format_double(ps[k]) << ',' << io::format_double(fs[k]) << ',' << io::format_double(ss[k]) << '\n';
    }
    write("contrapositive.csv", os.str());
    rep.contrapositive_non_periodic = rep.contrapositive_forcing_min >= cfg.contrapositive_threshold &&
                                      rep.contrapositive_solution_min >= cfg.contrapositive_threshold;
  });

  write("verdict.json", verdict_to_json(rep, cfg));
  return rep;
}

}  // namespace infdelay
