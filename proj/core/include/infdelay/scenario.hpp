#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "infdelay/forcing.hpp"
#include "infdelay/history.hpp"
#include "infdelay/monodromy.hpp"
#include "infdelay/operators.hpp"

namespace infdelay {

/// Flat key-value configuration of the delay-diffusion scenario. Every field
/// has a text key of the same name (see config_keys()).
struct ScenarioConfig {
  // discretization
  double theta_max = 40.0;
  std::size_t theta_nodes = 400;
  std::size_t n_modes = 8;
  double step_h = 1e-3;
  double t_final = 420.0;
  double gamma = 0.5;
  double kernel_scale = 0.5;
  std::string solver = "modal";  ///< modal | quadrature

  // spectrum
  double band = 0.05;
  double match_floor = 0.05;
  double match_tol = 1e-2;

  // forcing f(t) = a(t) * forcing_amplitude * e_{forcing_profile_mode}
  std::string forcing_kind = "sin_sqrt";  ///< zero | sin_sqrt | periodic | quasi_periodic | decaying | samples
  std::size_t forcing_profile_mode = 1;
  double forcing_amplitude = 1.0;
  double forcing_rate = 1.0;        ///< decaying kind
  std::string forcing_samples;      ///< samples kind: CSV file with columns t,a on a uniform grid
  double epsilon_amplitude = 0.0;   ///< optional C_0 perturbation amplitude * e^{-rate t}
  double epsilon_rate = 1.0;

  // initial histories: zero | exp_half | constant, scaled by initial_amplitude in initial_mode
  std::string initial_kind = "zero";
  std::string second_initial_kind = "exp_half";
  std::size_t initial_mode = 1;
  double initial_amplitude = 1.0;

  // asymptotic periodicity verdict
  double residual_early = 100.0;
  double residual_late = 400.0;
  double residual_threshold = 0.1;
  double residual_drop = 1.5;
  double tail_begin = 380.0;
  double tail_end = 419.0;

  // uniqueness verdict
  double decay_fit_begin = 10.0;
  double decay_fit_end = 20.0;
  double decay_check = 40.0;
  double decay_ratio_min = 0.6;
  double decay_ratio_max = 0.9;
  double decay_factor = 1e-4;

  // non-periodic forcing run
  std::string contrapositive_kind = "quasi_periodic";
  double contrapositive_threshold = 0.1;
  std::size_t contrapositive_phases = 64;

  // circle-spectrum indicator on the main run
  double indicator_step = 0.25;
  std::size_t zeta_count = 256;
  std::size_t indicator_n = 200;
  std::vector<double> radii{1.5, 1.25, 1.1, 1.05, 1.02};

  std::string output_dir = "scenario_out";
  std::size_t output_stride = 100;

  GridSpec grid() const { return GridSpec{theta_max, theta_nodes, gamma}; }
  Equation equation() const { return Equation::lotka_volterra(n_modes, theta_max, kernel_scale); }
  void validate() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
};

/// All keys in canonical order.
std::vector<ConfigKey> config_keys();

/// Sets one key from text. Accepts '-' in place of '_'. Unknown keys and
/// malformed values throw InvalidInput.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string config_value(const ScenarioConfig& cfg, const std::string& key);

/// Lines "key = value"; '#' starts a comment. Keys not present keep defaults.
ScenarioConfig parse_config(const std::string& text);
/// "default" gives the defaults; anything else is read as a file path.
ScenarioConfig load_config(const std::string& source);
/// Canonical text: every key, in config_keys() order; round-trips through parse_config.
std::string to_text(const ScenarioConfig& cfg);
/// FNV-1a 64 of to_text with output_dir blanked, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

ForcingSpec make_forcing(const ScenarioConfig& cfg, const std::string& kind);
History make_initial(const ScenarioConfig& cfg, const std::string& kind);

struct VerdictReport {
  bool sigma_gamma_empty = false;
  double max_modulus = 0.0;
  double circle_distance = 0.0;

  bool asymptotic_periodic = false;
  double r_early = 0.0;
  double r_late = 0.0;
  double solution_tail_sup = 0.0;
  double forcing_tail_sup = 0.0;

  bool uniqueness_mod_c0 = false;
  double decay_ratio = 0.0;  ///< e^{slope} of the least-squares fit of log d(t) on the fit window
  double d_initial = 0.0;
  double d_check = 0.0;

  /// Non-periodic forcing yields a non-periodic solution: both tail residuals
  /// stay at or above the threshold for every tested phase p.
  bool contrapositive_non_periodic = false;
  double contrapositive_forcing_min = 0.0;
  double contrapositive_solution_min = 0.0;

  std::vector<std::complex<double>> indicator_flagged;

  std::string config_hash;

  bool all_pass() const {
    return sigma_gamma_empty && asymptotic_periodic && uniqueness_mod_c0 && contrapositive_non_periodic;
  }
};

std::string verdict_to_json(const VerdictReport& report, const ScenarioConfig& cfg);

/// Pure verdict rules, shared by run_scenario and consumers of the artifacts.
bool periodicity_verdict(double r_early, double r_late, double threshold, double drop);
/// Returns the per-unit decay ratio fitted on [begin, end] (NaN if fewer than
/// two positive samples).
double fit_decay_ratio(const std::vector<double>& t, const std::vector<double>& d, double begin, double end);

/// Runs the full pipeline and writes config.txt, spectrum.json,
/// trajectory.csv, residual.csv, difference.csv, indicator.csv,
/// contrapositive.csv and verdict.json to cfg.output_dir as each stage
/// finishes. Errors propagate with the stage name prefixed to the message.
VerdictReport run_scenario(const ScenarioConfig& cfg);

}  // namespace infdelay
