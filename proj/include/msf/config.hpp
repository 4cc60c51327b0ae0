// Flat key = value configuration with unit-suffixed quantities.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msf/design.hpp"

namespace msf {

enum class OutputFormat { csv, json };
enum class PolarizationChoice { te, tm, both };

// Everything a run needs. Defaults reproduce the reference design: 0.5 eV /
// 0.1 ps / 300 K graphene on silicon, geometry synthesized at 2.5 THz.
struct RunConfig {
  // graphene sheet
  double mu_c_ev = 0.5;
  double tau_s = 1e-13;
  double temperature_k = 300.0;
  std::optional<double> mobility_m2_per_vs;
  ConductivityModel model = ConductivityModel::drude;

  // stackup
  double epsilon_r = 11.9;
  double loss_tangent = 0.0;
  double frequency_hz = 2.5e12;  // operating frequency; drives geometry synthesis
  std::optional<double> substrate_thickness_m;  // default lambda/13
  std::optional<double> patch_width_m;          // default lambda/14
  std::optional<double> period_m;               // default lambda/10
  double ground_thickness_m = 0.3e-6;

  // sweeps
  double f_start_hz = 1.0e12;
  double f_stop_hz = 4.0e12;
  int n_points = 601;
  double theta_deg = 0.0;
  PolarizationChoice polarization = PolarizationChoice::te;
  std::vector<double> angles_deg = {0, 10, 20, 30, 40, 50};
  std::vector<double> mu_c_values_ev = {0.50, 0.525, 0.55, 0.575, 0.60};
  double bandwidth_threshold = 0.80;

  // solver
  std::optional<double> solve_target_hz;  // default: frequency_hz
  double solve_mu_min_ev = 0.3;
  double solve_mu_max_ev = 0.8;
  double solve_tolerance_rel = 1e-3;
  std::vector<FreeParameter> match_parameters;  // empty: chemical-potential solve
  double match_tolerance = 0.01;
  int max_iterations = 100;

  // output
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: per-subcommand default

  bool operator==(const RunConfig&) const = default;

  Stackup build_stackup() const;
  FrequencyGrid build_grid() const;
  double solve_target() const { return solve_target_hz.value_or(frequency_hz); }

  // Canonical flat-file rendering of every effective value, 17 significant
  // digits; parse_config(dump()) reproduces this config exactly.
  std::string dump() const;
};

// Parses UTF-8 `key = value` lines with '#' comments. Unknown keys, unit
// mismatches, duplicates and invariant violations throw ConfigError naming
// the key and line.
RunConfig parse_config(const std::string& text);

}  // namespace msf
