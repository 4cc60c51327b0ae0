// msf: analytic solver for graphene-patch metasurface absorbers.
//
// Subcommands: spectrum | angles | reconfig | solve | validate.
// Exit codes: 0 success, 1 model error, 2 config error, 3 validation failure
// or solver non-convergence.
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msf/config.hpp"
#include "msf/errors.hpp"
#include "msf/serialize.hpp"
#include "msf/tmm.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitModelError = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNotConverged = 3;

void emit_error(const std::string& type, const std::string& message) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
}

void emit_warning(const std::string& message) {
  std::cerr << json{{"warning", {{"message", message}}}}.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw msf::ConfigError("", 0, "cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

msf::Polarization single_polarization(const msf::RunConfig& config,
                                      const std::string& subcommand) {
  switch (config.polarization) {
    case msf::PolarizationChoice::te: return msf::Polarization::te;
    case msf::PolarizationChoice::tm: return msf::Polarization::tm;
    case msf::PolarizationChoice::both: break;
  }
  throw msf::ConfigError("polarization", 0,
                         "polarization = both is only valid for the angles subcommand (" +
                             subcommand + " needs TE or TM)");
}

std::string artifact_path(const msf::RunConfig& config, const std::string& cli_out,
                          const std::string& stem) {
  if (!cli_out.empty()) return cli_out;
  if (!config.output_path.empty()) return config.output_path;
  return stem + (config.format == msf::OutputFormat::csv ? ".csv" : ".json");
}

int run_spectrum(const msf::RunConfig& config, const std::string& out) {
  const msf::Stackup stackup = config.build_stackup();
  msf::IncidentWave wave;
  wave.frequency = config.f_start_hz;
  wave.theta = deg_to_rad(config.theta_deg);
  wave.polarization = single_polarization(config, "spectrum");

  const msf::Spectrum spectrum =
      msf::frequency_sweep(stackup, wave, config.build_grid(), config.model);
  const std::string path = artifact_path(config, out, "spectrum");
  if (config.format == msf::OutputFormat::csv) {
    msf::atomic_write_file(path, msf::spectrum_csv(spectrum));
  } else {
    msf::atomic_write_file(path, msf::spectrum_json(spectrum).dump(2) + "\n");
  }

  const msf::PeakResult peak = msf::find_peak(spectrum);
  std::cout << "wrote " << path << " (" << spectrum.points.size() << " points)\n";
  if (peak.found) {
    std::cout << "peak: " << peak.frequency / 1e12 << " THz, A = " << peak.absorption
              << (peak.boundary ? " (grid boundary)" : "") << "\n";
    const msf::BandwidthResult band =
        msf::bandwidth(spectrum, config.bandwidth_threshold);
    if (!band.below_threshold) {
      std::cout << "band (A >= " << config.bandwidth_threshold << "): ["
                << band.f_lo / 1e12 << ", " << band.f_hi / 1e12
                << "] THz, fractional " << band.fractional << "\n";
    }
  } else {
    std::cout << "spectrum is flat; no peak\n";
  }
  return kExitOk;
}

int run_angles(const msf::RunConfig& config, const std::string& out) {
  const msf::Stackup stackup = config.build_stackup();
  const msf::FrequencyGrid grid = config.build_grid();

  std::vector<double> angles_rad;
  for (double a : config.angles_deg) angles_rad.push_back(deg_to_rad(a));

  std::vector<msf::Polarization> pols;
  if (config.polarization != msf::PolarizationChoice::tm) {
    pols.push_back(msf::Polarization::te);
  }
  if (config.polarization != msf::PolarizationChoice::te) {
    pols.push_back(msf::Polarization::tm);
  }

  std::string csv;
  json all = json::array();
  std::cout << "pol  theta    f_peak [THz]   A_peak\n";
  for (msf::Polarization pol : pols) {
    const auto entries = msf::angle_map(stackup, grid, angles_rad, pol, config.model);
    for (const msf::AngleEntry& entry : entries) {
      std::cout << (pol == msf::Polarization::te ? "TE" : "TM") << "   "
                << entry.theta * 180.0 / std::numbers::pi << "\t"
                << entry.peak.frequency / 1e12 << "\t" << entry.peak.absorption << "\n";
    }
    if (config.format == msf::OutputFormat::csv) {
      std::string chunk = msf::angle_map_csv(entries, pol);
      if (!csv.empty()) chunk.erase(0, chunk.find('\n') + 1);  // keep one header
      csv += chunk;
    } else {
      for (auto& item : msf::angle_map_json(entries, pol)["angles"]) {
        all.push_back(std::move(item));
      }
    }
  }

  const std::string path = artifact_path(config, out, "angles");
  if (config.format == msf::OutputFormat::csv) {
    msf::atomic_write_file(path, csv);
  } else {
    msf::atomic_write_file(path, json{{"angles", all}}.dump(2) + "\n");
  }
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int run_reconfig(const msf::RunConfig& config, const std::string& out) {
  const msf::Stackup stackup = config.build_stackup();
  const msf::ReconfigurationMap map = msf::reconfiguration_map(
      stackup, config.build_grid(), config.mu_c_values_ev, config.model);

  const std::string path = artifact_path(config, out, "reconfig");
  if (config.format == msf::OutputFormat::csv) {
    msf::atomic_write_file(path, msf::reconfiguration_csv(map));
  } else {
    msf::atomic_write_file(path, msf::reconfiguration_json(map).dump(2) + "\n");
  }

  std::cout << "mu_c [eV]   f_peak [THz]   A_peak\n";
  for (const msf::ReconfigurationEntry& e : map.entries) {
    std::cout << e.chemical_potential_ev << "\t" << e.f_peak / 1e12 << "\t" << e.a_peak
              << "\n";
  }
  std::cout << "f_peak monotone increasing: " << (map.monotone_increasing ? "yes" : "NO")
            << "\n";
  if (!map.anomaly.empty()) emit_warning(map.anomaly);
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int run_solve(const msf::RunConfig& config, const std::string& out) {
  const msf::Stackup stackup = config.build_stackup();
  const double target = config.solve_target();

  msf::DesignSolution solution;
  if (config.match_parameters.empty()) {
    msf::SolveOptions options;
    options.rel_tolerance = config.solve_tolerance_rel;
    options.max_iterations = config.max_iterations;
    options.grid = config.build_grid();
    options.model = config.model;
    solution = msf::solve_chemical_potential(stackup, target, config.solve_mu_min_ev,
                                             config.solve_mu_max_ev, options);
  } else {
    msf::MatchOptions options;
    options.tolerance = config.match_tolerance;
    options.max_iterations = config.max_iterations;
    options.grid = config.build_grid();
    options.model = config.model;
    solution = msf::match_impedance(stackup, target, config.match_parameters, options);
  }

  std::string path = out;
  if (path.empty()) path = config.output_path.empty() ? "solution.json" : config.output_path;
  msf::atomic_write_file(path, msf::design_solution_json(solution, target).dump(2) + "\n");

  std::cout << "converged: " << (solution.converged ? "yes" : "NO")
            << ", mu_c = " << solution.stackup.sheet.chemical_potential_ev
            << " eV, f_peak = " << solution.achieved_f_peak / 1e12
            << " THz, A_peak = " << solution.achieved_a_peak
            << ", |S11(f_target)| = " << solution.residual << " ("
            << solution.iterations << " evaluations)\n";
  std::cout << "wrote " << path << "\n";
  if (!solution.converged) {
    emit_error("solver", "did not converge within the iteration cap");
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_validate(const msf::RunConfig& config, const std::string& out) {
  const msf::Stackup stackup = config.build_stackup();

  // Fixed comparison domain: 601 points over [0.5, 5] THz at 0/30/50 degrees,
  // both polarizations, tolerance 1e-10 on |S11_circuit - S11_tmm|.
  msf::ValidationReport report;
  report.tolerance = 1e-10;
  const msf::FrequencyGrid grid{0.5e12, 5.0e12, 601};
  const double angles_deg[] = {0.0, 30.0, 50.0};
  for (double theta_deg : angles_deg) {
    for (msf::Polarization pol : {msf::Polarization::te, msf::Polarization::tm}) {
      for (int i = 0; i < grid.n_points; ++i) {
        msf::IncidentWave wave;
        wave.frequency = grid.frequency_at(i);
        wave.theta = deg_to_rad(theta_deg);
        wave.polarization = pol;
        const msf::Complex circuit =
            msf::reflection_coefficient(stackup, wave, config.model);
        const msf::LayerStack stack =
            msf::make_absorber_stack(stackup, wave.frequency, config.model);
        const msf::Complex tmm = msf::tmm_reflection(stack, wave);
        const double deviation = std::abs(circuit - tmm);
        if (deviation > report.max_abs_deviation) {
          report.max_abs_deviation = deviation;
          report.worst_frequency_hz = wave.frequency;
          report.worst_theta_deg = theta_deg;
          report.worst_polarization = pol;
        }
      }
    }
  }
  report.pass = report.max_abs_deviation < report.tolerance;

  std::string path = out;
  if (path.empty()) {
    path = config.output_path.empty() ? "validation.json" : config.output_path;
  }
  msf::atomic_write_file(path, msf::validation_report_json(report).dump(2) + "\n");

  std::cout << (report.pass ? "PASS" : "FAIL") << ": max |dS11| = "
            << report.max_abs_deviation << " (tolerance " << report.tolerance << ")\n";
  std::cout << "wrote " << path << "\n";
  if (!report.pass) {
    emit_error("validate", "circuit/TMM deviation above tolerance");
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic graphene-patch metasurface absorber solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format_override;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--out", out_path, "artifact output path");
    sub->add_option("--format", format_override, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* cmd_spectrum =
      app.add_subcommand("spectrum", "frequency sweep at fixed angle/polarization");
  CLI::App* cmd_angles = app.add_subcommand("angles", "per-angle spectra and peak table");
  CLI::App* cmd_reconfig =
      app.add_subcommand("reconfig", "peak map over chemical potential");
  CLI::App* cmd_solve = app.add_subcommand("solve", "inverse design for a target peak");
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "circuit model vs transfer-matrix cross-check");
  for (CLI::App* sub : {cmd_spectrum, cmd_angles, cmd_reconfig, cmd_solve, cmd_validate}) {
    add_common(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    msf::RunConfig config;
    if (!config_path.empty()) {
      config = msf::parse_config(read_file(config_path));
    }
    if (format_override == "csv") config.format = msf::OutputFormat::csv;
    if (format_override == "json") config.format = msf::OutputFormat::json;

    const msf::Stackup stackup = config.build_stackup();
    if (!stackup.sheet.mobility_consistent()) {
      emit_warning(
          "mobility and relaxation time disagree by more than 5% through "
          "tau = mu_c * mobility / (e vF^2); tau is authoritative");
    }

    if (cmd_spectrum->parsed()) return run_spectrum(config, out_path);
    if (cmd_angles->parsed()) return run_angles(config, out_path);
    if (cmd_reconfig->parsed()) return run_reconfig(config, out_path);
    if (cmd_solve->parsed()) return run_solve(config, out_path);
    if (cmd_validate->parsed()) return run_validate(config, out_path);
    emit_error("cli", "no subcommand");
    return kExitConfigError;
  } catch (const msf::ConfigError& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  } catch (const msf::SolverError& e) {
    emit_error("solver", e.what());
    return kExitNotConverged;
  } catch (const msf::ModelError& e) {
    emit_error("model", e.what());
    return kExitModelError;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitModelError;
  }
}
