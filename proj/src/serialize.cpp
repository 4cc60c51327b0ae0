#include "msf/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "msf/errors.hpp"

namespace msf {

namespace {

using nlohmann::json;

double s11_mag_db(const Complex& s11) { return 20.0 * std::log10(std::abs(s11)); }

double to_degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

const char* polarization_name(Polarization pol) {
  return pol == Polarization::te ? "TE" : "TM";
}

json stackup_json(const Stackup& stackup) {
  json j{{"mu_c_ev", stackup.sheet.chemical_potential_ev},
         {"tau_s", stackup.sheet.relaxation_time},
         {"temperature_k", stackup.sheet.temperature},
         {"epsilon_r", stackup.substrate.relative_permittivity},
         {"loss_tangent", stackup.substrate.loss_tangent},
         {"substrate_thickness_m", stackup.substrate.thickness},
         {"patch_width_m", stackup.geometry.patch_width},
         {"period_m", stackup.geometry.period},
         {"gap_m", stackup.geometry.gap()},
         {"ground_thickness_m", stackup.ground.thickness}};
  if (stackup.sheet.mobility) j["mobility_m2_per_vs"] = *stackup.sheet.mobility;
  return j;
}

json points_json(const Spectrum& spectrum) {
  json points = json::array();
  for (const SpectrumPoint& p : spectrum.points) {
    points.push_back({{"frequency_hz", p.frequency},
                      {"s11_real", p.s11.real()},
                      {"s11_imag", p.s11.imag()},
                      {"s11_mag_db", s11_mag_db(p.s11)},
                      {"absorption", p.absorption}});
  }
  return points;
}

void append_csv_row(std::ostringstream& out, const SpectrumPoint& p) {
  out << format_double(p.frequency) << ',' << format_double(p.s11.real()) << ','
      << format_double(p.s11.imag()) << ',' << format_double(s11_mag_db(p.s11)) << ','
      << format_double(p.absorption) << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  const int written = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, written > 0 ? static_cast<std::size_t>(written) : 0);
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "frequency_hz,s11_real,s11_imag,s11_mag_db,absorption\n";
  for (const SpectrumPoint& p : spectrum.points) append_csv_row(out, p);
  return out.str();
}

std::string angle_map_csv(const std::vector<AngleEntry>& entries, Polarization pol) {
  std::ostringstream out;
  out << "theta_deg,polarization,frequency_hz,s11_real,s11_imag,s11_mag_db,absorption\n";
  for (const AngleEntry& entry : entries) {
    for (const SpectrumPoint& p : entry.spectrum.points) {
      out << format_double(to_degrees(entry.theta)) << ',' << polarization_name(pol) << ',';
      append_csv_row(out, p);
    }
  }
  return out.str();
}

std::string reconfiguration_csv(const ReconfigurationMap& map) {
  std::ostringstream out;
  out << "mu_c_ev,f_peak_hz,a_peak\n";
  for (const ReconfigurationEntry& e : map.entries) {
    out << format_double(e.chemical_potential_ev) << ',' << format_double(e.f_peak)
        << ',' << format_double(e.a_peak) << '\n';
  }
  return out.str();
}

json spectrum_json(const Spectrum& spectrum) {
  return {{"metadata",
           {{"stackup", stackup_json(spectrum.stackup)},
            {"theta_deg", to_degrees(spectrum.wave.theta)},
            {"polarization", polarization_name(spectrum.wave.polarization)},
            {"conductivity_model",
             spectrum.model == ConductivityModel::drude ? "drude" : "kubo"},
            {"f_start_hz", spectrum.grid.f_start},
            {"f_stop_hz", spectrum.grid.f_stop},
            {"n_points", spectrum.grid.n_points}}},
          {"points", points_json(spectrum)}};
}

json angle_map_json(const std::vector<AngleEntry>& entries, Polarization pol) {
  json angles = json::array();
  for (const AngleEntry& entry : entries) {
    angles.push_back({{"theta_deg", to_degrees(entry.theta)},
                      {"polarization", polarization_name(pol)},
                      {"peak",
                       {{"found", entry.peak.found},
                        {"boundary", entry.peak.boundary},
                        {"f_peak_hz", entry.peak.frequency},
                        {"a_peak", entry.peak.absorption}}},
                      {"points", points_json(entry.spectrum)}});
  }
  return {{"angles", angles}};
}

json reconfiguration_json(const ReconfigurationMap& map) {
  json entries = json::array();
  for (const ReconfigurationEntry& e : map.entries) {
    entries.push_back({{"mu_c_ev", e.chemical_potential_ev},
                       {"f_peak_hz", e.f_peak},
                       {"a_peak", e.a_peak}});
  }
  json j{{"entries", entries}, {"monotone_increasing", map.monotone_increasing}};
  if (!map.anomaly.empty()) j["anomaly"] = map.anomaly;
  return j;
}

json design_solution_json(const DesignSolution& solution, double f_target) {
  return {{"f_target_hz", f_target},
          {"stackup", stackup_json(solution.stackup)},
          {"achieved_f_peak_hz", solution.achieved_f_peak},
          {"achieved_a_peak", solution.achieved_a_peak},
          {"residual_s11_mag", solution.residual},
          {"iterations", solution.iterations},
          {"converged", solution.converged},
          {"objective_history", solution.objective_history}};
}

json validation_report_json(const ValidationReport& report) {
  return {{"max_abs_deviation", report.max_abs_deviation},
          {"tolerance", report.tolerance},
          {"pass", report.pass},
          {"worst_point",
           {{"frequency_hz", report.worst_frequency_hz},
            {"theta_deg", report.worst_theta_deg},
            {"polarization", polarization_name(report.worst_polarization)}}}};
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ModelError("cannot open '" + temp.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw ModelError("write failed for '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw ModelError("cannot move temporary file onto '" + path + "'");
  }
}

}  // namespace msf
