// CSV and JSON rendering of spectra, maps and design solutions.
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "msf/config.hpp"
#include "msf/spectrum.hpp"

namespace msf {

// Exact column schema: frequency_hz,s11_real,s11_imag,s11_mag_db,absorption.
// Floats carry 17 significant digits (round-trip exact).
std::string spectrum_csv(const Spectrum& spectrum);

// Long-format CSV with theta_deg and polarization columns prepended.
std::string angle_map_csv(const std::vector<AngleEntry>& entries, Polarization pol);

// mu_c_ev,f_peak_hz,a_peak rows.
std::string reconfiguration_csv(const ReconfigurationMap& map);

nlohmann::json spectrum_json(const Spectrum& spectrum);
nlohmann::json angle_map_json(const std::vector<AngleEntry>& entries, Polarization pol);
nlohmann::json reconfiguration_json(const ReconfigurationMap& map);
nlohmann::json design_solution_json(const DesignSolution& solution, double f_target);

struct ValidationReport {
  double max_abs_deviation = 0.0;
  double tolerance = 1e-10;
  bool pass = false;
  double worst_frequency_hz = 0.0;
  double worst_theta_deg = 0.0;
  Polarization worst_polarization = Polarization::te;
};

nlohmann::json validation_report_json(const ValidationReport& report);

// 17-significant-digit decimal rendering (shortest text that parses back to
// the identical double for all finite inputs).
std::string format_double(double value);

// Writes via a temp file in the target directory plus rename, so readers
// never observe a partial artifact.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace msf
