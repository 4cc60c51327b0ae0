#include "msf/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "msf/errors.hpp"
#include "msf/serialize.hpp"

namespace msf {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

enum class Dimension { frequency, time, length, energy, temperature, angle, mobility, none };

const std::map<std::string, double>& unit_table(Dimension dim) {
  static const std::map<std::string, double> frequency{
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::map<std::string, double> time{
      {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6},
      {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}};
  static const std::map<std::string, double> length{
      {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6},
      {"µm", 1e-6}, {"nm", 1e-9}};
  static const std::map<std::string, double> energy{{"eV", 1.0}, {"meV", 1e-3}};
  static const std::map<std::string, double> temperature{{"K", 1.0}};
  static const std::map<std::string, double> angle{
      {"deg", 1.0}, {"rad", 180.0 / 3.14159265358979323846}};
  static const std::map<std::string, double> mobility{
      {"m^2/Vs", 1.0}, {"m2/Vs", 1.0}, {"cm^2/Vs", 1e-4}, {"cm2/Vs", 1e-4}};
  static const std::map<std::string, double> none{};
  switch (dim) {
    case Dimension::frequency: return frequency;
    case Dimension::time: return time;
    case Dimension::length: return length;
    case Dimension::energy: return energy;
    case Dimension::temperature: return temperature;
    case Dimension::angle: return angle;
    case Dimension::mobility: return mobility;
    case Dimension::none: return none;
  }
  return none;
}

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::frequency: return "frequency";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::energy: return "energy";
    case Dimension::temperature: return "temperature";
    case Dimension::angle: return "angle";
    case Dimension::mobility: return "mobility";
    case Dimension::none: return "dimensionless";
  }
  return "?";
}

double parse_quantity(const std::string& key, int line, const std::string& text,
                      Dimension dim) {
  const std::string value = trim(text);
  if (value.empty()) {
    throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                     "': empty value");
  }
  char* end = nullptr;
  const double number = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || !std::isfinite(number)) {
    throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                     "': cannot parse number from '" + value + "'");
  }
  const std::string unit = trim(std::string(end));
  if (unit.empty()) return number;  // bare number = canonical unit
  const auto& table = unit_table(dim);
  const auto it = table.find(unit);
  if (it == table.end()) {
    throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                     "': unit '" + unit + "' is not a " +
                                     dimension_name(dim) + " unit");
  }
  return number * it->second;
}

int parse_int(const std::string& key, int line, const std::string& text) {
  const std::string value = trim(text);
  char* end = nullptr;
  const long number = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                     "': expected an integer, got '" + value + "'");
  }
  return static_cast<int>(number);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream stream(text);
  while (std::getline(stream, current, ',')) items.push_back(trim(current));
  if (!items.empty() && items.back().empty()) items.pop_back();
  return items;
}

std::vector<double> parse_quantity_list(const std::string& key, int line,
                                        const std::string& text, Dimension dim) {
  std::vector<double> values;
  for (const std::string& item : split_list(text)) {
    values.push_back(parse_quantity(key, line, item, dim));
  }
  if (values.empty()) {
    throw ConfigError(key, line,
                      "line " + std::to_string(line) + ": key '" + key + "': empty list");
  }
  return values;
}

FreeParameter parse_free_parameter(const std::string& key, int line,
                                   const std::string& token) {
  const std::string t = lower(token);
  if (t == "mu_c" || t == "chemical_potential") return FreeParameter::chemical_potential;
  if (t == "d" || t == "patch_width") return FreeParameter::patch_width;
  if (t == "p" || t == "period") return FreeParameter::period;
  if (t == "h" || t == "substrate_thickness") return FreeParameter::substrate_thickness;
  throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                   "': unknown parameter '" + token +
                                   "' (expected mu_c, d, P or h)");
}

const char* free_parameter_token(FreeParameter p) {
  switch (p) {
    case FreeParameter::chemical_potential: return "mu_c";
    case FreeParameter::patch_width: return "d";
    case FreeParameter::period: return "P";
    case FreeParameter::substrate_thickness: return "h";
  }
  return "?";
}

void check_positive(const std::string& key, int line, double value) {
  if (!(value > 0.0)) {
    throw ConfigError(key, line, "line " + std::to_string(line) + ": key '" + key +
                                     "': value must be positive");
  }
}

}  // namespace

Stackup RunConfig::build_stackup() const {
  Stackup stackup = synthesize_geometry(frequency_hz);
  stackup.sheet.chemical_potential_ev = mu_c_ev;
  stackup.sheet.relaxation_time = tau_s;
  stackup.sheet.temperature = temperature_k;
  stackup.sheet.mobility = mobility_m2_per_vs;
  stackup.substrate.relative_permittivity = epsilon_r;
  stackup.substrate.loss_tangent = loss_tangent;
  if (substrate_thickness_m) stackup.substrate.thickness = *substrate_thickness_m;
  if (patch_width_m) stackup.geometry.patch_width = *patch_width_m;
  if (period_m) stackup.geometry.period = *period_m;
  stackup.ground.thickness = ground_thickness_m;
  stackup.validate();
  return stackup;
}

FrequencyGrid RunConfig::build_grid() const {
  FrequencyGrid grid{f_start_hz, f_stop_hz, n_points};
  grid.validate();
  return grid;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::set<std::string> seen;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", line_no, "line " + std::to_string(line_no) +
                                         ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("", line_no,
                        "line " + std::to_string(line_no) + ": missing key before '='");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(key, line_no, "line " + std::to_string(line_no) + ": key '" +
                                          key + "' given more than once");
    }

    if (key == "mu_c") {
      config.mu_c_ev = parse_quantity(key, line_no, value, Dimension::energy);
      check_positive(key, line_no, config.mu_c_ev);
    } else if (key == "tau") {
      config.tau_s = parse_quantity(key, line_no, value, Dimension::time);
      check_positive(key, line_no, config.tau_s);
    } else if (key == "temperature") {
      config.temperature_k = parse_quantity(key, line_no, value, Dimension::temperature);
      check_positive(key, line_no, config.temperature_k);
    } else if (key == "mobility") {
      config.mobility_m2_per_vs = parse_quantity(key, line_no, value, Dimension::mobility);
      check_positive(key, line_no, *config.mobility_m2_per_vs);
    } else if (key == "conductivity_model") {
      const std::string v = lower(value);
      if (v == "drude") {
        config.model = ConductivityModel::drude;
      } else if (v == "kubo") {
        config.model = ConductivityModel::kubo;
      } else {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": conductivity_model must be drude or kubo");
      }
    } else if (key == "epsilon_r") {
      config.epsilon_r = parse_quantity(key, line_no, value, Dimension::none);
      if (!(config.epsilon_r >= 1.0)) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": epsilon_r must be >= 1");
      }
    } else if (key == "loss_tangent") {
      config.loss_tangent = parse_quantity(key, line_no, value, Dimension::none);
      if (config.loss_tangent < 0.0) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": loss_tangent must be >= 0");
      }
    } else if (key == "frequency") {
      config.frequency_hz = parse_quantity(key, line_no, value, Dimension::frequency);
      check_positive(key, line_no, config.frequency_hz);
    } else if (key == "substrate_thickness") {
      config.substrate_thickness_m = parse_quantity(key, line_no, value, Dimension::length);
      check_positive(key, line_no, *config.substrate_thickness_m);
    } else if (key == "patch_width") {
      config.patch_width_m = parse_quantity(key, line_no, value, Dimension::length);
      check_positive(key, line_no, *config.patch_width_m);
    } else if (key == "period") {
      config.period_m = parse_quantity(key, line_no, value, Dimension::length);
      check_positive(key, line_no, *config.period_m);
    } else if (key == "ground_thickness") {
      config.ground_thickness_m = parse_quantity(key, line_no, value, Dimension::length);
      check_positive(key, line_no, config.ground_thickness_m);
    } else if (key == "f_start") {
      config.f_start_hz = parse_quantity(key, line_no, value, Dimension::frequency);
      check_positive(key, line_no, config.f_start_hz);
    } else if (key == "f_stop") {
      config.f_stop_hz = parse_quantity(key, line_no, value, Dimension::frequency);
      check_positive(key, line_no, config.f_stop_hz);
    } else if (key == "n_points") {
      config.n_points = parse_int(key, line_no, value);
      if (config.n_points < 2) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": n_points must be >= 2");
      }
    } else if (key == "theta") {
      config.theta_deg = parse_quantity(key, line_no, value, Dimension::angle);
      if (config.theta_deg < 0.0 || config.theta_deg >= 90.0) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": theta must lie in [0, 90) degrees");
      }
    } else if (key == "polarization") {
      const std::string v = lower(value);
      if (v == "te") {
        config.polarization = PolarizationChoice::te;
      } else if (v == "tm") {
        config.polarization = PolarizationChoice::tm;
      } else if (v == "both") {
        config.polarization = PolarizationChoice::both;
      } else {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": polarization must be TE, TM or both");
      }
    } else if (key == "angles") {
      config.angles_deg = parse_quantity_list(key, line_no, value, Dimension::angle);
      for (double a : config.angles_deg) {
        if (a < 0.0 || a >= 90.0) {
          throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                              ": angles must lie in [0, 90) degrees");
        }
      }
    } else if (key == "mu_c_values") {
      config.mu_c_values_ev = parse_quantity_list(key, line_no, value, Dimension::energy);
      for (std::size_t i = 0; i < config.mu_c_values_ev.size(); ++i) {
        if (!(config.mu_c_values_ev[i] > 0.0) ||
            (i > 0 && config.mu_c_values_ev[i] <= config.mu_c_values_ev[i - 1])) {
          throw ConfigError(key, line_no,
                            "line " + std::to_string(line_no) +
                                ": mu_c_values must be positive and strictly increasing");
        }
      }
    } else if (key == "bandwidth_threshold") {
      config.bandwidth_threshold = parse_quantity(key, line_no, value, Dimension::none);
      if (!(config.bandwidth_threshold > 0.0) || !(config.bandwidth_threshold < 1.0)) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": bandwidth_threshold must lie in (0, 1)");
      }
    } else if (key == "solve_target") {
      config.solve_target_hz = parse_quantity(key, line_no, value, Dimension::frequency);
      check_positive(key, line_no, *config.solve_target_hz);
    } else if (key == "solve_mu_min") {
      config.solve_mu_min_ev = parse_quantity(key, line_no, value, Dimension::energy);
      check_positive(key, line_no, config.solve_mu_min_ev);
    } else if (key == "solve_mu_max") {
      config.solve_mu_max_ev = parse_quantity(key, line_no, value, Dimension::energy);
      check_positive(key, line_no, config.solve_mu_max_ev);
    } else if (key == "solve_tolerance") {
      config.solve_tolerance_rel = parse_quantity(key, line_no, value, Dimension::none);
      check_positive(key, line_no, config.solve_tolerance_rel);
    } else if (key == "match_parameters") {
      config.match_parameters.clear();
      for (const std::string& token : split_list(value)) {
        config.match_parameters.push_back(parse_free_parameter(key, line_no, token));
      }
      if (config.match_parameters.empty() || config.match_parameters.size() > 3) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": match_parameters needs 1 to 3 entries");
      }
    } else if (key == "match_tolerance") {
      config.match_tolerance = parse_quantity(key, line_no, value, Dimension::none);
      check_positive(key, line_no, config.match_tolerance);
    } else if (key == "max_iterations") {
      config.max_iterations = parse_int(key, line_no, value);
      if (config.max_iterations < 1) {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": max_iterations must be >= 1");
      }
    } else if (key == "format") {
      const std::string v = lower(value);
      if (v == "csv") {
        config.format = OutputFormat::csv;
      } else if (v == "json") {
        config.format = OutputFormat::json;
      } else {
        throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                            ": format must be csv or json");
      }
    } else if (key == "output") {
      config.output_path = value;
    } else {
      throw ConfigError(key, line_no, "line " + std::to_string(line_no) +
                                          ": unknown key '" + key + "'");
    }
  }

  if (!(config.f_start_hz < config.f_stop_hz)) {
    throw ConfigError("f_start", 0, "f_start must be below f_stop");
  }
  if (!(config.solve_mu_min_ev < config.solve_mu_max_ev)) {
    throw ConfigError("solve_mu_min", 0, "solve_mu_min must be below solve_mu_max");
  }
  config.build_stackup();  // surfaces cross-field geometry violations early
  return config;
}

std::string RunConfig::dump() const {
  std::ostringstream out;
  const auto q = [](double v) { return format_double(v); };

  out << "mu_c = " << q(mu_c_ev) << " eV\n";
  out << "tau = " << q(tau_s) << " s\n";
  out << "temperature = " << q(temperature_k) << " K\n";
  if (mobility_m2_per_vs) out << "mobility = " << q(*mobility_m2_per_vs) << " m^2/Vs\n";
  out << "conductivity_model = "
      << (model == ConductivityModel::drude ? "drude" : "kubo") << "\n";
  out << "epsilon_r = " << q(epsilon_r) << "\n";
  out << "loss_tangent = " << q(loss_tangent) << "\n";
  out << "frequency = " << q(frequency_hz) << " Hz\n";
  if (substrate_thickness_m) out << "substrate_thickness = " << q(*substrate_thickness_m) << " m\n";
  if (patch_width_m) out << "patch_width = " << q(*patch_width_m) << " m\n";
  if (period_m) out << "period = " << q(*period_m) << " m\n";
  out << "ground_thickness = " << q(ground_thickness_m) << " m\n";
  out << "f_start = " << q(f_start_hz) << " Hz\n";
  out << "f_stop = " << q(f_stop_hz) << " Hz\n";
  out << "n_points = " << n_points << "\n";
  out << "theta = " << q(theta_deg) << " deg\n";
  out << "polarization = "
      << (polarization == PolarizationChoice::te
              ? "TE"
              : polarization == PolarizationChoice::tm ? "TM" : "both")
      << "\n";
  out << "angles = ";
  for (std::size_t i = 0; i < angles_deg.size(); ++i) {
    out << (i ? ", " : "") << q(angles_deg[i]);
  }
  out << " deg\n";
  out << "mu_c_values = ";
  for (std::size_t i = 0; i < mu_c_values_ev.size(); ++i) {
    out << (i ? ", " : "") << q(mu_c_values_ev[i]);
  }
  out << " eV\n";
  out << "bandwidth_threshold = " << q(bandwidth_threshold) << "\n";
  if (solve_target_hz) out << "solve_target = " << q(*solve_target_hz) << " Hz\n";
  out << "solve_mu_min = " << q(solve_mu_min_ev) << " eV\n";
  out << "solve_mu_max = " << q(solve_mu_max_ev) << " eV\n";
  out << "solve_tolerance = " << q(solve_tolerance_rel) << "\n";
  if (!match_parameters.empty()) {
    out << "match_parameters = ";
    for (std::size_t i = 0; i < match_parameters.size(); ++i) {
      out << (i ? ", " : "") << free_parameter_token(match_parameters[i]);
    }
    out << "\n";
  }
  out << "match_tolerance = " << q(match_tolerance) << "\n";
  out << "max_iterations = " << max_iterations << "\n";
  out << "format = " << (format == OutputFormat::csv ? "csv" : "json") << "\n";
  if (!output_path.empty()) out << "output = " << output_path << "\n";
  return out.str();
}

}  // namespace msf
