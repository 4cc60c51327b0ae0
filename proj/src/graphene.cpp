#include "msf/graphene.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "msf/constants.hpp"
#include "msf/errors.hpp"

namespace msf {

namespace {

constexpr double kPi = std::numbers::pi;

double chemical_potential_joule(const GrapheneSheet& sheet) {
  return sheet.chemical_potential_ev * constants::electronvolt;
}

}  // namespace

void GrapheneSheet::validate() const {
  if (!(chemical_potential_ev > 0.0)) {
    throw ModelError("graphene sheet: chemical potential must be positive, got " +
                     std::to_string(chemical_potential_ev) + " eV");
  }
  if (!(relaxation_time > 0.0)) {
    throw ModelError("graphene sheet: relaxation time must be positive");
  }
  if (!(temperature > 0.0)) {
    throw ModelError("graphene sheet: temperature must be positive");
  }
  if (mobility && !(*mobility > 0.0)) {
    throw ModelError("graphene sheet: mobility must be positive when set");
  }
}

bool GrapheneSheet::mobility_consistent(double rel_tol) const {
  if (!mobility) return true;
  const double tau_from_mobility =
      relaxation_time_from_mobility(chemical_potential_ev, *mobility);
  return std::abs(tau_from_mobility - relaxation_time) <= rel_tol * relaxation_time;
}

double drude_dc_conductivity(const GrapheneSheet& sheet) {
  sheet.validate();
  const double hbar = constants::reduced_planck;
  return constants::electron_charge * constants::electron_charge *
         chemical_potential_joule(sheet) * sheet.relaxation_time / (kPi * hbar * hbar);
}

Complex drude_conductivity(const GrapheneSheet& sheet, double frequency) {
  const double sigma0 = drude_dc_conductivity(sheet);
  const double omega_tau = 2.0 * kPi * frequency * sheet.relaxation_time;
  return sigma0 / Complex(1.0, omega_tau);
}

KuboConductivity kubo_conductivity(const GrapheneSheet& sheet, double frequency) {
  sheet.validate();
  if (!(frequency > 0.0)) {
    throw ModelError("kubo conductivity requires frequency > 0");
  }
  const double e = constants::electron_charge;
  const double kb = constants::boltzmann;
  const double hbar = constants::reduced_planck;
  const double mu = chemical_potential_joule(sheet);
  const double kt = kb * sheet.temperature;
  const double omega = 2.0 * kPi * frequency;

  const Complex omega_c(omega, -1.0 / sheet.relaxation_time);

  const Complex intra = Complex(0.0, -1.0) * (e * e * kt) /
                        (kPi * hbar * hbar * omega_c) *
                        (mu / kt + 2.0 * std::log(std::exp(-mu / kt) + 1.0));

  const Complex numerator = 2.0 * std::abs(mu) - hbar * omega_c;
  const Complex denominator = 2.0 * std::abs(mu) + hbar * omega_c;
  const Complex log_arg = numerator / denominator;
  // Principal branch; the argument only reaches the cut in the tau -> inf limit.
  if (log_arg.real() < 0.0 &&
      std::abs(log_arg.imag()) < 1e-12 * std::abs(log_arg)) {
    throw ModelError("kubo conductivity: interband log argument on the branch cut at " +
                     std::to_string(frequency) + " Hz");
  }
  const Complex inter =
      Complex(0.0, -1.0) * (e * e) / (4.0 * kPi * hbar) * std::log(log_arg);

  return {intra, inter};
}

Complex sheet_conductivity(const GrapheneSheet& sheet, double frequency,
                           ConductivityModel model) {
  if (model == ConductivityModel::drude) return drude_conductivity(sheet, frequency);
  return kubo_conductivity(sheet, frequency).total();
}

double relaxation_time_from_mobility(double chemical_potential_ev,
                                     double mobility_m2_per_vs) {
  if (!(chemical_potential_ev > 0.0) || !(mobility_m2_per_vs > 0.0)) {
    throw ModelError("relaxation_time_from_mobility requires positive arguments");
  }
  const double mu = chemical_potential_ev * constants::electronvolt;
  const double vf = constants::fermi_velocity;
  return mu * mobility_m2_per_vs / (constants::electron_charge * vf * vf);
}

}  // namespace msf
