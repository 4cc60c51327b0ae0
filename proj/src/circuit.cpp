#include "msf/circuit.hpp"

#include <cmath>
#include <numbers>

#include "msf/constants.hpp"
#include "msf/errors.hpp"

namespace msf {

namespace {

constexpr double kPi = std::numbers::pi;

// eps_r (1 - j tan_delta) under the e^{+j w t} convention.
Complex complex_permittivity(const Substrate& substrate) {
  return Complex(substrate.relative_permittivity,
                 -substrate.relative_permittivity * substrate.loss_tangent);
}

}  // namespace

double effective_capacitance(const PatchArrayGeometry& geometry,
                             double relative_permittivity) {
  geometry.validate();
  if (!(relative_permittivity >= 1.0)) {
    throw ModelError("effective capacitance: relative permittivity must be >= 1");
  }
  const double gap = geometry.gap();
  if (!(gap > 0.0)) {
    throw ModelError("effective capacitance: gap must be positive (csc diverges at s = 0)");
  }
  if (!(gap < geometry.period)) {
    throw ModelError("effective capacitance: gap equals period, patch vanished (C = 0)");
  }
  const double csc = 1.0 / std::sin(kPi * gap / (2.0 * geometry.period));
  return constants::vacuum_permittivity * (relative_permittivity + 1.0) *
         geometry.period * std::log(csc) / kPi;
}

Complex grid_impedance_from_sigma(const PatchArrayGeometry& geometry,
                                  double relative_permittivity, Complex sigma,
                                  double frequency) {
  const double c_eff = effective_capacitance(geometry, relative_permittivity);
  const double omega = 2.0 * kPi * frequency;
  return geometry.period / (geometry.patch_width * sigma) -
         Complex(0.0, 1.0) / (omega * c_eff);
}

Complex grid_impedance(const Stackup& stackup, double frequency,
                       ConductivityModel model) {
  if (!(frequency > 0.0)) {
    throw ModelError("grid impedance requires frequency > 0");
  }
  const Complex sigma = sheet_conductivity(stackup.sheet, frequency, model);
  return grid_impedance_from_sigma(stackup.geometry,
                                   stackup.substrate.relative_permittivity, sigma,
                                   frequency);
}

RlcTriple rlc_extract(const Stackup& stackup) {
  stackup.validate();
  const double sigma0 = drude_dc_conductivity(stackup.sheet);
  const double resistance =
      stackup.geometry.period / (stackup.geometry.patch_width * sigma0);
  return {resistance, stackup.sheet.relaxation_time * resistance,
          effective_capacitance(stackup.geometry,
                                stackup.substrate.relative_permittivity)};
}

Complex slab_wavenumber(const Substrate& substrate, const IncidentWave& wave) {
  wave.validate();
  const double omega = 2.0 * kPi * wave.frequency;
  const double sin_theta = std::sin(wave.theta);
  const Complex arg = complex_permittivity(substrate) - sin_theta * sin_theta;
  // Principal sqrt keeps Im <= 0 for passive media, the decaying branch.
  return omega / constants::light_speed * std::sqrt(arg);
}

Complex slab_wave_impedance(const Substrate& substrate, const IncidentWave& wave) {
  const Complex beta_z = slab_wavenumber(substrate, wave);
  const double omega = 2.0 * kPi * wave.frequency;
  if (wave.polarization == Polarization::te) {
    return omega * constants::vacuum_permeability / beta_z;
  }
  return beta_z / (omega * constants::vacuum_permittivity * complex_permittivity(substrate));
}

Complex slab_input_impedance(const Substrate& substrate, const IncidentWave& wave) {
  substrate.validate();
  const Complex beta_z = slab_wavenumber(substrate, wave);
  const Complex z_c = slab_wave_impedance(substrate, wave);
  return Complex(0.0, 1.0) * z_c * std::tan(beta_z * substrate.thickness);
}

bool slab_near_resonance(const Substrate& substrate, const IncidentWave& wave,
                         double rel_tol) {
  const Complex phase = slab_wavenumber(substrate, wave) * substrate.thickness;
  if (std::abs(phase.imag()) > rel_tol * std::abs(phase)) return false;
  const double x = phase.real() / kPi;  // odd multiples of pi/2 <=> x - 1/2 integral
  const double nearest = std::round(x - 0.5) + 0.5;
  return std::abs(x - nearest) <= rel_tol * std::abs(x);
}

Complex input_impedance(const Stackup& stackup, const IncidentWave& wave,
                        ConductivityModel model) {
  stackup.validate();
  wave.validate();
  const Complex z_grid = grid_impedance(stackup, wave.frequency, model);
  const Complex phase = slab_wavenumber(stackup.substrate, wave) * stackup.substrate.thickness;
  const Complex z_c = slab_wave_impedance(stackup.substrate, wave);
  // Zg || (j Zc tan), written with cos/sin so the tan singularity reduces to
  // the open-slab branch Zin = Zg instead of an inf/inf division.
  const Complex sin_p = std::sin(phase);
  const Complex cos_p = std::cos(phase);
  const Complex j(0.0, 1.0);
  return z_grid * j * z_c * sin_p / (z_grid * cos_p + j * z_c * sin_p);
}

double free_space_wave_impedance(const IncidentWave& wave) {
  wave.validate();
  const double z0 = constants::free_space_impedance;
  return wave.polarization == Polarization::te ? z0 / std::cos(wave.theta)
                                               : z0 * std::cos(wave.theta);
}

Complex reflection_coefficient(const Stackup& stackup, const IncidentWave& wave,
                               ConductivityModel model) {
  const Complex z_in = input_impedance(stackup, wave, model);
  const double eta = free_space_wave_impedance(wave);
  return (z_in - eta) / (z_in + eta);
}

double absorption(const Stackup& stackup, const IncidentWave& wave,
                  ConductivityModel model) {
  return 1.0 - std::norm(reflection_coefficient(stackup, wave, model));
}

}  // namespace msf
