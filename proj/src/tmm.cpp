#include "msf/tmm.hpp"

#include <cmath>
#include <numbers>

#include "msf/circuit.hpp"
#include "msf/constants.hpp"
#include "msf/errors.hpp"

namespace msf {

namespace {

constexpr double kPi = std::numbers::pi;

struct LayerMedium {
  Complex beta_z;          // longitudinal wavenumber
  Complex wave_impedance;  // transverse wave impedance for the polarization
};

LayerMedium layer_medium(const DielectricLayer& layer, const IncidentWave& wave) {
  const double omega = 2.0 * kPi * wave.frequency;
  const double sin_theta = std::sin(wave.theta);
  const Complex eps(layer.relative_permittivity,
                    -layer.relative_permittivity * layer.loss_tangent);
  const Complex arg = eps - sin_theta * sin_theta;
  if (layer.loss_tangent == 0.0 && arg.real() <= 0.0) {
    throw ModelError("tmm: evanescent propagation in a dielectric layer");
  }
  const Complex beta_z = omega / constants::light_speed * std::sqrt(arg);
  Complex z;
  if (wave.polarization == Polarization::te) {
    z = omega * constants::vacuum_permeability / beta_z;
  } else {
    z = beta_z / (omega * constants::vacuum_permittivity * eps);
  }
  return {beta_z, z};
}

}  // namespace

void LayerStack::validate() const {
  if (layers.empty()) {
    throw ModelError("layer stack: empty");
  }
  int pec_count = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (std::holds_alternative<PecTermination>(layers[i])) {
      ++pec_count;
      if (i + 1 != layers.size()) {
        throw ModelError("layer stack: PEC termination must be the last layer");
      }
    } else if (const auto* d = std::get_if<DielectricLayer>(&layers[i])) {
      if (!(d->thickness > 0.0)) {
        throw ModelError("layer stack: dielectric thickness must be positive");
      }
      if (!(d->relative_permittivity >= 1.0)) {
        throw ModelError("layer stack: relative permittivity must be >= 1");
      }
    }
  }
  if (pec_count != 1) {
    throw ModelError("layer stack: exactly one PEC termination required");
  }
}

Abcd propagation_matrix(const DielectricLayer& layer, const IncidentWave& wave) {
  const LayerMedium medium = layer_medium(layer, wave);
  const Complex phase = medium.beta_z * layer.thickness;
  const Complex cos_p = std::cos(phase);
  const Complex sin_p = std::sin(phase);
  const Complex j(0.0, 1.0);
  return {cos_p, j * medium.wave_impedance * sin_p,
          j * sin_p / medium.wave_impedance, cos_p};
}

Complex tmm_reflection(const LayerStack& stack, const IncidentWave& wave) {
  stack.validate();
  wave.validate();

  Abcd cascade;
  for (const Layer& layer : stack.layers) {
    if (const auto* sheet = std::get_if<SheetLayer>(&layer)) {
      const Complex admittance = 1.0 / sheet->sheet_impedance;
      cascade = cascade * Abcd{1.0, 0.0, admittance, 1.0};
    } else if (const auto* diel = std::get_if<DielectricLayer>(&layer)) {
      cascade = cascade * propagation_matrix(*diel, wave);
    }
  }

  // Short-circuit load: Zin = B/D. Form S11 from the cascade entries directly
  // so slab resonances (D -> 0) stay finite.
  const double eta = free_space_wave_impedance(wave);
  return (cascade.b - eta * cascade.d) / (cascade.b + eta * cascade.d);
}

double tmm_absorption(const LayerStack& stack, const IncidentWave& wave) {
  return 1.0 - std::norm(tmm_reflection(stack, wave));
}

LayerStack make_absorber_stack(const Stackup& stackup, double frequency,
                               ConductivityModel model) {
  stackup.validate();
  LayerStack stack;
  stack.layers.push_back(SheetLayer{grid_impedance(stackup, frequency, model)});
  stack.layers.push_back(DielectricLayer{stackup.substrate.relative_permittivity,
                                         stackup.substrate.thickness,
                                         stackup.substrate.loss_tangent});
  stack.layers.push_back(PecTermination{});
  return stack;
}

}  // namespace msf
