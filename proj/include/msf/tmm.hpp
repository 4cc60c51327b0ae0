// Independent 1-D transfer-matrix solver for air / conductive sheets /
// dielectric slabs / PEC termination. Cross-validates the circuit model.
#pragma once

#include <variant>
#include <vector>

#include "msf/stackup.hpp"

namespace msf {

// Zero-thickness conductive sheet, a shunt admittance 1/Z across the line.
struct SheetLayer {
  Complex sheet_impedance;  // ohm
};

struct DielectricLayer {
  double relative_permittivity = 1.0;
  double thickness = 0.0;  // m
  double loss_tangent = 0.0;
};

struct PecTermination {};

using Layer = std::variant<SheetLayer, DielectricLayer, PecTermination>;

// Ordered from the illuminated side. Exactly one PEC termination, last.
struct LayerStack {
  std::vector<Layer> layers;

  void validate() const;
};

// Complex 2x2 for ABCD cascades; deliberately minimal.
struct Abcd {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  Abcd operator*(const Abcd& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
  }
  Complex determinant() const { return a * d - b * c; }
};

// ABCD matrix of one dielectric section at the wave's angle/polarization.
// det = 1 (reciprocity).
Abcd propagation_matrix(const DielectricLayer& layer, const IncidentWave& wave);

// Reflection coefficient of the stack. The sheet enters as a shunt-admittance
// boundary condition; S11 is formed from the cascade numerator/denominator so
// slab resonances never divide infinities.
Complex tmm_reflection(const LayerStack& stack, const IncidentWave& wave);

// A = 1 - |S11|^2.
double tmm_absorption(const LayerStack& stack, const IncidentWave& wave);

// The patch absorber as seen by the TMM: homogenized grid sheet over the
// substrate over PEC. The sheet impedance is evaluated at `frequency`.
LayerStack make_absorber_stack(const Stackup& stackup, double frequency,
                               ConductivityModel model = ConductivityModel::drude);

}  // namespace msf
