// Equivalent-circuit model of the grounded graphene-patch absorber:
// homogenized grid impedance, RLC extraction, grounded-slab line, input
// impedance, reflection coefficient and absorption for TE/TM at any angle.
#pragma once

#include "msf/stackup.hpp"

namespace msf {

// Effective capacitance of the inter-patch gaps,
// C = eps0 (eps_r + 1) P ln csc(pi s / 2P) / pi.
// Throws ModelError for the degenerate gaps s = 0 (C diverges) and s = P
// (patch vanishes, C = 0).
double effective_capacitance(const PatchArrayGeometry& geometry,
                             double relative_permittivity);

// Grid impedance from an explicit sheet conductivity:
// Z = P / (d sigma) - j / (w C_eff). Useful for dispersionless studies.
Complex grid_impedance_from_sigma(const PatchArrayGeometry& geometry,
                                  double relative_permittivity, Complex sigma,
                                  double frequency);

// Grid impedance of the stackup's patch array at one frequency.
Complex grid_impedance(const Stackup& stackup, double frequency,
                       ConductivityModel model = ConductivityModel::drude);

// Series R-L-C equivalent under the Drude model:
// R = P/(d sigma0), L = tau R, C = C_eff. L/R = tau exactly as stored.
RlcTriple rlc_extract(const Stackup& stackup);

// Longitudinal wavenumber in the slab, (w/c) sqrt(eps_r - sin^2 theta);
// complex when the substrate is lossy.
Complex slab_wavenumber(const Substrate& substrate, const IncidentWave& wave);

// Characteristic wave impedance of the slab for the wave's polarization.
Complex slab_wave_impedance(const Substrate& substrate, const IncidentWave& wave);

// Shorted-line input impedance j Zc tan(beta_z h). Near the tan singularity
// the value is huge but finite; use slab_near_resonance to detect proximity
// and input_impedance for a formulation that never divides infinities.
Complex slab_input_impedance(const Substrate& substrate, const IncidentWave& wave);

// True when beta_z h is within rel_tol of an odd multiple of pi/2.
bool slab_near_resonance(const Substrate& substrate, const IncidentWave& wave,
                         double rel_tol = 1e-9);

// Parallel combination of grid and slab, evaluated in a cos/sin form that
// reduces analytically to the grid impedance at the slab's tan singularity.
Complex input_impedance(const Stackup& stackup, const IncidentWave& wave,
                        ConductivityModel model = ConductivityModel::drude);

// Free-space wave impedance seen by the incident wave: Z0/cos(theta) for TE,
// Z0 cos(theta) for TM.
double free_space_wave_impedance(const IncidentWave& wave);

// S11 = (Zin - eta0) / (Zin + eta0); |S11| <= 1 for passive stackups.
Complex reflection_coefficient(const Stackup& stackup, const IncidentWave& wave,
                               ConductivityModel model = ConductivityModel::drude);

// A = 1 - |S11|^2; transmission is identically zero behind the ground plane.
double absorption(const Stackup& stackup, const IncidentWave& wave,
                  ConductivityModel model = ConductivityModel::drude);

}  // namespace msf
