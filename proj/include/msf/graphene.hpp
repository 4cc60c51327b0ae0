// Graphene sheet conductivity: full Kubo expression and its Drude low-THz limit.
#pragma once

#include <complex>
#include <optional>

namespace msf {

using Complex = std::complex<double>;

// Electronic state of the graphene layer. Chemical potential is expressed in
// electronvolts at the API surface; all internal computation is SI.
struct GrapheneSheet {
  double chemical_potential_ev = 0.5;  // eV
  double relaxation_time = 0.1e-12;    // s
  double temperature = 300.0;          // K
  std::optional<double> mobility;      // m^2/(V s), informational

  void validate() const;  // throws ModelError on non-positive mu_c, tau or T

  // True when mobility is unset or consistent with the relaxation time through
  // tau = mu_c * mobility / (e * v_F^2) within rel_tol.
  bool mobility_consistent(double rel_tol = 0.05) const;
};

enum class ConductivityModel { drude, kubo };

// Drude weight sigma0 = e^2 mu_c tau / (pi hbar^2), the f -> 0 sheet conductance.
double drude_dc_conductivity(const GrapheneSheet& sheet);

// sigma0 / (1 + j w tau), e^{+j w t} convention. Im < 0 for f > 0.
Complex drude_conductivity(const GrapheneSheet& sheet, double frequency);

// Intraband and interband contributions, exposed separately for diagnostics.
struct KuboConductivity {
  Complex intraband;
  Complex interband;
  Complex total() const { return intraband + interband; }
};

// Full Kubo sheet conductivity with the principal branch for both logarithms.
// Throws ModelError if the interband log argument falls on the branch cut
// within floating tolerance (the offending frequency is reported).
KuboConductivity kubo_conductivity(const GrapheneSheet& sheet, double frequency);

// Either model through one entry point.
Complex sheet_conductivity(const GrapheneSheet& sheet, double frequency,
                           ConductivityModel model);

// tau = mu_c * mobility / (e * v_F^2); both arguments must be positive.
double relaxation_time_from_mobility(double chemical_potential_ev,
                                     double mobility_m2_per_vs);

}  // namespace msf
