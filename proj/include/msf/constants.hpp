// Physical constants (CODATA 2018, SI units).
#pragma once

namespace msf::constants {

inline constexpr double electron_charge = 1.602176634e-19;       // C
inline constexpr double boltzmann = 1.380649e-23;                // J/K
inline constexpr double reduced_planck = 1.054571817e-34;        // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double vacuum_permeability = 1.25663706212e-6;  // H/m
inline constexpr double light_speed = 299792458.0;               // m/s
inline constexpr double free_space_impedance = 376.730313668;    // ohm, sqrt(mu0/eps0)

// Graphene Fermi velocity, used only by the mobility <-> relaxation-time relation.
inline constexpr double fermi_velocity = 1.0e6;  // m/s

inline constexpr double electronvolt = 1.602176634e-19;  // J per eV

}  // namespace msf::constants
