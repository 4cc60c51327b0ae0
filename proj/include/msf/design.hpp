// Inverse design: geometry synthesis from wavelength ratios, chemical-potential
// solving for a target peak frequency, and impedance-matching refinement.
#pragma once

#include <map>
#include <vector>

#include "msf/spectrum.hpp"

namespace msf {

enum class FreeParameter { chemical_potential, patch_width, period, substrate_thickness };

struct DesignTarget {
  double f_target = 2.5e12;       // Hz
  double min_absorption = 0.9999;
  std::vector<FreeParameter> free_parameters;

  void validate() const;
};

struct DesignSolution {
  Stackup stackup;
  double achieved_f_peak = 0.0;
  double achieved_a_peak = 0.0;
  double residual = 0.0;  // |S11(f_target)| at the solution
  int iterations = 0;     // model evaluations spent
  bool converged = false;
  std::vector<double> objective_history;  // accepted values, non-increasing
};

// Default design at f_target: substrate thickness lambda/13, patch width
// lambda/14, period lambda/10, silicon substrate, 0.5 eV / 0.1 ps / 300 K sheet.
Stackup synthesize_geometry(double f_target);

struct SolveOptions {
  double rel_tolerance = 1e-3;  // on |f_peak - f_target| / f_target
  int max_iterations = 100;
  FrequencyGrid grid;
  ConductivityModel model = ConductivityModel::drude;
};

// Bracketed bisection/secant root finding on f_peak(mu_c) = f_target.
// Throws SolverError when [mu_lo, mu_hi] does not bracket the target (the
// message names both endpoint peaks). Non-convergence within the iteration cap
// returns the best iterate with converged = false.
DesignSolution solve_chemical_potential(const Stackup& stackup, double f_target,
                                        double mu_lo_ev, double mu_hi_ev,
                                        const SolveOptions& options = {});

struct MatchOptions {
  double tolerance = 0.01;  // converged when |S11(f_target)| drops below this
  int max_iterations = 400;
  double initial_step = 0.10;  // relative coordinate step
  double min_step = 1e-6;
  FrequencyGrid grid;
  ConductivityModel model = ConductivityModel::drude;
  // Box bounds per free parameter; parameters without an entry get
  // [x0/4, 4 x0] around the starting point. Proposals that break geometry
  // validity (gap <= 0) are rejected regardless.
  std::map<FreeParameter, std::pair<double, double>> bounds;
};

// Derivative-free coordinate search with shrinking steps minimizing
// |S11(f_target)|^2 over 1-3 free parameters. Accepted objective values are
// non-increasing; absorption at f_target never degrades below the start.
DesignSolution match_impedance(const Stackup& stackup, double f_target,
                               const std::vector<FreeParameter>& free_parameters,
                               const MatchOptions& options = {});

}  // namespace msf
