#include "msf/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msf/constants.hpp"
#include "msf/errors.hpp"

namespace msf {

namespace {

double get_parameter(const Stackup& stackup, FreeParameter p) {
  switch (p) {
    case FreeParameter::chemical_potential: return stackup.sheet.chemical_potential_ev;
    case FreeParameter::patch_width: return stackup.geometry.patch_width;
    case FreeParameter::period: return stackup.geometry.period;
    case FreeParameter::substrate_thickness: return stackup.substrate.thickness;
  }
  throw ModelError("unknown free parameter");
}

void set_parameter(Stackup& stackup, FreeParameter p, double value) {
  switch (p) {
    case FreeParameter::chemical_potential:
      stackup.sheet.chemical_potential_ev = value;
      return;
    case FreeParameter::patch_width: stackup.geometry.patch_width = value; return;
    case FreeParameter::period: stackup.geometry.period = value; return;
    case FreeParameter::substrate_thickness: stackup.substrate.thickness = value; return;
  }
  throw ModelError("unknown free parameter");
}

bool geometry_valid(const Stackup& stackup) {
  return stackup.geometry.period > 0.0 && stackup.geometry.patch_width > 0.0 &&
         stackup.geometry.patch_width < stackup.geometry.period &&
         stackup.substrate.thickness > 0.0 &&
         stackup.sheet.chemical_potential_ev > 0.0;
}

struct PeakProbe {
  const Stackup& base;
  const SolveOptions& options;
  int evaluations = 0;

  PeakResult operator()(double mu_ev) {
    ++evaluations;
    Stackup tuned = base;
    tuned.sheet.chemical_potential_ev = mu_ev;
    IncidentWave wave;
    wave.frequency = options.grid.f_start;
    const Spectrum spectrum = frequency_sweep(tuned, wave, options.grid, options.model);
    const PeakResult peak = find_peak(spectrum);
    if (!peak.found) {
      throw SolverError("peak search: flat spectrum at mu_c = " + std::to_string(mu_ev) +
                        " eV");
    }
    return peak;
  }
};

double residual_at(const Stackup& stackup, double f_target, ConductivityModel model) {
  IncidentWave wave;
  wave.frequency = f_target;
  return std::abs(reflection_coefficient(stackup, wave, model));
}

DesignSolution finish_solution(Stackup stackup, double f_target,
                               const FrequencyGrid& grid, ConductivityModel model,
                               int iterations, bool converged,
                               std::vector<double> history = {}) {
  IncidentWave wave;
  wave.frequency = grid.f_start;
  const Spectrum spectrum = frequency_sweep(stackup, wave, grid, model);
  const PeakResult peak = find_peak(spectrum);
  DesignSolution solution;
  solution.stackup = std::move(stackup);
  solution.achieved_f_peak = peak.frequency;
  solution.achieved_a_peak = peak.absorption;
  solution.residual = residual_at(solution.stackup, f_target, model);
  solution.iterations = iterations;
  solution.converged = converged;
  solution.objective_history = std::move(history);
  return solution;
}

}  // namespace

void DesignTarget::validate() const {
  if (!(f_target > 0.0)) {
    throw ModelError("design target: frequency must be positive");
  }
  if (!(min_absorption > 0.0) || !(min_absorption <= 1.0)) {
    throw ModelError("design target: min absorption must lie in (0, 1]");
  }
  if (free_parameters.empty()) {
    throw ModelError("design target: at least one free parameter required");
  }
}

Stackup synthesize_geometry(double f_target) {
  if (!(f_target > 0.0)) {
    throw ModelError("synthesize_geometry: frequency must be positive");
  }
  const double wavelength = constants::light_speed / f_target;
  Stackup stackup;
  stackup.sheet = GrapheneSheet{};
  stackup.geometry.period = wavelength / 10.0;
  stackup.geometry.patch_width = wavelength / 14.0;
  stackup.substrate.relative_permittivity = 11.9;
  stackup.substrate.thickness = wavelength / 13.0;
  stackup.substrate.loss_tangent = 0.0;
  stackup.ground = GroundPlane{};
  stackup.validate();
  return stackup;
}

DesignSolution solve_chemical_potential(const Stackup& stackup, double f_target,
                                        double mu_lo_ev, double mu_hi_ev,
                                        const SolveOptions& options) {
  if (!(f_target > 0.0)) {
    throw SolverError("solve_chemical_potential: target frequency must be positive");
  }
  if (!(mu_lo_ev > 0.0) || !(mu_lo_ev < mu_hi_ev)) {
    throw SolverError("solve_chemical_potential: need 0 < mu_lo < mu_hi");
  }
  options.grid.validate();

  PeakProbe probe{stackup, options};
  const double tol = options.rel_tolerance * f_target;

  double a = mu_lo_ev;
  double ga = probe(a).frequency - f_target;
  if (std::abs(ga) < tol) {
    Stackup solved = stackup;
    solved.sheet.chemical_potential_ev = a;
    return finish_solution(std::move(solved), f_target, options.grid, options.model,
                           probe.evaluations, true);
  }
  double b = mu_hi_ev;
  double gb = probe(b).frequency - f_target;
  if (std::abs(gb) < tol) {
    Stackup solved = stackup;
    solved.sheet.chemical_potential_ev = b;
    return finish_solution(std::move(solved), f_target, options.grid, options.model,
                           probe.evaluations, true);
  }
  if (ga * gb > 0.0) {
    throw SolverError(
        "solve_chemical_potential: target " + std::to_string(f_target) +
        " Hz not bracketed; f_peak(" + std::to_string(mu_lo_ev) + " eV) = " +
        std::to_string(f_target + ga) + " Hz, f_peak(" + std::to_string(mu_hi_ev) +
        " eV) = " + std::to_string(f_target + gb) + " Hz");
  }

  double best_mu = std::abs(ga) < std::abs(gb) ? a : b;
  double best_g = std::min(std::abs(ga), std::abs(gb));
  bool converged = false;

  while (probe.evaluations < options.max_iterations) {
    // Secant proposal, safeguarded by bisection when it leaves the bracket.
    double mu = b - gb * (b - a) / (gb - ga);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double margin = 0.01 * (hi - lo);
    if (!std::isfinite(mu) || mu <= lo + margin || mu >= hi - margin) {
      mu = 0.5 * (a + b);
    }
    const double g = probe(mu).frequency - f_target;
    if (std::abs(g) < best_g) {
      best_g = std::abs(g);
      best_mu = mu;
    }
    if (std::abs(g) < tol) {
      converged = true;
      break;
    }
    if (ga * g <= 0.0) {
      b = mu;
      gb = g;
    } else {
      a = mu;
      ga = g;
    }
  }

  Stackup solved = stackup;
  solved.sheet.chemical_potential_ev = best_mu;
  return finish_solution(std::move(solved), f_target, options.grid, options.model,
                         probe.evaluations, converged);
}

DesignSolution match_impedance(const Stackup& stackup, double f_target,
                               const std::vector<FreeParameter>& free_parameters,
                               const MatchOptions& options) {
  if (free_parameters.empty() || free_parameters.size() > 3) {
    throw SolverError("match_impedance: need 1 to 3 free parameters");
  }
  if (!(f_target > 0.0)) {
    throw SolverError("match_impedance: target frequency must be positive");
  }
  stackup.validate();

  std::map<FreeParameter, std::pair<double, double>> bounds = options.bounds;
  for (FreeParameter p : free_parameters) {
    if (!bounds.contains(p)) {
      const double x0 = get_parameter(stackup, p);
      bounds[p] = {x0 / 4.0, x0 * 4.0};
    }
  }

  Stackup current = stackup;
  int evaluations = 1;
  double objective = residual_at(current, f_target, options.model);
  std::vector<double> history{objective};

  double step = options.initial_step;
  while (objective >= options.tolerance && step >= options.min_step &&
         evaluations < options.max_iterations) {
    bool improved = false;
    for (FreeParameter p : free_parameters) {
      for (double direction : {+1.0, -1.0}) {
        const double x = get_parameter(current, p);
        const double proposal =
            std::clamp(x * (1.0 + direction * step), bounds[p].first, bounds[p].second);
        if (proposal == x) continue;
        Stackup candidate = current;
        set_parameter(candidate, p, proposal);
        if (!geometry_valid(candidate)) continue;
        ++evaluations;
        const double value = residual_at(candidate, f_target, options.model);
        if (value < objective) {
          current = std::move(candidate);
          objective = value;
          history.push_back(value);
          improved = true;
          break;
        }
        if (evaluations >= options.max_iterations) break;
      }
      if (improved || evaluations >= options.max_iterations) break;
    }
    if (!improved) step *= 0.5;
  }

  DesignSolution solution =
      finish_solution(std::move(current), f_target, options.grid, options.model,
                      evaluations, objective < options.tolerance, std::move(history));
  solution.residual = objective;
  return solution;
}

}  // namespace msf
