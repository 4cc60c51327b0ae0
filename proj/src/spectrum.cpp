#include "msf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "msf/errors.hpp"

namespace msf {

namespace {

int thread_cap() {
  int cap = 0;  // 0 = auto
  if (const char* env = std::getenv("MSF_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 0) cap = static_cast<int>(parsed);
  }
  if (cap == 0) {
    cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
  }
  return cap;
}

// Runs fn(i) for i in [0, n). Results must land in pre-sized slots keyed by i,
// which keeps the output independent of the worker count. The lowest failing
// index determines the reported error.
template <typename Fn>
void parallel_for_indexed(int n, Fn&& fn) {
  const int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::pair<int, std::exception_ptr>> failures(workers, {n, nullptr});
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
      const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
      for (int i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          failures[w] = {i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto worst = std::min_element(
      failures.begin(), failures.end(),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (worst->second) std::rethrow_exception(worst->second);
}

double continuous_absorption(const Spectrum& spectrum, double frequency) {
  IncidentWave wave = spectrum.wave;
  wave.frequency = frequency;
  return absorption(spectrum.stackup, wave, spectrum.model);
}

// Golden-section maximization of a unimodal objective on [a, b].
template <typename Fn>
double golden_section_max(Fn&& objective, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void FrequencyGrid::validate() const {
  if (!(f_start > 0.0) || !(f_start < f_stop)) {
    throw ModelError("frequency grid: need 0 < f_start < f_stop");
  }
  if (n_points < 2) {
    throw ModelError("frequency grid: need at least 2 points");
  }
}

double FrequencyGrid::frequency_at(int i) const {
  if (i == n_points - 1) return f_stop;
  return f_start + (f_stop - f_start) * i / (n_points - 1);
}

Spectrum frequency_sweep(const Stackup& stackup, const IncidentWave& wave_template,
                         const FrequencyGrid& grid, ConductivityModel model) {
  stackup.validate();
  grid.validate();

  Spectrum spectrum;
  spectrum.stackup = stackup;
  spectrum.wave = wave_template;
  spectrum.model = model;
  spectrum.grid = grid;
  spectrum.points.resize(grid.n_points);

  try {
    parallel_for_indexed(grid.n_points, [&](int i) {
      const double f = grid.frequency_at(i);
      IncidentWave wave = wave_template;
      wave.frequency = f;
      const Complex s11 = reflection_coefficient(stackup, wave, model);
      spectrum.points[i] = {f, s11, 1.0 - std::norm(s11)};
    });
  } catch (const ModelError& e) {
    throw ModelError(std::string(e.what()) + " [during frequency sweep]");
  }
  return spectrum;
}

PeakResult find_peak(const Spectrum& spectrum) {
  if (spectrum.points.empty()) {
    throw ModelError("find_peak: empty spectrum");
  }
  const auto& pts = spectrum.points;
  int argmax = 0;
  double a_min = pts[0].absorption;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i].absorption > pts[argmax].absorption) argmax = i;
    a_min = std::min(a_min, pts[i].absorption);
  }
  if (pts[argmax].absorption - a_min < 1e-12) {
    return {};  // flat: no peak
  }
  if (argmax == 0 || argmax + 1 == static_cast<int>(pts.size())) {
    return {true, true, pts[argmax].frequency, pts[argmax].absorption};
  }

  const double f_lo = pts[argmax - 1].frequency;
  const double f_hi = pts[argmax + 1].frequency;
  const double tol = 1e-4 * pts[argmax].frequency;
  const double f_refined = golden_section_max(
      [&](double f) { return continuous_absorption(spectrum, f); }, f_lo, f_hi, tol);
  const double a_refined = continuous_absorption(spectrum, f_refined);
  if (a_refined >= pts[argmax].absorption) {
    return {true, false, f_refined, a_refined};
  }
  return {true, false, pts[argmax].frequency, pts[argmax].absorption};
}

BandwidthResult bandwidth(const Spectrum& spectrum, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw ModelError("bandwidth: threshold must lie in (0, 1)");
  }
  const auto& pts = spectrum.points;
  if (pts.empty()) {
    throw ModelError("bandwidth: empty spectrum");
  }
  int argmax = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i].absorption > pts[argmax].absorption) argmax = i;
  }
  if (pts[argmax].absorption < threshold) {
    return {true, 0.0, 0.0, 0.0};
  }

  int lo = argmax;
  while (lo > 0 && pts[lo - 1].absorption >= threshold) --lo;
  int hi = argmax;
  while (hi + 1 < static_cast<int>(pts.size()) && pts[hi + 1].absorption >= threshold) ++hi;

  // Bisect the threshold crossing between the last point inside the band and
  // its outside neighbour; band edges on the grid boundary stay there.
  const auto refine_edge = [&](double inside, double outside) {
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (inside + outside);
      if (continuous_absorption(spectrum, mid) >= threshold) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return inside;
  };

  const double f_lo =
      lo > 0 ? refine_edge(pts[lo].frequency, pts[lo - 1].frequency) : pts.front().frequency;
  const double f_hi = hi + 1 < static_cast<int>(pts.size())
                          ? refine_edge(pts[hi].frequency, pts[hi + 1].frequency)
                          : pts.back().frequency;
  const double f_center = 0.5 * (f_lo + f_hi);
  return {false, f_lo, f_hi, (f_hi - f_lo) / f_center};
}

std::vector<AngleEntry> angle_map(const Stackup& stackup, const FrequencyGrid& grid,
                                  const std::vector<double>& angles, Polarization pol,
                                  ConductivityModel model) {
  std::vector<AngleEntry> entries;
  entries.reserve(angles.size());
  for (double theta : angles) {
    IncidentWave wave;
    wave.frequency = grid.f_start;
    wave.theta = theta;
    wave.polarization = pol;
    AngleEntry entry;
    entry.theta = theta;
    entry.spectrum = frequency_sweep(stackup, wave, grid, model);
    entry.peak = find_peak(entry.spectrum);
    entries.push_back(std::move(entry));
  }
  return entries;
}

ReconfigurationMap reconfiguration_map(const Stackup& stackup, const FrequencyGrid& grid,
                                       const std::vector<double>& chemical_potentials_ev,
                                       ConductivityModel model) {
  if (chemical_potentials_ev.empty()) {
    throw ModelError("reconfiguration map: no chemical potentials given");
  }
  for (std::size_t i = 0; i < chemical_potentials_ev.size(); ++i) {
    if (!(chemical_potentials_ev[i] > 0.0)) {
      throw ModelError("reconfiguration map: chemical potentials must be positive");
    }
    if (i > 0 && !(chemical_potentials_ev[i] > chemical_potentials_ev[i - 1])) {
      throw ModelError("reconfiguration map: chemical potentials must be strictly increasing");
    }
  }

  ReconfigurationMap map;
  for (double mu : chemical_potentials_ev) {
    Stackup tuned = stackup;
    tuned.sheet.chemical_potential_ev = mu;
    IncidentWave wave;
    wave.frequency = grid.f_start;
    const Spectrum spectrum = frequency_sweep(tuned, wave, grid, model);
    const PeakResult peak = find_peak(spectrum);
    if (!peak.found) {
      throw ModelError("reconfiguration map: flat spectrum at mu_c = " +
                       std::to_string(mu) + " eV");
    }
    if (!map.entries.empty() && peak.frequency <= map.entries.back().f_peak) {
      map.monotone_increasing = false;
      if (map.anomaly.empty()) {
        map.anomaly = "f_peak not strictly increasing between mu_c = " +
                      std::to_string(map.entries.back().chemical_potential_ev) +
                      " eV and mu_c = " + std::to_string(mu) + " eV";
      }
    }
    map.entries.push_back({mu, peak.frequency, peak.absorption});
  }
  return map;
}

}  // namespace msf
