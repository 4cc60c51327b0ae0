// Sweep orchestration: frequency/angle/chemical-potential sweeps, peak and
// bandwidth extraction, reconfiguration maps.
#pragma once

#include <string>
#include <vector>

#include "msf/circuit.hpp"

namespace msf {

struct FrequencyGrid {
  double f_start = 1.0e12;  // Hz
  double f_stop = 4.0e12;   // Hz
  int n_points = 601;

  void validate() const;
  double frequency_at(int i) const;
};

struct SpectrumPoint {
  double frequency = 0.0;
  Complex s11;
  double absorption = 0.0;
};

// Sampled response plus the inputs that produced it, so peaks and band edges
// can be refined on the continuous model afterwards.
struct Spectrum {
  std::vector<SpectrumPoint> points;
  Stackup stackup;
  IncidentWave wave;  // frequency field is per-point; theta/polarization apply
  ConductivityModel model = ConductivityModel::drude;
  FrequencyGrid grid;
};

// Evaluates the circuit model at every grid point. Points are independent and
// may be computed on several threads (MSF_THREADS caps the pool, 0 = auto);
// results are merged in grid order so output is bitwise identical for any
// worker count. Point-level model errors are rethrown with the offending
// frequency attached (lowest failing frequency wins).
Spectrum frequency_sweep(const Stackup& stackup, const IncidentWave& wave_template,
                         const FrequencyGrid& grid,
                         ConductivityModel model = ConductivityModel::drude);

struct PeakResult {
  bool found = false;     // false for flat spectra (max - min < 1e-12)
  bool boundary = false;  // argmax at the grid edge; no refinement applied
  double frequency = 0.0;
  double absorption = 0.0;
};

// Global absorption maximum (ties -> lowest frequency), refined by
// golden-section search on the continuous model within the bracketing cells.
PeakResult find_peak(const Spectrum& spectrum);

struct BandwidthResult {
  bool below_threshold = false;  // no grid point reaches the threshold
  double f_lo = 0.0;
  double f_hi = 0.0;
  double fractional = 0.0;  // (f_hi - f_lo) / f_center
};

// Widest contiguous interval around the peak with A >= threshold. Edges are
// refined by bisection on the continuous model unless the band touches the
// grid boundary. Requires 0 < threshold < 1.
BandwidthResult bandwidth(const Spectrum& spectrum, double threshold);

struct AngleEntry {
  double theta = 0.0;  // rad
  Spectrum spectrum;
  PeakResult peak;
};

// One spectrum per incidence angle at fixed polarization.
std::vector<AngleEntry> angle_map(const Stackup& stackup, const FrequencyGrid& grid,
                                  const std::vector<double>& angles, Polarization pol,
                                  ConductivityModel model = ConductivityModel::drude);

struct ReconfigurationEntry {
  double chemical_potential_ev = 0.0;
  double f_peak = 0.0;
  double a_peak = 0.0;
};

struct ReconfigurationMap {
  std::vector<ReconfigurationEntry> entries;
  bool monotone_increasing = true;  // strict increase of f_peak along entries
  std::string anomaly;              // first violation, if any
};

// Peak frequency and height for each chemical potential (strictly increasing,
// positive). A monotonicity violation is reported in the result, not thrown.
ReconfigurationMap reconfiguration_map(const Stackup& stackup, const FrequencyGrid& grid,
                                       const std::vector<double>& chemical_potentials_ev,
                                       ConductivityModel model = ConductivityModel::drude);

}  // namespace msf
