// Device description: patch array, substrate, ground plane, incident wave.
#pragma once

#include "msf/graphene.hpp"

namespace msf {

// Square lattice of square patches. The gap is derived so period = width + gap
// holds exactly by construction.
struct PatchArrayGeometry {
  double period = 0.0;       // m
  double patch_width = 0.0;  // m

  double gap() const { return period - patch_width; }
  void validate() const;  // throws ModelError unless 0 < patch_width < period
};

struct Substrate {
  double relative_permittivity = 11.9;
  double thickness = 0.0;  // m
  double loss_tangent = 0.0;

  void validate() const;
};

// Electrically a short circuit; thickness is recorded but not modeled.
struct GroundPlane {
  bool perfect_conductor = true;
  double thickness = 0.3e-6;  // m
};

struct Stackup {
  GrapheneSheet sheet;
  PatchArrayGeometry geometry;
  Substrate substrate;
  GroundPlane ground;

  void validate() const;
};

enum class Polarization { te, tm };

struct IncidentWave {
  double frequency = 0.0;                      // Hz
  double theta = 0.0;                          // rad, 0 <= theta < pi/2
  Polarization polarization = Polarization::te;

  void validate() const;
};

// Series equivalent of the patch grid under the Drude model.
struct RlcTriple {
  double resistance = 0.0;   // ohm
  double inductance = 0.0;   // H
  double capacitance = 0.0;  // F
};

}  // namespace msf
