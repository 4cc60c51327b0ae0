#include "msf/stackup.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "msf/errors.hpp"

namespace msf {

void PatchArrayGeometry::validate() const {
  if (!(period > 0.0)) {
    throw ModelError("patch array: period must be positive");
  }
  if (!(patch_width > 0.0) || !(patch_width < period)) {
    throw ModelError("patch array: patch width must satisfy 0 < width < period (width = " +
                     std::to_string(patch_width) + " m, period = " +
                     std::to_string(period) + " m)");
  }
}

void Substrate::validate() const {
  if (!(relative_permittivity >= 1.0)) {
    throw ModelError("substrate: relative permittivity must be >= 1");
  }
  if (!(thickness > 0.0)) {
    throw ModelError("substrate: thickness must be positive");
  }
  if (loss_tangent < 0.0) {
    throw ModelError("substrate: loss tangent must be non-negative");
  }
}

void Stackup::validate() const {
  sheet.validate();
  geometry.validate();
  substrate.validate();
  if (!(ground.thickness > 0.0)) {
    throw ModelError("ground plane: thickness must be positive");
  }
}

void IncidentWave::validate() const {
  if (!(frequency > 0.0)) {
    throw ModelError("incident wave: frequency must be positive");
  }
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2.0)) {
    throw ModelError("incident wave: angle must lie in [0, pi/2)");
  }
}

}  // namespace msf
