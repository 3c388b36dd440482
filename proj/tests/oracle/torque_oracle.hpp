#pragma once

// Independent stability oracle for tests. For each interface it recomputes
// the supporting edges directly from raw body extents and sums the gravity
// torque of the supported bodies about each edge. It deliberately shares no
// code with the library's center-of-mass and support-region routines.

#include <algorithm>
#include <vector>

namespace stacklab::oracle {

struct RawBody {
  double size[3];    // width, depth, height
  double center[3];  // x, y, z
  double density;
};

// Stable iff at every interface and horizontal axis the supported set's
// gravity torque tips it toward the inside of both support edges.
inline bool torque_stable(const std::vector<RawBody>& bodies, int horizontal_axes) {
  const std::size_t n = bodies.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (int axis = 0; axis < horizontal_axes; ++axis) {
      double lo = bodies[k].center[axis] - 0.5 * bodies[k].size[axis];
      double hi = bodies[k].center[axis] + 0.5 * bodies[k].size[axis];
      if (k > 0) {
        lo = std::max(lo, bodies[k - 1].center[axis] - 0.5 * bodies[k - 1].size[axis]);
        hi = std::min(hi, bodies[k - 1].center[axis] + 0.5 * bodies[k - 1].size[axis]);
      }
      // Torque (per unit g) about each edge; positive = restoring.
      double about_lo = 0.0;
      double about_hi = 0.0;
      for (std::size_t i = k; i < n; ++i) {
        const auto& b = bodies[i];
        const double mass = b.density * b.size[0] * b.size[1] * b.size[2];
        about_lo += mass * (b.center[axis] - lo);
        about_hi += mass * (hi - b.center[axis]);
      }
      if (about_lo < 0.0 || about_hi < 0.0) return false;
    }
  }
  return true;
}

}  // namespace stacklab::oracle
