#pragma once

#include <cstdint>
#include <stdexcept>

namespace jcurve {

// Thresholds shared by every module. Passed explicitly; there is no global
// instance.
struct TolerancePolicy {
  double join = 1e-12;   // absolute: welding arc endpoints
  double isect = 1e-12;  // absolute: coincident intersection points, tangency
  double dist = 1e-9;    // relative: distance assertions, scaled by (1 + r)
  std::uint64_t seed = 0x6a63757276ULL;  // ray directions for parity tests

  void validate() const {
    if (!(join > 0) || !(isect > 0) || !(dist > 0)) {
      throw std::invalid_argument("tolerances must be strictly positive");
    }
    if (isect > join) {
      throw std::invalid_argument("isect tolerance must not exceed join tolerance");
    }
  }

  // Distance slack for a quantity of magnitude `scale`.
  double dist_slack(double scale) const { return dist * (1.0 + scale); }
};

}  // namespace jcurve
