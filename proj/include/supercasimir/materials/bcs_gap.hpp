#pragma once

#include <cmath>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"

namespace supercasimir {

// Interpolation of the BCS gap:
//   Delta(T) = c1 kB Tc sqrt(1 - T/Tc) (c2 + c3 T/Tc)   for T < Tc, 0 otherwise.
struct GapProfile {
  double tc_K = 0.0;
  double c1 = 1.764;
  double c2 = 0.9963;
  double c3 = 0.7735;
};

inline double bcs_gap(const GapProfile& profile, double T_K) {
  if (!(T_K >= 0)) throw DomainError("bcs_gap: temperature must be >= 0");
  if (T_K >= profile.tc_K) return 0.0;
  const double t = T_K / profile.tc_K;
  return profile.c1 * PhysicalConstants::kB_eV_per_K * profile.tc_K * std::sqrt(1.0 - t) *
         (profile.c2 + profile.c3 * t);
}

inline double bcs_gap(double tc_K, double T_K) { return bcs_gap(GapProfile{tc_K}, T_K); }

inline double zero_temperature_gap(double tc_K) { return bcs_gap(tc_K, 0.0); }

}  // namespace supercasimir
