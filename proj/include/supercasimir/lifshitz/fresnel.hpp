#pragma once

#include <cmath>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"

namespace supercasimir {

enum class Polarization { TE, TM };

namespace detail {

// Reflection at the planar interface from medium i into medium j on the
// imaginary frequency axis. K0sq = (xi/c)^2 and k2 = k_perp^2, both in nm^-2.
// Written in difference-free form: with K_m = sqrt(eps_m K0^2 + k^2),
//   TE: (K_i - K_j)/(K_i + K_j) = (eps_i - eps_j) K0^2 / (K_i + K_j)^2
//   TM: (eps_j K_i - eps_i K_j)/(eps_j K_i + eps_i K_j)
//       = (eps_j - eps_i)(eps_i eps_j K0^2 + (eps_i + eps_j) k^2) / (eps_j K_i + eps_i K_j)^2
inline double interface_reflection(double eps_i, double eps_j, double K0sq, double k2,
                                   Polarization pol) {
  const double Ki = std::sqrt(eps_i * K0sq + k2);
  const double Kj = std::sqrt(eps_j * K0sq + k2);
  if (pol == Polarization::TE) {
    const double sum = Ki + Kj;
    if (sum == 0.0) return 0.0;
    return (eps_i - eps_j) * K0sq / (sum * sum);
  }
  const double denominator = eps_j * Ki + eps_i * Kj;
  if (denominator == 0.0) return 0.0;
  return (eps_j - eps_i) * (eps_i * eps_j * K0sq + (eps_i + eps_j) * k2) /
         (denominator * denominator);
}

}  // namespace detail

/// Fresnel coefficient of a vacuum / half-space(eps) interface at imaginary
/// frequency xi_eV (photon energy) and in-plane wavenumber k_perp (1/nm).
/// Real; TM in [0, 1] and TE in (-1, 0] for eps >= 1.
inline double fresnel(double eps, double xi_eV, double k_perp_per_nm, Polarization pol) {
  if (!(eps >= 1.0)) throw DomainError("fresnel: eps must be >= 1");
  const double K0 = xi_eV / PhysicalConstants::hbar_c_eV_nm;
  if (K0 == 0.0 && k_perp_per_nm == 0.0) throw DomainError("fresnel: xi and k_perp both zero");
  return detail::interface_reflection(1.0, eps, K0 * K0, k_perp_per_nm * k_perp_per_nm, pol);
}

}  // namespace supercasimir
