#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/material_model.hpp"
#include "supercasimir/numerics/quadrature.hpp"

namespace supercasimir {

struct GOptions {
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  std::size_t max_subdivisions = 4000;
};

namespace detail {

// Re G_+(z = i xi, eps) with Q_+ on the principal branch. All energies in eV.
// The combinations below are expanded so that no E^2 - Delta^2 difference is
// ever formed: (E + i xi)^2 - Delta^2 = eps^2 - xi^2 + 2 i xi E and
// eps^2 - (Q + i gamma)^2 = xi^2 + gamma^2 - 2 i xi E - 2 i gamma Q.
inline double re_g_plus(double eps, double E, double xi, double gap, double gamma) {
  using C = std::complex<double>;
  const C q = std::sqrt(C(eps * eps - xi * xi, 2.0 * xi * E));
  const C a(E * E + gap * gap, E * xi);
  const C d = C(xi * xi + gamma * gamma, -2.0 * xi * E) - C(0.0, 2.0 * gamma) * q;
  const C numerator = eps * eps * q + (q + C(0.0, gamma)) * a;
  return std::real(numerator / (q * d));
}

// Real part of G_+ at xi = 0 for eps != 0, where Q_+ = |eps|.
inline double re_g_plus_static(double eps, double gap, double gamma) {
  return -2.0 * gap * gap / (gamma * gamma + 4.0 * eps * eps);
}

inline double thermal_factor(double E, double kT) {
  return kT > 0 ? std::tanh(E / (2.0 * kT)) : 1.0;
}

}  // namespace detail

/// g(xi; T) of the Mattis-Bardeen conductivity continued to imaginary
/// frequency, for photon energy xi_eV = hbar*xi.
///
/// The even integrand is integrated over eps in [0, inf) and doubled, after
/// the substitution eps = s sinh(v) with s = min(sqrt(xi Delta), Delta); the
/// sqrt(xi Delta) scale resolves the peak of width ~sqrt(xi Delta) around
/// eps = 0 that develops as xi -> 0. Beyond eps_max = 1e3 * (largest energy
/// scale) Re G_+ ~ -C/eps^2 and the remaining tail is added in closed form.
///
/// At xi = 0 the value returned is the limit xi -> 0+. In that limit the
/// peak collapses onto eps = 0 and contributes (pi Delta/gamma) tanh(Delta/2kT)
/// exactly (integral of Re[i/sqrt(t^2 + i)] over the real line is pi/2);
/// the remainder is the regular xi = 0 integrand -2 Delta^2/(gamma^2+4 eps^2).
inline numerics::QuadResult g_function_detailed(double xi_eV, double T_K, const BcsParams& params,
                                                const GOptions& options = {}) {
  if (!(xi_eV >= 0)) throw DomainError("g_function: xi must be >= 0");
  if (!(T_K >= 0)) throw DomainError("g_function: temperature must be >= 0");
  if (T_K >= params.tc_K) return {0.0, 0.0, 0};
  const double gap = bcs_gap(params.tc_K, T_K);
  if (gap == 0.0) return {0.0, 0.0, 0};
  const double gamma = params.drude.gamma_eV();
  const double kT = PhysicalConstants::kB_eV_per_K * T_K;
  const bool static_limit = (xi_eV == 0.0);

  const double scale = static_limit ? gap : std::min(std::sqrt(xi_eV * gap), gap);
  const double eps_max = 1e3 * std::max({xi_eV, gamma, gap, kT});
  const double v_max = std::asinh(eps_max / scale);

  // Integrand per unit eps, already doubled for the negative-eps half.
  auto per_eps = [&](double eps) {
    const double E = std::hypot(eps, gap);
    const double re_g = static_limit ? detail::re_g_plus_static(eps, gap, gamma)
                                     : detail::re_g_plus(eps, E, xi_eV, gap, gamma);
    return 2.0 * re_g / E * detail::thermal_factor(E, kT);
  };
  auto per_v = [&](double v) { return per_eps(scale * std::sinh(v)) * scale * std::cosh(v); };

  std::vector<double> breaks;
  for (double v = 0.0; v < v_max; v += 1.0) breaks.push_back(v);
  breaks.push_back(v_max);

  numerics::QuadOptions quad;
  quad.tol_abs = options.tol_abs;
  quad.tol_rel = options.tol_rel;
  quad.max_subdivisions = options.max_subdivisions;
  numerics::QuadResult body = numerics::integrate(per_v, breaks, quad);

  const double tail = 0.5 * per_eps(eps_max) * eps_max;
  body.value += tail;
  body.error_bound += 1e-2 * std::abs(tail);
  body.evaluations += 1;
  if (static_limit) {
    body.value += PhysicalConstants::pi * gap / gamma * detail::thermal_factor(gap, kT);
  }
  return body;
}

inline double g_function(double xi_eV, double T_K, const BcsParams& params,
                         const GOptions& options = {}) {
  return g_function_detailed(xi_eV, T_K, params, options).value;
}

}  // namespace supercasimir
