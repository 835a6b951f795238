#pragma once

// Brute-force reference computations. Deliberately naive: fixed grids, plain
// textbook formulas, no caching and no adaptive control, so that agreement
// with the production engines means something.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <variant>

#include "supercasimir/constants.hpp"
#include "supercasimir/lifshitz/pressure.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"

namespace supercasimir::oracle {

/// g(xi; T) by the trapezoid rule on n points in v, eps = s sinh(v),
/// s = min(sqrt(xi Delta), Delta), up to eps = 1e6 * (largest scale). G_+ is
/// transcribed from its defining expressions (Q, A, E) in complex arithmetic.
/// Needs xi > 0; the xi -> 0+ limit is checked at a tiny xi instead.
inline double g_trapezoid(double xi, double T_K, const BcsParams& p, std::size_t n = 1'000'000) {
  using C = std::complex<double>;
  if (T_K >= p.tc_K) return 0.0;
  const double gap = bcs_gap(p.tc_K, T_K);
  const double gamma = p.drude.gamma_eV();
  const double kT = PhysicalConstants::kB_eV_per_K * T_K;
  const double s = std::min(std::sqrt(xi * gap), gap);
  const double eps_max = 1e6 * std::max({xi, gamma, gap, kT});
  const double v_max = std::asinh(eps_max / s);
  const C z(0.0, xi);
  const C ig(0.0, gamma);
  auto f = [&](double v) {
    const double eps = s * std::sinh(v);
    const double E = std::sqrt(eps * eps + gap * gap);
    // Q^2 = (E + z)^2 - Delta^2 with E^2 - Delta^2 = eps^2 used exactly; far
    // out in eps the direct difference loses every digit.
    const C q2 = C(eps * eps - xi * xi, 2.0 * E * xi);
    const C Q = std::sqrt(q2);
    const C A = E * (E + z) + gap * gap;
    const C eps2_minus_q2 = C(xi * xi, -2.0 * E * xi);
    const C G = (eps * eps * Q + (Q + ig) * A) / (Q * (eps2_minus_q2 - 2.0 * ig * Q + gamma * gamma));
    return 2.0 * G.real() / E * std::tanh(E / (2.0 * kT)) * s * std::cosh(v);
  };
  const double h = v_max / static_cast<double>(n - 1);
  double sum = 0.5 * (f(0.0) + f(v_max));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f(h * static_cast<double>(i));
  return sum * h;
}

namespace detail {

struct Layer {
  bool perfect = false;
  bool metal0 = false;     // static TM: eps = infinity
  double kappa_sq = 0.0;   // static TE: eps xi^2/c^2 limit
  double eps0 = 1.0;       // static permittivity of a dielectric
};

inline double permittivity_at(const MaterialModel& m, double xi, double T) {
  if (const auto* d = std::get_if<Drude>(&m)) {
    const auto& q = d->params;
    return q.eps0 + q.omega_p_eV * q.omega_p_eV / (xi * (xi + q.gamma0_eV / q.rrr));
  }
  if (const auto* b = std::get_if<Bcs>(&m)) {
    const auto& q = b->params.drude;
    const double w2 = q.omega_p_eV * q.omega_p_eV;
    const double g = g_function(xi, T, b->params);
    return q.eps0 + w2 / (xi * (xi + q.gamma0_eV / q.rrr)) + w2 * g / (xi * xi);
  }
  if (const auto* t = std::get_if<TwoFluid>(&m)) {
    const auto& q = t->params.drude;
    const double w2 = q.omega_p_eV * q.omega_p_eV;
    const double r = T / t->params.tc_K;
    const double ns = T < t->params.tc_K ? 1.0 - r * r * r * r : 0.0;
    return q.eps0 + (1.0 - ns) * w2 / (xi * (xi + q.gamma0_eV / q.rrr)) + ns * w2 / (xi * xi);
  }
  if (const auto* c = std::get_if<ConstantDielectric>(&m)) return c->eps;
  return 1.0;
}

inline Layer static_layer(const MaterialModel& m, double T) {
  Layer l;
  const double hc = PhysicalConstants::hbar_c_eV_nm;
  if (std::holds_alternative<PerfectConductor>(m)) {
    l.perfect = true;
    l.metal0 = true;
  } else if (const auto* c = std::get_if<ConstantDielectric>(&m)) {
    l.eps0 = c->eps;
  } else if (std::holds_alternative<Drude>(m)) {
    l.metal0 = true;
  } else if (const auto* b = std::get_if<Bcs>(&m)) {
    l.metal0 = true;
    l.kappa_sq = b->params.drude.omega_p_eV * b->params.drude.omega_p_eV *
                 g_function(0.0, T, b->params) / (hc * hc);
  } else if (const auto* t = std::get_if<TwoFluid>(&m)) {
    l.metal0 = true;
    const double r = T / t->params.tc_K;
    const double ns = T < t->params.tc_K ? 1.0 - r * r * r * r : 0.0;
    l.kappa_sq = t->params.drude.omega_p_eV * t->params.drude.omega_p_eV * ns / (hc * hc);
  }
  return l;
}

// r_TE = (q - s)/(q + s), r_TM = (eps_j q - eps_i s)/(eps_j q + eps_i s) for a
// wave in medium i (wavenumber q) meeting medium j (wavenumber s).
inline double rte(double qi, double qj) { return (qi - qj) / (qi + qj); }
inline double rtm(double ei, double qi, double ej, double qj) {
  return (ej * qi - ei * qj) / (ej * qi + ei * qj);
}
inline double compose(double r01, double r12, double w, double K1) {
  const double x = std::exp(-2.0 * w * K1);
  return (r01 + r12 * x) / (1.0 + r01 * r12 * x);
}

// One mirror at one Matsubara frequency; permittivities are looked up once.
struct MirrorAt {
  bool perfect = false;
  bool film = false;
  bool is_static = false;
  double w = 0.0;
  double e1 = 1.0, e2 = 1.0;  // xi > 0
  Layer s1, s2;               // xi = 0

  MirrorAt(const Mirror& mirror, double xi, double T) {
    film = std::holds_alternative<Film>(mirror);
    const MaterialModel& top = film ? std::get<Film>(mirror).film : std::get<HalfSpace>(mirror).material;
    perfect = std::holds_alternative<PerfectConductor>(top);
    if (perfect) return;
    is_static = xi == 0.0;
    if (film) w = std::get<Film>(mirror).thickness_nm;
    if (is_static) {
      s1 = static_layer(top, T);
      if (film) s2 = static_layer(std::get<Film>(mirror).substrate, T);
    } else {
      e1 = permittivity_at(top, xi, T);
      if (film) e2 = permittivity_at(std::get<Film>(mirror).substrate, xi, T);
    }
  }

  // {r_TE, r_TM}
  std::pair<double, double> reflection(double K0sq, double k2) const {
    if (perfect) return {-1.0, 1.0};
    const double q = std::sqrt(K0sq + k2);
    if (is_static) {
      const double K1 = std::sqrt(s1.kappa_sq + k2);
      double te = rte(q, K1);
      double tm = s1.metal0 ? 1.0 : rtm(1.0, q, s1.eps0, q);
      if (film) {
        const double K2 = std::sqrt(s2.kappa_sq + k2);
        const double te12 = s2.perfect ? -1.0 : rte(K1, K2);
        double tm12;
        if (s1.metal0) tm12 = 0.0;
        else if (s2.metal0) tm12 = 1.0;
        else tm12 = rtm(s1.eps0, q, s2.eps0, q);
        te = compose(te, te12, w, K1);
        tm = compose(tm, tm12, w, K1);
      }
      return {te, tm};
    }
    const double q1 = std::sqrt(e1 * K0sq + k2);
    double te = rte(q, q1);
    double tm = rtm(1.0, q, e1, q1);
    if (film) {
      const double q2 = std::sqrt(e2 * K0sq + k2);
      te = compose(te, rte(q1, q2), w, q1);
      tm = compose(tm, rtm(e1, q1, e2, q2), w, q1);
    }
    return {te, tm};
  }
};

}  // namespace detail

/// Lifshitz pressure by composite Simpson on a fixed y grid of n points over
/// [y_l, y_l + 60] for every l up to the first with y_l > 60, summed naively.
inline double pressure_brute_force(const CavityConfig& c, std::size_t n = 100'001) {
  if (n % 2 == 0) ++n;
  const double a = c.gap_nm;
  const double T = c.temperature_K;
  const double kT = PhysicalConstants::kB_eV_per_K * T;
  const double hc = PhysicalConstants::hbar_c_eV_nm;
  constexpr double kSpan = 60.0;
  double total = 0.0;
  for (long l = 0;; ++l) {
    const double xi = 2.0 * PhysicalConstants::pi * static_cast<double>(l) * kT;
    const double yl = 2.0 * a * xi / hc;
    if (yl > kSpan) break;
    const double K0sq = (xi / hc) * (xi / hc);
    const detail::MirrorAt m1(c.mirror1, xi, T);
    const detail::MirrorAt m2(c.mirror2, xi, T);
    const double h = kSpan / static_cast<double>(n - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = yl + h * static_cast<double>(i);
      if (y == 0.0) continue;  // y^2 factor
      const double k2 = std::max(0.0, y * y - yl * yl) / (4.0 * a * a);
      const auto [te1, tm1] = m1.reflection(K0sq, k2);
      const auto [te2, tm2] = m2.reflection(K0sq, k2);
      double f = 0.0;
      for (double rr : {te1 * te2, tm1 * tm2}) {
        if (rr != 0.0) f += 1.0 / (std::exp(y) / rr - 1.0);
      }
      f *= y * y;
      const double w = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sum += w * f;
    }
    sum *= h / 3.0;
    total += (l == 0 ? 0.5 : 1.0) * sum;
  }
  return -kT / (8.0 * PhysicalConstants::pi * a * a * a) * total * PhysicalConstants::pascal_per_eV_nm3;
}

/// Ideal-mirror zero-temperature pressure -pi^2 hbar c / (240 a^4), in Pa.
inline double ideal_casimir_pressure(double a_nm) {
  const double pi = PhysicalConstants::pi;
  return -pi * pi * PhysicalConstants::hbar_c_eV_nm / (240.0 * std::pow(a_nm, 4)) *
         PhysicalConstants::pascal_per_eV_nm3;
}

}  // namespace supercasimir::oracle
