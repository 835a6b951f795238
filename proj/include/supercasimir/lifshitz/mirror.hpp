#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"
#include "supercasimir/lifshitz/fresnel.hpp"
#include "supercasimir/materials/material_model.hpp"
#include "supercasimir/materials/permittivity.hpp"

namespace supercasimir {

struct HalfSpace {
  MaterialModel material;
};

// A film of thickness w on a semi-infinite substrate; a Vacuum substrate is a
// free-standing film.
struct Film {
  MaterialModel film;
  double thickness_nm = 0.0;
  MaterialModel substrate = Vacuum{};
};

using Mirror = std::variant<HalfSpace, Film>;

inline void validate(const Mirror& mirror) {
  if (const auto* h = std::get_if<HalfSpace>(&mirror)) {
    validate(h->material);
    return;
  }
  const auto& f = std::get<Film>(mirror);
  validate(f.film);
  validate(f.substrate);
  if (!(f.thickness_nm > 0)) throw DomainError("film thickness must be > 0");
  if (std::holds_alternative<PerfectConductor>(f.film) ||
      std::holds_alternative<PerfectConductor>(f.substrate)) {
    throw DomainError("a perfect conductor is only allowed as a half-space");
  }
}

inline std::vector<const MaterialModel*> materials_of(const Mirror& mirror) {
  if (const auto* h = std::get_if<HalfSpace>(&mirror)) return {&h->material};
  const auto& f = std::get<Film>(mirror);
  return {&f.film, &f.substrate};
}

template <class Fn>
Mirror transform_materials(const Mirror& mirror, Fn&& fn) {
  if (const auto* h = std::get_if<HalfSpace>(&mirror)) return HalfSpace{fn(h->material)};
  const auto& f = std::get<Film>(mirror);
  return Film{fn(f.film), f.thickness_nm, fn(f.substrate)};
}

inline std::string describe(const Mirror& mirror) {
  if (const auto* h = std::get_if<HalfSpace>(&mirror)) return describe(h->material);
  const auto& f = std::get<Film>(mirror);
  return "film(" + describe(f.film) + " w_nm=" + detail::exact(f.thickness_nm) +
         " on " + describe(f.substrate) + ")";
}

namespace detail {

inline double compose_film(double r01, double r12, double thickness_nm, double K1) {
  const double x = std::exp(-2.0 * thickness_nm * K1);
  return (r01 + r12 * x) / (1.0 + r01 * r12 * x);
}

// Permittivities of a mirror's layers at one Matsubara frequency.
struct LayerStackAt {
  bool perfect = false;
  bool film = false;
  double eps_top = 1.0;
  double eps_sub = 1.0;
  double thickness_nm = 0.0;

  // The film composition is rewritten with admittances Z = K (TE), K/eps (TM):
  //   r = ((1-x) r01 + x c r02) / ((1-x) + x c),  x = e^{-2wK1},
  //   c = 2 Z1 (Z0 + Z2) / ((Z0 + Z1)(Z1 + Z2)) in (0, 1].
  // Same value as the Airy form, but 1 + r01 r12 x never cancels when both
  // interfaces reflect almost perfectly.
  double reflection(double K0sq, double k2, Polarization pol) const {
    if (perfect) return pol == Polarization::TM ? 1.0 : -1.0;
    const double r01 = interface_reflection(1.0, eps_top, K0sq, k2, pol);
    if (!film) return r01;
    const double r02 = interface_reflection(1.0, eps_sub, K0sq, k2, pol);
    const double K1 = std::sqrt(eps_top * K0sq + k2);
    double Z0 = std::sqrt(K0sq + k2), Z1 = K1, Z2 = std::sqrt(eps_sub * K0sq + k2);
    if (pol == Polarization::TM) {
      Z1 /= eps_top;
      Z2 /= eps_sub;
    }
    const double c = 2.0 * Z1 * (Z0 + Z2) / ((Z0 + Z1) * (Z1 + Z2));
    const double x = std::exp(-2.0 * thickness_nm * K1);
    const double one_minus_x = -std::expm1(-2.0 * thickness_nm * K1);
    return (one_minus_x * r01 + x * c * r02) / (one_minus_x + x * c);
  }
};

// Static (xi -> 0) description of one medium. TM sees metals as eps = inf;
// TE sees eps xi^2/c^2 -> kappa^2, nonzero only for superfluid response.
struct StaticMedium {
  bool metallic = false;
  bool perfect = false;
  double eps = 1.0;
  double kappa_sq = 0.0;  // nm^-2
};

inline StaticMedium static_medium(const ZeroFrequencyBehavior& behavior) {
  return std::visit(
      [](const auto& b) -> StaticMedium {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, TeVanishing>) {
          return {true, false, 1.0, 0.0};
        } else if constexpr (std::is_same_v<T, PlasmaLike>) {
          if (std::isinf(b.plasma_eV)) return {true, true, 1.0, 0.0};
          const double kappa = b.plasma_eV / PhysicalConstants::hbar_c_eV_nm;
          return {true, false, 1.0, kappa * kappa};
        } else {
          return {false, false, b.eps, 0.0};
        }
      },
      behavior);
}

inline double static_interface(const StaticMedium& i, const StaticMedium& j, double k2,
                               Polarization pol) {
  if (pol == Polarization::TE) {
    if (j.perfect) return -1.0;
    const double Ki = std::sqrt(i.kappa_sq + k2);
    const double Kj = std::sqrt(j.kappa_sq + k2);
    const double sum = Ki + Kj;
    if (sum == 0.0) return 0.0;
    return (i.kappa_sq - j.kappa_sq) / (sum * sum);
  }
  // Metal/metal never decides the result: a metallic top layer already gives
  // r01 = 1, and then the film composition is 1 whatever r12 is.
  if (i.metallic && j.metallic) return 0.0;
  if (j.metallic) return 1.0;
  if (i.metallic) return -1.0;
  return (j.eps - i.eps) / (j.eps + i.eps);
}

struct StaticStack {
  bool film = false;
  StaticMedium top;
  StaticMedium sub;
  double thickness_nm = 0.0;

  double reflection(double k2, Polarization pol) const {
    const StaticMedium vacuum;
    const double r01 = static_interface(vacuum, top, k2, pol);
    if (!film) return r01;
    const double r12 = static_interface(top, sub, k2, pol);
    return compose_film(r01, r12, thickness_nm, std::sqrt(top.kappa_sq + k2));
  }
};

}  // namespace detail

/// Reflection coefficient of a mirror seen from vacuum, at photon energy
/// xi_eV >= 0 (xi = 0 uses the static limits of each layer) and in-plane
/// wavenumber k_perp (1/nm). Layered mirrors use the two-interface Airy
/// composition r = (r01 + r12 e^{-2wK1}) / (1 + r01 r12 e^{-2wK1}).
inline double mirror_reflection(const Mirror& mirror, double xi_eV, double k_perp_per_nm,
                                Polarization pol, double T_K) {
  validate(mirror);
  const double k2 = k_perp_per_nm * k_perp_per_nm;
  const auto layers = materials_of(mirror);
  const bool film = layers.size() == 2;
  if (xi_eV == 0.0) {
    detail::StaticStack stack;
    stack.film = film;
    stack.top = detail::static_medium(zero_frequency_behavior(*layers[0], T_K));
    if (film) {
      stack.sub = detail::static_medium(zero_frequency_behavior(*layers[1], T_K));
      stack.thickness_nm = std::get<Film>(mirror).thickness_nm;
    }
    return stack.reflection(k2, pol);
  }
  const double K0 = xi_eV / PhysicalConstants::hbar_c_eV_nm;
  detail::LayerStackAt stack;
  stack.perfect = std::holds_alternative<PerfectConductor>(*layers[0]);
  if (!stack.perfect) stack.eps_top = permittivity(*layers[0], xi_eV, T_K);
  if (film) {
    stack.film = true;
    stack.eps_sub = permittivity(*layers[1], xi_eV, T_K);
    stack.thickness_nm = std::get<Film>(mirror).thickness_nm;
  }
  return stack.reflection(K0 * K0, k2, pol);
}

}  // namespace supercasimir
