#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <type_traits>
#include <variant>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"
#include "supercasimir/materials/g_table.hpp"
#include "supercasimir/materials/material_model.hpp"

namespace supercasimir {

inline double drude_permittivity(const DrudeParams& p, double xi_eV) {
  return p.eps0 + p.omega_p_eV * p.omega_p_eV / (xi_eV * (xi_eV + p.gamma_eV()));
}

/// Casimir-Gorter superfluid fraction n_s = 1 - (T/Tc)^4 below Tc, 0 above.
inline double superfluid_fraction(double tc_K, double T_K) {
  if (!(T_K >= 0)) throw DomainError("superfluid_fraction: temperature must be >= 0");
  if (T_K >= tc_K) return 0.0;
  const double t2 = (T_K / tc_K) * (T_K / tc_K);
  return 1.0 - t2 * t2;
}

// eps0 + (Omega^2/xi) [1/(xi+gamma) + g/xi]; reduces to Drude bit-for-bit when g = 0.
inline double bcs_permittivity(const BcsParams& p, double xi_eV, double g) {
  if (g == 0.0) return drude_permittivity(p.drude, xi_eV);
  const double w2 = p.drude.omega_p_eV * p.drude.omega_p_eV;
  return p.drude.eps0 + w2 / xi_eV * (1.0 / (xi_eV + p.drude.gamma_eV()) + g / xi_eV);
}

inline double two_fluid_permittivity(const BcsParams& p, double xi_eV, double T_K) {
  const double ns = superfluid_fraction(p.tc_K, T_K);
  if (ns == 0.0) return drude_permittivity(p.drude, xi_eV);
  const double w2 = p.drude.omega_p_eV * p.drude.omega_p_eV;
  return p.drude.eps0 + (1.0 - ns) * w2 / (xi_eV * (xi_eV + p.drude.gamma_eV())) +
         ns * w2 / (xi_eV * xi_eV);
}

/// eps(i xi) at photon energy xi_eV > 0 and temperature T_K. The BCS model
/// evaluates g(xi; T) directly here; MaterialResponse caches it instead.
inline double permittivity(const MaterialModel& model, double xi_eV, double T_K,
                           const GOptions& g_options = {}) {
  if (!(xi_eV > 0)) throw DomainError("permittivity: xi must be > 0 (use zero_frequency_behavior)");
  if (!(T_K >= 0)) throw DomainError("permittivity: temperature must be >= 0");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Drude>) {
          return drude_permittivity(m.params, xi_eV);
        } else if constexpr (std::is_same_v<T, Bcs>) {
          return bcs_permittivity(m.params, xi_eV, g_function(xi_eV, T_K, m.params, g_options));
        } else if constexpr (std::is_same_v<T, TwoFluid>) {
          return two_fluid_permittivity(m.params, xi_eV, T_K);
        } else if constexpr (std::is_same_v<T, ConstantDielectric>) {
          return m.eps;
        } else if constexpr (std::is_same_v<T, PerfectConductor>) {
          throw DomainError("permittivity: a perfect conductor has no finite permittivity");
        } else {
          return 1.0;
        }
      },
      model);
}

// Classification of the xi -> 0 response, which fixes the l = 0 Matsubara term.
struct TeVanishing {};  // eps xi^2 -> 0: dissipative metal, no static TE reflection
struct PlasmaLike {     // eps xi^2 -> plasma_eV^2: superfluid screening
  double plasma_eV = 0.0;
};
struct Dielectric {
  double eps = 1.0;
};
using ZeroFrequencyBehavior = std::variant<TeVanishing, PlasmaLike, Dielectric>;

inline ZeroFrequencyBehavior zero_frequency_behavior(const MaterialModel& model, double T_K,
                                                     const GOptions& g_options = {}) {
  return std::visit(
      [&](const auto& m) -> ZeroFrequencyBehavior {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Drude>) {
          return TeVanishing{};
        } else if constexpr (std::is_same_v<T, Bcs>) {
          const double g0 = g_function(0.0, T_K, m.params, g_options);
          if (g0 == 0.0) return TeVanishing{};
          return PlasmaLike{m.params.drude.omega_p_eV * std::sqrt(g0)};
        } else if constexpr (std::is_same_v<T, TwoFluid>) {
          const double ns = superfluid_fraction(m.params.tc_K, T_K);
          if (ns == 0.0) return TeVanishing{};
          return PlasmaLike{m.params.drude.omega_p_eV * std::sqrt(ns)};
        } else if constexpr (std::is_same_v<T, ConstantDielectric>) {
          return Dielectric{m.eps};
        } else if constexpr (std::is_same_v<T, PerfectConductor>) {
          return PlasmaLike{std::numeric_limits<double>::infinity()};
        } else {
          return Dielectric{1.0};
        }
      },
      model);
}

/// Mean free path over coherence length, l/xi0 = pi Delta(0) / (hbar gamma).
/// The Fermi velocity cancels. Local (dirty-limit) response needs this << 1.
inline double dirty_limit_ratio(const BcsParams& params) {
  return PhysicalConstants::pi * zero_temperature_gap(params.tc_K) / params.drude.gamma_eV();
}

/// A material frozen at one temperature, with g(xi; T) served from a table.
class MaterialResponse {
 public:
  MaterialResponse(MaterialModel model, double T_K, std::shared_ptr<const GTable> table = nullptr)
      : model_(std::move(model)), T_K_(T_K), table_(std::move(table)) {
    validate(model_);
    if (std::holds_alternative<Bcs>(model_) && !table_) {
      table_ = std::make_shared<const GTable>(GTable::build(std::get<Bcs>(model_).params, T_K_));
    }
    if (table_) {
      zero_ = table_->g0() > 0.0
                  ? ZeroFrequencyBehavior{PlasmaLike{std::get<Bcs>(model_).params.drude.omega_p_eV *
                                                     std::sqrt(table_->g0())}}
                  : ZeroFrequencyBehavior{TeVanishing{}};
    } else {
      zero_ = zero_frequency_behavior(model_, T_K_);
    }
  }

  double permittivity(double xi_eV) const {
    if (const auto* b = std::get_if<Bcs>(&model_)) {
      return bcs_permittivity(b->params, xi_eV, (*table_)(xi_eV));
    }
    return supercasimir::permittivity(model_, xi_eV, T_K_);
  }

  const ZeroFrequencyBehavior& zero_frequency() const { return zero_; }
  const MaterialModel& model() const { return model_; }
  bool perfect() const { return std::holds_alternative<PerfectConductor>(model_); }
  bool vacuum() const { return std::holds_alternative<Vacuum>(model_); }

 private:
  MaterialModel model_;
  double T_K_;
  std::shared_ptr<const GTable> table_;
  ZeroFrequencyBehavior zero_;
};

}  // namespace supercasimir
