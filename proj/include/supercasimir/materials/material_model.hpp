#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "supercasimir/errors.hpp"

namespace supercasimir {

/// Drude parameters: eps(i xi) = eps0 + omega_p^2 / (xi (xi + gamma)),
/// gamma = gamma0 / rrr. Energies in eV.
struct DrudeParams {
  double eps0 = 1.0;
  double omega_p_eV = 0.0;
  double gamma0_eV = 0.0;
  double rrr = 1.0;

  double gamma_eV() const { return gamma0_eV / rrr; }

  void validate() const {
    if (!(omega_p_eV > 0)) throw DomainError("Drude: omega_p must be > 0");
    if (!(gamma0_eV > 0)) throw DomainError("Drude: gamma0 must be > 0");
    if (!(rrr > 0)) throw DomainError("Drude: rrr must be > 0");
    if (!(eps0 >= 1)) throw DomainError("Drude: eps0 must be >= 1");
  }
};

/// A BCS superconductor: its normal state is the embedded Drude model.
struct BcsParams {
  DrudeParams drude;
  double tc_K = 0.0;

  void validate() const {
    drude.validate();
    if (!(tc_K > 0)) throw DomainError("BCS: tc must be > 0");
  }
};

struct Drude {
  DrudeParams params;
};
// Mattis-Bardeen dirty-limit superconductor.
struct Bcs {
  BcsParams params;
};
// Casimir-Gorter two-fluid superconductor.
struct TwoFluid {
  BcsParams params;
};
struct ConstantDielectric {
  double eps = 1.0;
};
// Ideal mirror: r_TM = 1, r_TE = -1 at every frequency. Half-space only.
struct PerfectConductor {};
struct Vacuum {};

using MaterialModel = std::variant<Drude, Bcs, TwoFluid, ConstantDielectric, PerfectConductor, Vacuum>;

inline void validate(const MaterialModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Drude>) {
          m.params.validate();
        } else if constexpr (std::is_same_v<T, Bcs> || std::is_same_v<T, TwoFluid>) {
          m.params.validate();
        } else if constexpr (std::is_same_v<T, ConstantDielectric>) {
          if (!(m.eps >= 1)) throw DomainError("dielectric: eps must be >= 1");
        }
      },
      model);
}

inline bool is_superconductor(const MaterialModel& model) {
  return std::holds_alternative<Bcs>(model) || std::holds_alternative<TwoFluid>(model);
}

inline const BcsParams* superconductor_params(const MaterialModel& model) {
  if (const auto* b = std::get_if<Bcs>(&model)) return &b->params;
  if (const auto* t = std::get_if<TwoFluid>(&model)) return &t->params;
  return nullptr;
}

inline BcsParams* superconductor_params(MaterialModel& model) {
  if (auto* b = std::get_if<Bcs>(&model)) return &b->params;
  if (auto* t = std::get_if<TwoFluid>(&model)) return &t->params;
  return nullptr;
}

inline std::optional<double> critical_temperature(const MaterialModel& model) {
  if (const auto* p = superconductor_params(model)) return p->tc_K;
  return std::nullopt;
}

/// Superconductors replaced by their embedded normal-state Drude model.
inline MaterialModel normal_state(const MaterialModel& model) {
  if (const auto* p = superconductor_params(model)) return Drude{p->drude};
  return model;
}

inline std::string model_kind(const MaterialModel& model) {
  static constexpr const char* kNames[] = {"drude", "bcs", "twofluid", "dielectric", "perfect",
                                           "vacuum"};
  return kNames[model.index()];
}

namespace detail {
inline std::string exact(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}
}  // namespace detail

/// Compact, exact (round-trippable) description used both for human-readable
/// parameter echoes and as a cache key.
inline std::string describe(const MaterialModel& model) {
  using detail::exact;
  auto drude = [](const DrudeParams& p) {
    return "eps0=" + exact(p.eps0) + " omega_p_eV=" + exact(p.omega_p_eV) +
           " gamma0_eV=" + exact(p.gamma0_eV) + " rrr=" + exact(p.rrr);
  };
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Drude>) {
          return "drude(" + drude(m.params) + ")";
        } else if constexpr (std::is_same_v<T, Bcs>) {
          return "bcs(" + drude(m.params.drude) + " tc_K=" + exact(m.params.tc_K) + ")";
        } else if constexpr (std::is_same_v<T, TwoFluid>) {
          return "twofluid(" + drude(m.params.drude) + " tc_K=" + exact(m.params.tc_K) + ")";
        } else if constexpr (std::is_same_v<T, ConstantDielectric>) {
          return "dielectric(eps=" + exact(m.eps) + ")";
        } else if constexpr (std::is_same_v<T, PerfectConductor>) {
          return "perfect";
        } else {
          return "vacuum";
        }
      },
      model);
}

}  // namespace supercasimir
