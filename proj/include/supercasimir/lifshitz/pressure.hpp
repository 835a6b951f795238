#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"
#include "supercasimir/lifshitz/fresnel.hpp"
#include "supercasimir/lifshitz/mirror.hpp"
#include "supercasimir/materials/g_table.hpp"
#include "supercasimir/materials/permittivity.hpp"
#include "supercasimir/numerics/matsubara.hpp"
#include "supercasimir/numerics/quadrature.hpp"

namespace supercasimir {

struct CavityConfig {
  Mirror mirror1;
  Mirror mirror2;
  double gap_nm = 0.0;
  double temperature_K = 0.0;
};

inline void validate(const CavityConfig& cavity) {
  validate(cavity.mirror1);
  validate(cavity.mirror2);
  if (!(cavity.gap_nm > 0)) throw DomainError("cavity: gap must be > 0");
  if (!(cavity.temperature_K > 0)) throw DomainError("cavity: temperature must be > 0");
}

inline std::string describe(const CavityConfig& cavity) {
  return "mirror1=" + describe(cavity.mirror1) + " mirror2=" + describe(cavity.mirror2) +
         " a_nm=" + detail::exact(cavity.gap_nm) + " T_K=" + detail::exact(cavity.temperature_K);
}

template <class Fn>
CavityConfig transform_materials(const CavityConfig& cavity, Fn&& fn) {
  return {transform_materials(cavity.mirror1, fn), transform_materials(cavity.mirror2, fn),
          cavity.gap_nm, cavity.temperature_K};
}

inline CavityConfig with_normal_state(const CavityConfig& cavity) {
  return transform_materials(cavity, [](const MaterialModel& m) { return normal_state(m); });
}

/// Highest critical temperature among the cavity's superconductors.
inline double reference_temperature(const CavityConfig& cavity) {
  std::optional<double> tc;
  for (const Mirror* m : {&cavity.mirror1, &cavity.mirror2}) {
    for (const MaterialModel* mat : materials_of(*m)) {
      if (auto t = critical_temperature(*mat)) tc = std::max(tc.value_or(0.0), *t);
    }
  }
  if (!tc) throw ConfigError("cavity has no superconducting material, so no reference temperature");
  return *tc;
}

struct PressureOptions {
  // Per-term k_perp integral.
  numerics::QuadOptions quad{1e-10, 0.0, 4000};
  // Matsubara truncation; tol_abs is in Pa and is set three orders below the
  // default 1e-8 Pa target accuracy of a pressure difference.
  numerics::MatsubaraOptions sum{1e-10, 1e-11, 50'000'000, 0};
  GTableOptions g_table;
  unsigned threads = 0;
};

struct PressureResult {
  double pressure_Pa = 0.0;  // negative: attraction
  numerics::SumDiagnostics sum_diag;
  double quad_error_Pa = 0.0;

  double error_bound_Pa() const { return quad_error_Pa + sum_diag.truncation_bound; }
};

enum class DeltaMode { as_modeled, force_normal_state };

struct DeltaResult {
  double delta_Pa = 0.0;
  PressureResult at_T;
  PressureResult at_ref;

  double error_bound_Pa() const { return at_T.error_bound_Pa() + at_ref.error_bound_Pa(); }
  // False when |delta| is within 10x the combined error bounds.
  bool resolved() const { return delta_Pa == 0.0 || std::abs(delta_Pa) >= 10.0 * error_bound_Pa(); }
};

namespace detail {

// n(rr, y) = rr e^{-y} / (1 - rr e^{-y}), i.e. [e^y/(r1 r2) - 1]^{-1}.
inline double photon_factor(double rr, double y) {
  if (rr == 0.0) return 0.0;
  const double e = std::exp(-y);
  return rr * e / ((1.0 - rr) - rr * std::expm1(-y));
}

}  // namespace detail

/// Lifshitz pressure engine. Holds the tolerances, a cache of g tables keyed
/// by (superconductor, temperature) and a memo of finished pressures, so
/// sweeps reuse P(T_ref) and tables shared between points.
class PressureSolver {
 public:
  explicit PressureSolver(PressureOptions options = {}) : options_(options) {
    options_.sum.threads = options_.threads;
    options_.g_table.threads = options_.threads;
  }

  const PressureOptions& options() const { return options_; }

  std::shared_ptr<const GTable> g_table(const BcsParams& params, double T_K) {
    const std::string key = describe(Bcs{params}) + "@" + detail::exact(T_K);
    std::lock_guard lock(cache_mutex_);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    auto table = std::make_shared<const GTable>(GTable::build(params, T_K, options_.g_table));
    tables_.emplace(key, table);
    return table;
  }

  MaterialResponse response(const MaterialModel& model, double T_K) {
    if (const auto* b = std::get_if<Bcs>(&model)) {
      return MaterialResponse(model, T_K, g_table(b->params, T_K));
    }
    return MaterialResponse(model, T_K);
  }

  /// P(a, T): Lifshitz formula with the k_perp integral rewritten in
  /// y = 2 a q,  term(l) = -(kB T / 8 pi a^3) int_{y_l}^inf y^2 sum_alpha n(r1 r2, y) dy,
  /// y_l = 2 a xi_l / c, and the l = 0 term taken from the static limits.
  PressureResult pressure(const CavityConfig& cavity) {
    validate(cavity);
    const std::string key = describe(cavity);
    {
      std::lock_guard lock(cache_mutex_);
      if (auto it = pressures_.find(key); it != pressures_.end()) return it->second;
    }
    PressureResult result = compute(cavity);
    std::lock_guard lock(cache_mutex_);
    pressures_.emplace(key, result);
    return result;
  }

  /// Delta P = P(a, T) - P(a, T_ref) with identical tolerances at both
  /// temperatures. force_normal_state evaluates every superconductor as its
  /// embedded Drude model (the "no transition" reference curve).
  DeltaResult delta_pressure(const CavityConfig& cavity_template, double T_K, double T_ref_K,
                             DeltaMode mode = DeltaMode::as_modeled) {
    if (!(T_K > 0) || !(T_K <= T_ref_K)) throw DomainError("delta_pressure: need 0 < T <= T_ref");
    CavityConfig base = mode == DeltaMode::force_normal_state ? with_normal_state(cavity_template)
                                                              : cavity_template;
    base.temperature_K = T_ref_K;
    DeltaResult result;
    result.at_ref = pressure(base);
    if (T_K == T_ref_K) {
      result.at_T = result.at_ref;
      result.delta_Pa = 0.0;
      return result;
    }
    base.temperature_K = T_K;
    result.at_T = pressure(base);
    result.delta_Pa = result.at_T.pressure_Pa - result.at_ref.pressure_Pa;
    return result;
  }

 private:
  PressureResult compute(const CavityConfig& cavity) {
    const double a = cavity.gap_nm;
    const double T = cavity.temperature_K;
    const double kT = PhysicalConstants::kB_eV_per_K * T;
    const double prefactor =
        -kT / (8.0 * PhysicalConstants::pi * a * a * a) * PhysicalConstants::pascal_per_eV_nm3;

    struct PreparedMirror {
      bool film = false;
      bool perfect = false;
      double thickness_nm = 0.0;
      std::optional<MaterialResponse> top;
      std::optional<MaterialResponse> sub;
      detail::StaticStack statics;

      detail::LayerStackAt at(double xi) const {
        detail::LayerStackAt s;
        s.perfect = perfect;
        s.film = film;
        s.thickness_nm = thickness_nm;
        if (!perfect) s.eps_top = top->permittivity(xi);
        if (film) s.eps_sub = sub->permittivity(xi);
        return s;
      }
    };
    auto prepare = [&](const Mirror& mirror) {
      PreparedMirror p;
      const auto layers = materials_of(mirror);
      p.top.emplace(response(*layers[0], T));
      p.perfect = p.top->perfect();
      p.statics.top = detail::static_medium(p.top->zero_frequency());
      if (layers.size() == 2) {
        p.film = true;
        p.thickness_nm = std::get<Film>(mirror).thickness_nm;
        p.sub.emplace(response(*layers[1], T));
        p.statics.film = true;
        p.statics.sub = detail::static_medium(p.sub->zero_frequency());
        p.statics.thickness_nm = p.thickness_nm;
      }
      return p;
    };
    const PreparedMirror m1 = prepare(cavity.mirror1);
    const PreparedMirror m2 = prepare(cavity.mirror2);

    const numerics::QuadOptions quad = options_.quad;
    auto term = [&](std::size_t l) -> numerics::TermValue {
      numerics::QuadResult integral;
      if (l == 0) {
        auto f = [&](double y) {
          const double k2 = (y / (2.0 * a)) * (y / (2.0 * a));
          double total = 0.0;
          for (Polarization pol : {Polarization::TM, Polarization::TE}) {
            const double rr = m1.statics.reflection(k2, pol) * m2.statics.reflection(k2, pol);
            total += detail::photon_factor(rr, y);
          }
          return y * y * total;
        };
        integral = numerics::integrate_semi_infinite(f, 0.0, numerics::TailTransform::exp_decay, quad);
      } else {
        const double xi = PhysicalConstants::matsubara_energy(static_cast<long>(l), T);
        const double K0 = xi / PhysicalConstants::hbar_c_eV_nm;
        const double K0sq = K0 * K0;
        const double yl = 2.0 * a * K0;
        const detail::LayerStackAt s1 = m1.at(xi);
        const detail::LayerStackAt s2 = m2.at(xi);
        auto f = [&](double t) {
          const double y = yl + t;
          const double k2 = t * (2.0 * yl + t) / (4.0 * a * a);
          double total = 0.0;
          for (Polarization pol : {Polarization::TM, Polarization::TE}) {
            const double rr = s1.reflection(K0sq, k2, pol) * s2.reflection(K0sq, k2, pol);
            total += detail::photon_factor(rr, y);
          }
          return y * y * total;
        };
        integral = numerics::integrate_semi_infinite(f, 0.0, numerics::TailTransform::exp_decay, quad);
      }
      return {prefactor * integral.value, std::abs(prefactor) * integral.error_bound};
    };

    const numerics::MatsubaraResult sum = numerics::matsubara_sum(term, options_.sum);
    return {sum.value, sum.diagnostics, sum.term_error};
  }

  PressureOptions options_;
  std::mutex cache_mutex_;
  std::map<std::string, std::shared_ptr<const GTable>> tables_;
  std::map<std::string, PressureResult> pressures_;
};

inline PressureResult pressure(const CavityConfig& cavity, const PressureOptions& options = {}) {
  PressureSolver solver(options);
  return solver.pressure(cavity);
}

inline DeltaResult delta_pressure(const CavityConfig& cavity_template, double T_K, double T_ref_K,
                                  DeltaMode mode = DeltaMode::as_modeled,
                                  const PressureOptions& options = {}) {
  PressureSolver solver(options);
  return solver.delta_pressure(cavity_template, T_K, T_ref_K, mode);
}

}  // namespace supercasimir
