#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/lifshitz/pressure.hpp"
#include "supercasimir/scenarios/material_db.hpp"

#ifndef SUPERCASIMIR_VERSION
#define SUPERCASIMIR_VERSION "1.0.0"
#endif

namespace supercasimir {

inline constexpr std::string_view kVersion = SUPERCASIMIR_VERSION;

enum class SweepAxis { temperature, separation, film_thickness, rrr_sc, rrr_au, core_eps };
enum class SweepMode { as_modeled, force_normal_state, both };
enum class SweepOutput { pressure, delta_pressure };

inline std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::temperature: return "temperature";
    case SweepAxis::separation: return "separation";
    case SweepAxis::film_thickness: return "film_thickness";
    case SweepAxis::rrr_sc: return "rrr_sc";
    case SweepAxis::rrr_au: return "rrr_au";
    case SweepAxis::core_eps: return "core_eps";
  }
  return "?";
}
inline std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::as_modeled: return "as_modeled";
    case SweepMode::force_normal_state: return "force_normal_state";
    case SweepMode::both: return "both";
  }
  return "?";
}
inline std::string_view to_string(SweepOutput output) {
  return output == SweepOutput::pressure ? "pressure" : "delta_pressure";
}

inline SweepAxis parse_axis(std::string_view s) {
  for (auto a : {SweepAxis::temperature, SweepAxis::separation, SweepAxis::film_thickness,
                 SweepAxis::rrr_sc, SweepAxis::rrr_au, SweepAxis::core_eps}) {
    if (to_string(a) == s) return a;
  }
  throw ConfigError("unknown axis '" + std::string(s) +
                    "' (temperature, separation, film_thickness, rrr_sc, rrr_au, core_eps)");
}
inline SweepMode parse_mode(std::string_view s) {
  for (auto m : {SweepMode::as_modeled, SweepMode::force_normal_state, SweepMode::both}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("unknown mode '" + std::string(s) + "' (as_modeled, force_normal_state, both)");
}
inline SweepOutput parse_output(std::string_view s) {
  if (s == "pressure") return SweepOutput::pressure;
  if (s == "delta_pressure") return SweepOutput::delta_pressure;
  throw ConfigError("unknown output '" + std::string(s) + "' (pressure, delta_pressure)");
}

// CSV column name of the axis, with its unit.
inline std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::temperature: return "T_K";
    case SweepAxis::separation: return "a_nm";
    case SweepAxis::film_thickness: return "w_nm";
    case SweepAxis::rrr_sc: return "rrr_sc";
    case SweepAxis::rrr_au: return "rrr_au";
    case SweepAxis::core_eps: return "eps0_sc";
  }
  return "?";
}

namespace detail {

template <class Fn>
void for_each_material(CavityConfig& cavity, Fn&& fn) {
  for (Mirror* mirror : {&cavity.mirror1, &cavity.mirror2}) {
    if (auto* h = std::get_if<HalfSpace>(mirror)) {
      fn(h->material, false);
    } else {
      auto& f = std::get<Film>(*mirror);
      fn(f.film, false);
      fn(f.substrate, true);
    }
  }
}

}  // namespace detail

inline void check_axis_value(SweepAxis axis, double v) {
  const bool ok = [&] {
    switch (axis) {
      case SweepAxis::temperature: return v > 0;
      case SweepAxis::separation: return v >= 10;
      case SweepAxis::film_thickness: return v > 0;
      case SweepAxis::rrr_sc:
      case SweepAxis::rrr_au: return v >= 0.1;
      case SweepAxis::core_eps: return v >= 1;
    }
    return false;
  }();
  if (!ok || !std::isfinite(v)) {
    throw ConfigError(std::string(to_string(axis)) + " value out of range: " + detail::exact(v));
  }
}

/// Sets one sweep coordinate on a cavity. rrr_sc and core_eps act on every
/// superconducting layer, rrr_au on every normal (Drude) metal layer, and
/// film_thickness on every film (half-space mirrors are left alone).
inline void set_axis_value(CavityConfig& cavity, SweepAxis axis, double v) {
  check_axis_value(axis, v);
  switch (axis) {
    case SweepAxis::temperature: cavity.temperature_K = v; return;
    case SweepAxis::separation: cavity.gap_nm = v; return;
    case SweepAxis::film_thickness:
      for (Mirror* m : {&cavity.mirror1, &cavity.mirror2}) {
        if (auto* f = std::get_if<Film>(m)) f->thickness_nm = v;
      }
      return;
    default: break;
  }
  detail::for_each_material(cavity, [&](MaterialModel& m, bool) {
    if (axis == SweepAxis::rrr_au) {
      if (auto* d = std::get_if<Drude>(&m)) d->params.rrr = v;
    } else if (auto* p = superconductor_params(m)) {
      (axis == SweepAxis::rrr_sc ? p->drude.rrr : p->drude.eps0) = v;
    }
  });
}

/// Named modifications shared by scenario files and built-in series:
/// a_nm, T_K, T_over_Tc, rrr_sc, rrr_au, core_eps, substrate_eps, sc_model.
/// substrate_eps = 1 makes films free-standing.
inline void apply_override(CavityConfig& cavity, std::string_view key, std::string_view value) {
  auto number = [&] { return detail::parse_number(value, key); };
  if (key == "a_nm") {
    set_axis_value(cavity, SweepAxis::separation, number());
  } else if (key == "T_K") {
    set_axis_value(cavity, SweepAxis::temperature, number());
  } else if (key == "T_over_Tc") {
    const double t = number();
    if (!(t > 0 && t <= 1)) throw ConfigError("T_over_Tc must be in (0, 1]");
    cavity.temperature_K = t * reference_temperature(cavity);
  } else if (key == "rrr_sc") {
    set_axis_value(cavity, SweepAxis::rrr_sc, number());
  } else if (key == "rrr_au") {
    set_axis_value(cavity, SweepAxis::rrr_au, number());
  } else if (key == "core_eps") {
    set_axis_value(cavity, SweepAxis::core_eps, number());
  } else if (key == "substrate_eps") {
    const double eps = number();
    if (!(eps >= 1)) throw ConfigError("substrate_eps must be >= 1");
    for (Mirror* m : {&cavity.mirror1, &cavity.mirror2}) {
      if (auto* f = std::get_if<Film>(m)) {
        f->substrate = eps == 1.0 ? MaterialModel{Vacuum{}} : MaterialModel{ConstantDielectric{eps}};
      }
    }
  } else if (key == "sc_model") {
    if (value != "bcs" && value != "twofluid") {
      throw ConfigError("sc_model must be bcs or twofluid, got '" + std::string(value) + "'");
    }
    detail::for_each_material(cavity, [&](MaterialModel& m, bool) {
      if (const auto* p = superconductor_params(m)) {
        const BcsParams params = *p;
        m = value == "bcs" ? MaterialModel{Bcs{params}} : MaterialModel{TwoFluid{params}};
      }
    });
  } else {
    throw ConfigError("unknown override '" + std::string(key) +
                      "' (a_nm, T_K, T_over_Tc, rrr_sc, rrr_au, core_eps, substrate_eps, sc_model)");
  }
}

/// One curve of a sweep: a fully specified cavity (its temperature is used
/// when the axis is not temperature) and an optional explicit T_ref.
struct SweepSeries {
  std::string label;
  CavityConfig cavity;
  std::optional<double> T_ref_K;
};

struct SweepSpec {
  std::string name = "custom";
  SweepAxis axis = SweepAxis::temperature;
  std::vector<double> points;
  SweepMode mode = SweepMode::as_modeled;
  SweepOutput output = SweepOutput::delta_pressure;
  std::vector<SweepSeries> series;
};

inline void validate(const SweepSpec& spec) {
  if (spec.points.empty()) throw ConfigError("sweep: no points");
  if (spec.series.empty()) throw ConfigError("sweep: no cavity");
  for (double p : spec.points) check_axis_value(spec.axis, p);
  const bool increasing = std::adjacent_find(spec.points.begin(), spec.points.end(),
                                             std::greater_equal<>()) == spec.points.end();
  const bool decreasing = std::adjacent_find(spec.points.begin(), spec.points.end(),
                                             std::less_equal<>()) == spec.points.end();
  if (!increasing && !decreasing) throw ConfigError("sweep: points must be strictly monotone");
  for (const auto& s : spec.series) {
    validate(s.cavity.mirror1);
    validate(s.cavity.mirror2);
    if (spec.output == SweepOutput::delta_pressure && spec.axis == SweepAxis::temperature) {
      const double t_ref = s.T_ref_K ? *s.T_ref_K : reference_temperature(s.cavity);
      for (double p : spec.points) {
        if (p > t_ref) {
          throw ConfigError("sweep: temperature " + detail::exact(p) + " K exceeds T_ref " +
                            detail::exact(t_ref) + " K");
        }
      }
    }
  }
}

inline std::vector<double> linear_grid(double from, double to, std::size_t count) {
  if (count == 0) throw ConfigError("grid: count must be > 0");
  if (count == 1) return {from};
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  v.back() = to;
  return v;
}

inline std::vector<double> log_grid(double from, double to, std::size_t count) {
  if (!(from > 0 && to > 0)) throw ConfigError("grid: log scale needs positive bounds");
  auto v = linear_grid(std::log(from), std::log(to), count);
  for (double& x : v) x = std::exp(x);
  v.front() = from;
  v.back() = to;
  return v;
}

struct SweepRow {
  std::string series;
  double axis_value = 0.0;
  double value = std::numeric_limits<double>::quiet_NaN();         // as_modeled (or normal-only)
  double normal_value = std::numeric_limits<double>::quiet_NaN();  // mode == both
  double error_bound = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";  // ok | unresolved | failed: <reason>
};

struct SweepTable {
  std::string scenario;
  std::vector<std::string> parameters;  // echoed on the second CSV line
  std::vector<std::string> columns;
  SweepOutput output = SweepOutput::delta_pressure;
  SweepMode mode = SweepMode::as_modeled;
  std::vector<SweepRow> rows;
};

inline std::vector<std::string> sweep_columns(const SweepSpec& spec) {
  const bool delta = spec.output == SweepOutput::delta_pressure;
  const std::string unit = delta ? "_mPa" : "_Pa";
  const std::string base = delta ? "deltaP" : "P";
  std::vector<std::string> cols = {"series", std::string(axis_column(spec.axis))};
  if (spec.mode == SweepMode::force_normal_state) {
    cols.push_back(base + "_normal" + unit);
  } else {
    cols.push_back(base + unit);
    if (spec.mode == SweepMode::both) cols.push_back(base + "_normal" + unit);
  }
  cols.push_back("error_bound" + unit);
  cols.push_back("status");
  return cols;
}

/// Evaluates every (series, point) in series-major, point-minor order. A
/// failing point is recorded in its row and the sweep continues; if every
/// point fails the first failure is rethrown.
inline SweepTable run_sweep(const SweepSpec& spec, PressureSolver& solver) {
  validate(spec);
  SweepTable table;
  table.scenario = spec.name;
  table.output = spec.output;
  table.mode = spec.mode;
  table.columns = sweep_columns(spec);
  const auto& o = solver.options();
  table.parameters = {
      "axis=" + std::string(to_string(spec.axis)), "mode=" + std::string(to_string(spec.mode)),
      "output=" + std::string(to_string(spec.output)),
      "quad_tol_rel=" + detail::exact(o.quad.tol_rel),
      "sum_cutoff_ratio=" + detail::exact(o.sum.cutoff_ratio),
      "sum_tol_abs_Pa=" + detail::exact(o.sum.tol_abs), "g_table_tol=" + detail::exact(o.g_table.tol)};
  for (const auto& s : spec.series) {
    std::string echo = "series[" + s.label + "]: " + describe(s.cavity);
    if (s.T_ref_K) echo += " T_ref_K=" + detail::exact(*s.T_ref_K);
    table.parameters.push_back(echo);
  }

  const double scale = spec.output == SweepOutput::delta_pressure ? 1e3 : 1.0;
  std::optional<std::string> first_failure;
  bool any_success = false;
  for (const auto& s : spec.series) {
    for (double x : spec.points) {
      SweepRow row;
      row.series = s.label;
      row.axis_value = x;
      try {
        CavityConfig cavity = s.cavity;
        set_axis_value(cavity, spec.axis, x);
        auto one = [&](DeltaMode mode) -> std::pair<double, double> {
          if (spec.output == SweepOutput::pressure) {
            const PressureResult p = solver.pressure(
                mode == DeltaMode::force_normal_state ? with_normal_state(cavity) : cavity);
            return {p.pressure_Pa, p.error_bound_Pa()};
          }
          const double t_ref = s.T_ref_K ? *s.T_ref_K : reference_temperature(cavity);
          const DeltaResult d = solver.delta_pressure(cavity, cavity.temperature_K, t_ref, mode);
          if (!d.resolved()) row.status = "unresolved";
          return {d.delta_Pa, d.error_bound_Pa()};
        };
        double bound = 0.0;
        if (spec.mode != SweepMode::force_normal_state) {
          auto [v, e] = one(DeltaMode::as_modeled);
          row.value = v * scale;
          bound = std::max(bound, e);
        }
        if (spec.mode != SweepMode::as_modeled) {
          auto [v, e] = one(DeltaMode::force_normal_state);
          (spec.mode == SweepMode::both ? row.normal_value : row.value) = v * scale;
          bound = std::max(bound, e);
        }
        row.error_bound = bound * scale;
        any_success = true;
      } catch (const std::exception& e) {
        std::string reason = e.what();
        std::replace(reason.begin(), reason.end(), ',', ';');
        std::replace(reason.begin(), reason.end(), '\n', ' ');
        row.status = "failed: " + reason;
        row.value = row.normal_value = row.error_bound = std::numeric_limits<double>::quiet_NaN();
        if (!first_failure) first_failure = e.what();
      }
      table.rows.push_back(std::move(row));
    }
  }
  if (!any_success) {
    throw NumericalError("sweep '" + spec.name + "': every point failed: " + *first_failure,
                         std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::infinity());
  }
  return table;
}

inline SweepTable run_sweep(const SweepSpec& spec, const PressureOptions& options = {}) {
  PressureSolver solver(options);
  return run_sweep(spec, solver);
}

namespace detail {
inline std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", v);
  return buffer;
}
}  // namespace detail

inline void write_csv_header(std::ostream& out, const std::string& scenario,
                             const std::vector<std::string>& parameters,
                             const std::vector<std::string>& columns) {
  out << "# supercasimir v" << kVersion << " scenario=" << scenario << "\n# ";
  for (std::size_t i = 0; i < parameters.size(); ++i) out << (i ? " | " : "") << parameters[i];
  out << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
}

inline void write_csv(std::ostream& out, const SweepTable& table) {
  write_csv_header(out, table.scenario, table.parameters, table.columns);
  for (const auto& r : table.rows) {
    out << r.series << ',' << detail::sci(r.axis_value) << ',' << detail::sci(r.value);
    if (table.mode == SweepMode::both) out << ',' << detail::sci(r.normal_value);
    out << ',' << detail::sci(r.error_bound) << ',' << r.status << '\n';
  }
}

inline std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

}  // namespace supercasimir
