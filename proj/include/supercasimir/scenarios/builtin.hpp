#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/scenarios/material_db.hpp"
#include "supercasimir/scenarios/response.hpp"
#include "supercasimir/scenarios/sweep.hpp"

namespace supercasimir {

using Scenario = std::variant<SweepSpec, ResponseSpec>;

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6",
                                                 "fig7", "fig8", "fig9", "fig10",
                                                 "twofluid_comparison"};
  return names;
}

namespace detail {

inline CavityConfig make_cavity(const char* m1, const char* m2, double a_nm) {
  const auto& db = default_catalog();
  return {HalfSpace{db.get(m1)}, HalfSpace{db.get(m2)}, a_nm, 0.0};
}

inline CavityConfig at_T_over_Tc(CavityConfig c, double t) {
  c.temperature_K = t * reference_temperature(c);
  return c;
}

inline SweepSeries series(std::string label, CavityConfig base,
                          std::initializer_list<std::pair<const char*, std::string>> overrides) {
  for (const auto& [k, v] : overrides) apply_override(base, k, v);
  return {std::move(label), std::move(base), std::nullopt};
}

// 25 temperatures from 0.05 Tc to Tc inclusive.
inline std::vector<double> temperature_grid(double tc) {
  auto v = linear_grid(0.05, 1.0, 25);
  for (double& t : v) t *= tc;
  v.back() = tc;
  return v;
}

// Log-spaced film thicknesses, plus the two Al check points.
inline std::vector<double> thickness_grid() {
  auto v = log_grid(5.0, 2000.0, 23);
  v.push_back(18.0);
  v.push_back(250.0);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// The figure parameterizations. Everything not a temperature sweep runs at
/// T = 0.5 Tc and a = 100 nm unless the figure's own axis says otherwise.
inline Scenario builtin_scenario(std::string_view name) {
  using detail::at_T_over_Tc;
  using detail::make_cavity;
  using detail::series;
  const auto& db = default_catalog();
  const BcsParams nbtin = std::get<Bcs>(db.get("NbTiN")).params;

  if (name == "fig1" || name == "fig2") {
    ResponseSpec r;
    r.name = std::string(name);
    r.kind = name == "fig1" ? ResponseKind::g_function : ResponseKind::permittivity;
    r.material = nbtin;
    r.T_over_Tc = {0.1, 0.9};
    r.xi_over_2gap = log_grid(1e-3, 1e3, 121);
    return r;
  }

  SweepSpec s;
  s.name = std::string(name);
  if (name == "fig3") {
    s.axis = SweepAxis::temperature;
    s.mode = SweepMode::both;
    const auto c = make_cavity("Al", "Al", 100);
    s.points = detail::temperature_grid(1.2);
    s.series = {series("Al-Al", at_T_over_Tc(c, 0.5), {})};
  } else if (name == "fig4") {
    s.axis = SweepAxis::film_thickness;
    const auto& al = db.get("Al");
    const auto& sin = db.get("SiN");
    CavityConfig film{Film{al, 18.0, sin}, Film{al, 18.0, sin}, 100.0, 0.0};
    s.points = detail::thickness_grid();
    s.series = {series("Al_on_SiN", at_T_over_Tc(film, 0.5), {}),
                series("halfspace", at_T_over_Tc(make_cavity("Al", "Al", 100), 0.5), {})};
  } else if (name == "fig5" || name == "fig6") {
    s.axis = SweepAxis::temperature;
    s.mode = SweepMode::both;
    const auto c = name == "fig5" ? make_cavity("NbTiN", "NbTiN", 100) : make_cavity("Au", "NbTiN", 100);
    s.points = detail::temperature_grid(nbtin.tc_K);
    s.series = {series("eps0=1", at_T_over_Tc(c, 0.5), {{"core_eps", "1"}}),
                series("eps0=10", at_T_over_Tc(c, 0.5), {{"core_eps", "10"}})};
  } else if (name == "fig7") {
    s.axis = SweepAxis::separation;
    s.points = linear_grid(60.0, 300.0, 25);
    const auto c = at_T_over_Tc(make_cavity("Au", "NbTiN", 100), 0.5);
    s.series = {series("rrr_sc=1.12", c, {{"rrr_sc", "1.12"}}),
                series("rrr_sc=5", c, {{"rrr_sc", "5"}})};
  } else if (name == "fig8" || name == "fig9") {
    s.axis = name == "fig8" ? SweepAxis::rrr_sc : SweepAxis::rrr_au;
    s.points = linear_grid(1.0, 13.0, 25);
    const auto c = at_T_over_Tc(make_cavity("Au", "NbTiN", 100), 0.5);
    s.series = {series("a_nm=100", c, {{"a_nm", "100"}}), series("a_nm=60", c, {{"a_nm", "60"}})};
  } else if (name == "fig10") {
    s.axis = SweepAxis::film_thickness;
    s.points = detail::thickness_grid();
    CavityConfig film{HalfSpace{db.get("Au")}, Film{db.get("NbTiN"), 18.0, Vacuum{}}, 100.0, 0.0};
    film = at_T_over_Tc(film, 0.5);
    s.series = {series("free_standing", film, {}),
                series("substrate_eps=10", film, {{"substrate_eps", "10"}}),
                series("halfspace", at_T_over_Tc(make_cavity("Au", "NbTiN", 100), 0.5), {})};
  } else if (name == "twofluid_comparison") {
    s.axis = SweepAxis::temperature;
    const auto c = make_cavity("Au", "NbTiN", 100);
    s.points = {0.1 * nbtin.tc_K};
    s.series = {series("bcs", at_T_over_Tc(c, 0.1), {{"sc_model", "bcs"}}),
                series("twofluid", at_T_over_Tc(c, 0.1), {{"sc_model", "twofluid"}})};
  } else {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (valid: " + known + ")");
  }
  return s;
}

}  // namespace supercasimir
