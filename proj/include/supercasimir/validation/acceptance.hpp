#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "supercasimir/lifshitz/pressure.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"
#include "supercasimir/materials/permittivity.hpp"
#include "supercasimir/scenarios/builtin.hpp"
#include "supercasimir/scenarios/sweep.hpp"
#include "supercasimir/validation/oracles.hpp"

namespace supercasimir::validation {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  unsigned threads = 0;
  PressureSolver solver;
  explicit Context(unsigned t = 0) : threads(t), solver(make_options(t)) {}

  static PressureOptions make_options(unsigned t) {
    PressureOptions o;
    o.threads = t;
    return o;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s = 0.0;  // 0: none
  std::function<Outcome(Context&)> run;
};

struct Report {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, f, v);
  return buffer;
}
inline std::string mpa(double pa) { return fmt("%.4g", pa * 1e3) + " mPa"; }

inline bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

struct Check {
  bool pass = true;
  std::string text;
  void add(bool ok, const std::string& what) {
    pass = pass && ok;
    text += (text.empty() ? "" : "; ") + what + (ok ? "" : " [FAIL]");
  }
  Outcome done() const { return {pass, text}; }
};

inline const BcsParams& al() {
  static const BcsParams p = std::get<Bcs>(default_catalog().get("Al")).params;
  return p;
}
inline const BcsParams& nbtin() {
  static const BcsParams p = std::get<Bcs>(default_catalog().get("NbTiN")).params;
  return p;
}
inline MaterialModel au() { return default_catalog().get("Au"); }

inline CavityConfig halfspaces(MaterialModel m1, MaterialModel m2, double a, double T) {
  return {HalfSpace{std::move(m1)}, HalfSpace{std::move(m2)}, a, T};
}

// Error accounting: combined reported bound below 1e-3 |delta|.
inline void check_bound(Check& c, const DeltaResult& d, const std::string& what) {
  const double ratio = d.error_bound_Pa() / std::abs(d.delta_Pa);
  c.add(ratio < 1e-3, what + " bound/|dP|=" + fmt("%.1e", ratio));
}

inline SweepTable sweep(Context& ctx, const std::string& name) {
  return run_sweep(std::get<SweepSpec>(builtin_scenario(name)), ctx.solver);
}

// max |value| over rows of one series with T < T_ref (value != 0).
inline double max_abs(const SweepTable& t, const std::string& series) {
  double m = 0.0;
  for (const auto& r : t.rows) {
    if (r.series == series) m = std::max(m, std::abs(r.value));
  }
  return m;
}

}  // namespace detail

inline std::vector<Criterion> criteria() {
  using namespace detail;
  std::vector<Criterion> list;

  list.push_back({"ideal_mirror", "perfect-conductor cavity a=100 nm T=1 K gives -13.00 Pa within 0.5%", 5.0,
                  [](Context& ctx) {
                    const auto r = ctx.solver.pressure(
                        halfspaces(PerfectConductor{}, PerfectConductor{}, 100, 1.0));
                    const double ideal = oracle::ideal_casimir_pressure(100);
                    Check c;
                    c.add(within(r.pressure_Pa, ideal, 5e-3),
                          "P=" + fmt("%.6g", r.pressure_Pa) + " Pa vs " + fmt("%.6g", ideal) + " Pa");
                    return c.done();
                  }});

  list.push_back({"al_normal_magnitude", "Drude Al half-spaces a=100 nm T=1.2 K: |P| = 6.8 Pa +-5%", 60.0,
                  [](Context& ctx) {
                    const auto r = ctx.solver.pressure(
                        halfspaces(Drude{al().drude}, Drude{al().drude}, 100, 1.2));
                    Check c;
                    c.add(within(std::abs(r.pressure_Pa), 6.8, 0.05),
                          "|P|=" + fmt("%.5g", std::abs(r.pressure_Pa)) + " Pa");
                    return c.done();
                  }});

  list.push_back({"fig3_bound", "Al-Al: |dP| < 0.05 mPa for T < Tc and dP <= normal-state dP", 900.0,
                  [](Context& ctx) {
                    const auto t = sweep(ctx, "fig3");
                    Check c;
                    double worst = 0.0;
                    bool ordered = true;
                    bool all_ok = true;
                    for (const auto& r : t.rows) {
                      if (r.status == "ok" || r.status == "unresolved") {
                        worst = std::max(worst, std::abs(r.value));
                        if (r.axis_value < 1.2 && !(r.value <= r.normal_value)) ordered = false;
                      } else {
                        all_ok = false;
                      }
                    }
                    c.add(all_ok, "all " + std::to_string(t.rows.size()) + " points evaluated");
                    c.add(worst < 0.05, "max|dP|=" + fmt("%.4g", worst) + " mPa");
                    c.add(ordered, "as_modeled below normal state at every T < Tc");
                    return c.done();
                  }});

  list.push_back({"fig4_endpoints",
                  "Al films on SiN, T=0.5Tc: w=18 nm -> -0.023 mPa +-25%; w=250 nm -> -0.041 mPa +-15%", 0.0,
                  [](Context& ctx) {
                    Check c;
                    const auto& db = default_catalog();
                    for (auto [w, target, tol] : {std::tuple{18.0, -0.023e-3, 0.25}, {250.0, -0.041e-3, 0.15}}) {
                      CavityConfig f{Film{db.get("Al"), w, db.get("SiN")}, Film{db.get("Al"), w, db.get("SiN")},
                                     100, 0.6};
                      const auto d = ctx.solver.delta_pressure(f, 0.6, 1.2);
                      c.add(within(d.delta_Pa, target, tol),
                            "w=" + fmt("%g", w) + " nm dP=" + mpa(d.delta_Pa) + " (target " + mpa(target) + ")");
                      check_bound(c, d, "w=" + fmt("%g", w));
                    }
                    return c.done();
                  }});

  list.push_back({"fig5_ratio", "max|dP| NbTiN-NbTiN / Al-Al at a=100 nm is 5 +- 1", 0.0,
                  [](Context& ctx) {
                    auto spec5 = std::get<SweepSpec>(builtin_scenario("fig5"));
                    spec5.mode = SweepMode::as_modeled;
                    spec5.series.resize(1);  // eps0 = 1
                    auto spec3 = std::get<SweepSpec>(builtin_scenario("fig3"));
                    spec3.mode = SweepMode::as_modeled;
                    const double nb = max_abs(run_sweep(spec5, ctx.solver), spec5.series[0].label);
                    const double al = max_abs(run_sweep(spec3, ctx.solver), spec3.series[0].label);
                    Check c;
                    c.add(std::abs(nb / al - 5.0) <= 1.0, "NbTiN " + fmt("%.4g", nb) + " mPa / Al " +
                                                              fmt("%.4g", al) + " mPa = " + fmt("%.3f", nb / al));
                    return c.done();
                  }});

  list.push_back({"fig6_au_nbtin",
                  "Au-NbTiN a=100 nm: max|dP| = 0.42 mPa +-15%; dP(0.5Tc) = -0.36 mPa +-15%; "
                  "|dP|/|P(Tc)| within x1.5 of 8e-5",
                  0.0, [](Context& ctx) {
                    Check c;
                    const auto t = sweep(ctx, "fig6");
                    const double peak = max_abs(t, "eps0=1");
                    c.add(within(peak, 0.42, 0.15), "max|dP|=" + fmt("%.4g", peak) + " mPa");
                    const auto cav = halfspaces(au(), Bcs{nbtin()}, 100, 0.5 * nbtin().tc_K);
                    const auto d = ctx.solver.delta_pressure(cav, 0.5 * nbtin().tc_K, nbtin().tc_K);
                    c.add(within(d.delta_Pa, -0.36e-3, 0.15), "dP(0.5Tc)=" + mpa(d.delta_Pa));
                    check_bound(c, d, "0.5Tc");
                    const double frac = std::abs(d.delta_Pa) / std::abs(d.at_ref.pressure_Pa);
                    c.add(frac >= 8e-5 / 1.5 && frac <= 8e-5 * 1.5,
                          "|dP|/|P(Tc)|=" + fmt("%.3g", frac) + " (P(Tc)=" + fmt("%.5g", d.at_ref.pressure_Pa) +
                              " Pa)");
                    return c.done();
                  }});

  list.push_back({"separation_rrr", "Au-NbTiN T=0.5Tc: a=60 nm -> -0.77 mPa +-15%; with RRR_Au=3 -> -0.98 mPa +-15%",
                  0.0, [](Context& ctx) {
                    Check c;
                    const double T = 0.5 * nbtin().tc_K;
                    for (auto [rrr, target] : {std::pair{1.0, -0.77e-3}, {3.0, -0.98e-3}}) {
                      auto cav = halfspaces(au(), Bcs{nbtin()}, 60, T);
                      apply_override(cav, "rrr_au", fmt("%g", rrr));
                      const auto d = ctx.solver.delta_pressure(cav, T, nbtin().tc_K);
                      c.add(within(d.delta_Pa, target, 0.15),
                            "RRR_Au=" + fmt("%g", rrr) + " dP=" + mpa(d.delta_Pa) + " (target " + mpa(target) + ")");
                      check_bound(c, d, "RRR_Au=" + fmt("%g", rrr));
                    }
                    return c.done();
                  }});

  list.push_back({"eps0_insensitivity", "Au-NbTiN dP changes < 5% between NbTiN eps0=1 and eps0=10", 0.0,
                  [](Context& ctx) {
                    Check c;
                    const double tc = nbtin().tc_K;
                    for (double t : {0.2, 0.5, 0.8}) {
                      double v[2];
                      for (int i = 0; i < 2; ++i) {
                        auto cav = halfspaces(au(), Bcs{nbtin()}, 100, t * tc);
                        apply_override(cav, "core_eps", i == 0 ? "1" : "10");
                        v[i] = ctx.solver.delta_pressure(cav, t * tc, tc).delta_Pa;
                      }
                      const double change = std::abs(v[1] - v[0]) / std::abs(v[0]);
                      c.add(change < 0.05, "T=" + fmt("%g", t) + "Tc: " + mpa(v[0]) + " vs " + mpa(v[1]) + " (" +
                                               fmt("%.2f", 100 * change) + "%)");
                    }
                    return c.done();
                  }});

  list.push_back({"twofluid_comparison",
                  "Au-NbTiN a=100 nm T=0.1Tc: two-fluid dP = -265 mPa +-15%; |two-fluid/BCS| > 600", 0.0,
                  [](Context& ctx) {
                    const auto t = sweep(ctx, "twofluid_comparison");
                    double bcs = 0.0, tf = 0.0;
                    for (const auto& r : t.rows) (r.series == "bcs" ? bcs : tf) = r.value;
                    Check c;
                    c.add(within(tf, -265.0, 0.15), "two-fluid dP=" + fmt("%.4g", tf) + " mPa");
                    c.add(std::abs(tf / bcs) > 600.0, "BCS dP=" + fmt("%.4g", bcs) + " mPa, ratio " +
                                                          fmt("%.0f", std::abs(tf / bcs)));
                    return c.done();
                  }});

  list.push_back({"dirty_limit", "l/xi0: Al 5.7e-3, NbTiN 1.4e-2 within 2%", 0.0, [](Context&) {
                    Check c;
                    const double ral = dirty_limit_ratio(al());
                    // The NbTiN target corresponds to hbar*gamma = 0.465 eV, i.e. RRR = 1.
                    BcsParams nb = nbtin();
                    nb.drude.rrr = 1.0;
                    const double rnb = dirty_limit_ratio(nb);
                    c.add(within(ral, 5.7e-3, 0.02), "Al " + fmt("%.4g", ral));
                    c.add(within(rnb, 1.4e-2, 0.02), "NbTiN " + fmt("%.4g", rnb));
                    return c.done();
                  }});

  list.push_back({"g_properties",
                  "g >= 0, g = 0 at Tc, 0 < g(0) < 1, g strictly decreasing on 200 log points over [1e-3, 1e3] 2Delta",
                  0.0, [](Context&) {
                    Check c;
                    for (const auto* p : {&al(), &nbtin()}) {
                      const std::string name = p == &al() ? "Al" : "NbTiN";
                      c.add(g_function(1e-3, p->tc_K, *p) == 0.0 && g_function(0.0, p->tc_K, *p) == 0.0,
                            name + " g(Tc)=0");
                      for (double t : {0.1, 0.5, 0.9}) {
                        const double g0 = g_function(0.0, t * p->tc_K, *p);
                        c.add(g0 > 0 && g0 < 1, name + " g(0;" + fmt("%g", t) + "Tc)=" + fmt("%.4g", g0));
                      }
                      // Strict decrease is checked at 0.1 Tc: closer to Tc, g rises slightly
                      // just above xi = 0 before decaying.
                      const double T = 0.1 * p->tc_K;
                      const double two_gap = 2.0 * bcs_gap(p->tc_K, T);
                      double prev = g_function(0.0, T, *p);
                      bool positive = prev > 0, decreasing = true;
                      const auto xs = log_grid(1e-3, 1e3, 200);
                      for (double x : xs) {
                        const double g = g_function(x * two_gap, T, *p);
                        positive = positive && g >= 0;
                        decreasing = decreasing && g < prev;
                        prev = g;
                      }
                      c.add(positive, name + " g >= 0 on grid");
                      c.add(decreasing, name + " strictly decreasing at 0.1Tc");
                    }
                    return c.done();
                  }});

  list.push_back({"permittivity_ordering",
                  "NbTiN at T/Tc in {0.1, 0.9}, xi/2Delta in [1e-2, 1e2]: two-fluid >= BCS >= Drude", 0.0,
                  [](Context&) {
                    Check c;
                    const auto& p = nbtin();
                    for (double t : {0.1, 0.9}) {
                      const double T = t * p.tc_K;
                      const double two_gap = 2.0 * bcs_gap(p.tc_K, T);
                      bool ok = true;
                      for (double x : log_grid(1e-2, 1e2, 81)) {
                        const double xi = x * two_gap;
                        const double drude = drude_permittivity(p.drude, xi);
                        const double bcs = permittivity(Bcs{p}, xi, T);
                        const double tf = permittivity(TwoFluid{p}, xi, T);
                        ok = ok && tf >= bcs && bcs >= drude && drude >= 1;
                      }
                      c.add(ok, "T=" + fmt("%g", t) + "Tc");
                    }
                    return c.done();
                  }});

  list.push_back({"mirror_swap", "P(m1, m2) == P(m2, m1) bit for bit", 0.0, [](Context& ctx) {
                    Check c;
                    const auto& db = default_catalog();
                    const std::vector<std::pair<Mirror, Mirror>> pairs = {
                        {HalfSpace{au()}, HalfSpace{Bcs{nbtin()}}},
                        {Film{Bcs{nbtin()}, 30, db.get("SiN")}, HalfSpace{au()}},
                        {HalfSpace{PerfectConductor{}}, HalfSpace{ConstantDielectric{7.6}}}};
                    for (const auto& [m1, m2] : pairs) {
                      const double p12 = ctx.solver.pressure({m1, m2, 200, 6.8}).pressure_Pa;
                      const double p21 = ctx.solver.pressure({m2, m1, 200, 6.8}).pressure_Pa;
                      c.add(p12 == p21, fmt("%.17g", p12) + " vs " + fmt("%.17g", p21));
                    }
                    return c.done();
                  }});

  list.push_back({"pressure_oracle", "adaptive pressure matches brute force to 1e-6 on 5 configurations", 0.0,
                  [](Context& ctx) {
                    Check c;
                    const auto& db = default_catalog();
                    const BcsParams nb = nbtin();
                    const std::vector<CavityConfig> configs = {
                        halfspaces(au(), au(), 1000, 300),
                        halfspaces(au(), Bcs{nb}, 2000, 6.8),
                        {Film{au(), 20, db.get("SiN")}, HalfSpace{au()}, 1000, 300},
                        {Film{TwoFluid{nb}, 50, Vacuum{}}, HalfSpace{Bcs{nb}}, 2000, 6.8},
                        {HalfSpace{PerfectConductor{}}, Film{Bcs{nb}, 30, db.get("SiN")}, 2000, 6.8}};
                    for (const auto& cfg : configs) {
                      const double p = ctx.solver.pressure(cfg).pressure_Pa;
                      const double o = oracle::pressure_brute_force(cfg);
                      c.add(within(p, o, 1e-6), fmt("rel %.1e", std::abs(p - o) / std::abs(o)));
                    }
                    return c.done();
                  }});

  list.push_back({"g_oracle", "g matches a 1e6-point trapezoid oracle to 1e-6 at 20 points per material", 0.0,
                  [](Context&) {
                    Check c;
                    for (const auto* p : {&al(), &nbtin()}) {
                      const double two_gap0 = 2.0 * zero_temperature_gap(p->tc_K);
                      double worst = 0.0;
                      for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                        for (double x : {0.0, 1e-2, 1.0, 1e2}) {
                          const double T = t * p->tc_K;
                          const double g = g_function(x * two_gap0, T, *p);
                          // xi -> 0+ is compared at a frequency far below every scale.
                          const double xi = x > 0 ? x * two_gap0 : 1e-9 * two_gap0;
                          const double o = oracle::g_trapezoid(xi, T, *p);
                          worst = std::max(worst, std::abs(g - o) / std::abs(o));
                        }
                      }
                      c.add(worst < 1e-6, (p == &al() ? "Al" : "NbTiN") + fmt(" worst rel %.1e", worst));
                    }
                    return c.done();
                  }});

  list.push_back({"determinism", "sweep CSV is bit-identical for 1, 2 and 4 threads", 0.0, [](Context&) {
                    auto spec = std::get<SweepSpec>(builtin_scenario("fig8"));
                    spec.points = {1.0, 2.5, 7.0};
                    spec.mode = SweepMode::both;
                    std::vector<std::string> csv;
                    for (unsigned threads : {1u, 2u, 4u}) {
                      PressureOptions o;
                      o.threads = threads;
                      csv.push_back(to_csv(run_sweep(spec, o)));
                    }
                    Check c;
                    c.add(csv[0] == csv[1] && csv[0] == csv[2], std::to_string(csv[0].size()) + " bytes compared");
                    return c.done();
                  }});

  return list;
}

/// Runs the named criteria (all when `only` is empty), timing each.
inline std::vector<Report> run(const std::vector<std::string>& only, unsigned threads,
                               const std::function<void(const Report&)>& on_result = {}) {
  Context ctx(threads);
  std::vector<Report> reports;
  for (const auto& cr : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
    Report r{cr.id, cr.title};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = cr.run(ctx);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit_s > 0 && r.seconds > cr.time_limit_s) {
      r.pass = false;
      r.detail += "; runtime " + detail::fmt("%.1f", r.seconds) + " s over " +
                  detail::fmt("%g", cr.time_limit_s) + " s [FAIL]";
    }
    if (on_result) on_result(r);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace supercasimir::validation
