// supercasimir: Casimir pressure across a superconducting transition.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/lifshitz/pressure.hpp"
#include "supercasimir/scenarios/builtin.hpp"
#include "supercasimir/scenarios/material_db.hpp"
#include "supercasimir/scenarios/response.hpp"
#include "supercasimir/scenarios/scenario_file.hpp"
#include "supercasimir/scenarios/sweep.hpp"
#include "supercasimir/validation/acceptance.hpp"

namespace sc = supercasimir;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kValidation = 3 };

struct CavityFlags {
  std::string scenario;  // builtin name or file
  std::string config;    // scenario file
  std::string material1, material2;
  std::optional<double> w1_nm, w2_nm;
  std::string substrate1, substrate2;
  std::optional<double> a_nm, T_K, T_over_Tc, T_ref_K;
  std::optional<double> core_eps, rrr_sc, rrr_au, substrate_eps;
  std::string sc_model;
  std::string series;
};

struct Common {
  unsigned threads = 0;
  std::string materials;
  std::string out;
};

void add_cavity_flags(CLI::App* cmd, CavityFlags& f) {
  cmd->add_option("--scenario", f.scenario, "builtin scenario name or scenario file");
  cmd->add_option("--config", f.config, "scenario file (flags given here win)");
  cmd->add_option("--series", f.series, "series label to take from the scenario (default: first)");
  cmd->add_option("--material1", f.material1, "material of mirror 1");
  cmd->add_option("--material2", f.material2, "material of mirror 2");
  cmd->add_option("--w1-nm", f.w1_nm, "film thickness of mirror 1 (nm); omit for a half-space");
  cmd->add_option("--w2-nm", f.w2_nm, "film thickness of mirror 2 (nm)");
  cmd->add_option("--substrate1", f.substrate1, "substrate material under film 1 (default vacuum)");
  cmd->add_option("--substrate2", f.substrate2, "substrate material under film 2");
  cmd->add_option("--a-nm", f.a_nm, "gap width a (nm)");
  auto* tk = cmd->add_option("--T-K", f.T_K, "temperature (K)");
  auto* tr = cmd->add_option("--T-over-Tc", f.T_over_Tc, "temperature as a fraction of the highest Tc");
  tk->excludes(tr);
  tr->excludes(tk);
  cmd->add_option("--core-eps", f.core_eps, "eps0 of every superconducting layer");
  cmd->add_option("--rrr-sc", f.rrr_sc, "RRR of every superconducting layer");
  cmd->add_option("--rrr-au", f.rrr_au, "RRR of every normal-metal layer");
  cmd->add_option("--substrate-eps", f.substrate_eps, "constant permittivity of every film substrate");
  cmd->add_option("--sc-model", f.sc_model, "superconductor model: bcs or twofluid")
      ->check(CLI::IsMember({"bcs", "twofluid"}));
}

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  cmd->add_option("--threads", c.threads, "worker threads (0: hardware concurrency)");
  cmd->add_option("--materials", c.materials, "material database (default: $SUPERCASIMIR_MATERIALS or built-in)");
  if (with_out) cmd->add_option("--out", c.out, "output file (default: stdout)");
}

sc::MaterialCatalog catalog_for(const Common& c) {
  if (!c.materials.empty()) return sc::load_materials(c.materials);
  return sc::environment_catalog();
}

bool is_builtin(const std::string& name) {
  for (const auto& n : sc::builtin_names()) {
    if (n == name) return true;
  }
  return false;
}

// Builtin name or file path.
sc::Scenario resolve_scenario(const std::string& ref, const sc::MaterialCatalog& db, bool require_sweep) {
  if (is_builtin(ref)) return sc::builtin_scenario(ref);
  return sc::load_scenario(ref, db, require_sweep);
}

struct Resolved {
  sc::CavityConfig cavity;
  std::optional<double> T_ref_K;
};

// Scenario / config first, then individual flags on top.
Resolved resolve_cavity(const CavityFlags& f, const sc::MaterialCatalog& db) {
  if (!f.scenario.empty() && !f.config.empty()) throw sc::ConfigError("give either --scenario or --config");
  std::optional<sc::SweepSeries> base;
  const std::string ref = !f.scenario.empty() ? f.scenario : f.config;
  if (!ref.empty()) {
    const sc::Scenario s = f.config.empty() ? resolve_scenario(ref, db, false)
                                            : sc::Scenario{sc::load_scenario(ref, db, false)};
    if (!std::holds_alternative<sc::SweepSpec>(s)) {
      throw sc::ConfigError("scenario '" + ref + "' describes response curves, not a cavity");
    }
    const auto& spec = std::get<sc::SweepSpec>(s);
    if (f.series.empty()) {
      base = spec.series.front();
    } else {
      for (const auto& ser : spec.series) {
        if (ser.label == f.series) base = ser;
      }
      if (!base) throw sc::ConfigError("scenario '" + ref + "' has no series '" + f.series + "'");
    }
  } else if (!f.series.empty()) {
    throw sc::ConfigError("--series needs --scenario or --config");
  }

  Resolved r;
  if (base) {
    r.cavity = base->cavity;
    r.T_ref_K = base->T_ref_K;
  } else {
    if (f.material1.empty() || f.material2.empty()) {
      throw sc::ConfigError("need --material1 and --material2 (or --scenario / --config)");
    }
    if (!f.a_nm) throw sc::ConfigError("need --a-nm");
    if (!f.T_K && !f.T_over_Tc) throw sc::ConfigError("need --T-K or --T-over-Tc");
  }
  auto mirror = [&](sc::Mirror& m, const std::string& material, const std::optional<double>& w,
                    const std::string& substrate, const char* which) {
    if (material.empty() && !w && substrate.empty()) return;
    const auto layers = sc::materials_of(m);
    sc::MaterialModel top = material.empty() ? *layers[0] : db.get(material);
    std::optional<double> thickness = w;
    if (!thickness && !material.empty() && std::holds_alternative<sc::Film>(m) && base) {
      thickness = std::get<sc::Film>(m).thickness_nm;
    }
    if (!thickness) {
      if (!substrate.empty()) throw sc::ConfigError(std::string("--substrate") + which + " needs --w" + which + "-nm");
      m = sc::HalfSpace{top};
      return;
    }
    sc::MaterialModel sub = sc::Vacuum{};
    if (!substrate.empty()) sub = db.get(substrate);
    else if (const auto* film = std::get_if<sc::Film>(&m); film && base) sub = film->substrate;
    m = sc::Film{top, *thickness, sub};
  };
  mirror(r.cavity.mirror1, f.material1, f.w1_nm, f.substrate1, "1");
  mirror(r.cavity.mirror2, f.material2, f.w2_nm, f.substrate2, "2");

  auto num = [](double v) { return sc::detail::exact(v); };
  if (f.a_nm) sc::apply_override(r.cavity, "a_nm", num(*f.a_nm));
  if (f.core_eps) sc::apply_override(r.cavity, "core_eps", num(*f.core_eps));
  if (f.rrr_sc) sc::apply_override(r.cavity, "rrr_sc", num(*f.rrr_sc));
  if (f.rrr_au) sc::apply_override(r.cavity, "rrr_au", num(*f.rrr_au));
  if (f.substrate_eps) sc::apply_override(r.cavity, "substrate_eps", num(*f.substrate_eps));
  if (!f.sc_model.empty()) sc::apply_override(r.cavity, "sc_model", f.sc_model);
  if (f.T_K) sc::apply_override(r.cavity, "T_K", num(*f.T_K));
  if (f.T_over_Tc) sc::apply_override(r.cavity, "T_over_Tc", num(*f.T_over_Tc));
  if (f.T_ref_K) r.T_ref_K = *f.T_ref_K;
  sc::validate(r.cavity);
  return r;
}

void warn_dirty_limit(const sc::CavityConfig& c) {
  for (const sc::Mirror* m : {&c.mirror1, &c.mirror2}) {
    for (const auto* mat : sc::materials_of(*m)) {
      if (const auto* p = sc::superconductor_params(*mat)) {
        const double ratio = sc::dirty_limit_ratio(*p);
        if (ratio >= 0.1) {
          std::fprintf(stderr, "warning: l/xi0 = %.3g >= 0.1, local response is questionable\n", ratio);
        }
      }
    }
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw sc::ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string sci(double v) { return sc::detail::sci(v); }

sc::PressureSolver make_solver(const Common& c) {
  sc::PressureOptions o;
  o.threads = c.threads;
  return sc::PressureSolver(o);
}

void print_pressure(std::ostream& out, const std::string& prefix, const sc::PressureResult& r) {
  out << prefix << "P_Pa = " << sci(r.pressure_Pa) << "\n"
      << prefix << "error_bound_Pa = " << sci(r.error_bound_Pa()) << "\n"
      << prefix << "quad_error_Pa = " << sci(r.quad_error_Pa) << "\n"
      << prefix << "truncation_bound_Pa = " << sci(r.sum_diag.truncation_bound) << "\n"
      << prefix << "matsubara_terms = " << r.sum_diag.terms_used << "\n"
      << prefix << "last_term_ratio = " << sci(r.sum_diag.last_term_ratio) << "\n";
}

int cmd_pressure(const CavityFlags& f, const Common& c, const std::string& mode) {
  const auto db = catalog_for(c);
  auto r = resolve_cavity(f, db);
  if (mode == "force_normal_state") r.cavity = sc::with_normal_state(r.cavity);
  warn_dirty_limit(r.cavity);
  auto solver = make_solver(c);
  const auto p = solver.pressure(r.cavity);
  Output out(c.out);
  out.stream() << "cavity = " << sc::describe(r.cavity) << "\n";
  print_pressure(out.stream(), "", p);
  return kOk;
}

int cmd_delta(const CavityFlags& f, const Common& c, const std::string& mode) {
  const auto db = catalog_for(c);
  const auto r = resolve_cavity(f, db);
  warn_dirty_limit(r.cavity);
  const double T = r.cavity.temperature_K;
  const double T_ref = r.T_ref_K ? *r.T_ref_K : sc::reference_temperature(r.cavity);
  auto solver = make_solver(c);
  const auto d = solver.delta_pressure(
      r.cavity, T, T_ref, mode == "force_normal_state" ? sc::DeltaMode::force_normal_state : sc::DeltaMode::as_modeled);
  if (!d.resolved()) std::fprintf(stderr, "warning: |deltaP| is below 10x the combined error bounds\n");
  Output out(c.out);
  auto& o = out.stream();
  o << "cavity = " << sc::describe(r.cavity) << "\n"
    << "mode = " << mode << "\n"
    << "T_K = " << sci(T) << "\n"
    << "T_ref_K = " << sci(T_ref) << "\n"
    << "deltaP_mPa = " << sci(d.delta_Pa * 1e3) << "\n"
    << "error_bound_mPa = " << sci(d.error_bound_Pa() * 1e3) << "\n";
  print_pressure(o, "at_T.", d.at_T);
  print_pressure(o, "at_T_ref.", d.at_ref);
  return kOk;
}

int cmd_sweep(const std::string& builtin, const std::string& scenario, const std::string& config,
              const std::string& mode, const Common& c) {
  const int given = !builtin.empty() + !scenario.empty() + !config.empty();
  if (given != 1) throw sc::ConfigError("sweep needs exactly one of --builtin, --scenario, --config");
  const auto db = catalog_for(c);
  sc::Scenario s = !builtin.empty() ? sc::builtin_scenario(builtin)
                   : !scenario.empty() ? resolve_scenario(scenario, db, true)
                                       : sc::Scenario{sc::load_scenario(config, db, true)};
  Output out(c.out);
  if (auto* r = std::get_if<sc::ResponseSpec>(&s)) {
    r->threads = c.threads;
    sc::write_csv(out.stream(), sc::run_response(*r));
    return kOk;
  }
  auto& spec = std::get<sc::SweepSpec>(s);
  if (!mode.empty()) spec.mode = sc::parse_mode(mode);
  for (const auto& ser : spec.series) warn_dirty_limit(ser.cavity);
  auto solver = make_solver(c);
  const auto table = sc::run_sweep(spec, solver);
  sc::write_csv(out.stream(), table);
  std::size_t failed = 0;
  for (const auto& row : table.rows) failed += row.status.rfind("failed", 0) == 0;
  if (failed) std::fprintf(stderr, "warning: %zu of %zu points failed (see status column)\n", failed, table.rows.size());
  return kOk;
}

int cmd_response(const std::string& builtin, const Common& c) {
  sc::Scenario s = sc::builtin_scenario(builtin);
  auto* r = std::get_if<sc::ResponseSpec>(&s);
  if (!r) throw sc::ConfigError("'" + builtin + "' is not a response scenario (fig1, fig2)");
  r->threads = c.threads;
  Output out(c.out);
  sc::write_csv(out.stream(), sc::run_response(*r));
  return kOk;
}

int cmd_validate(const std::vector<std::string>& only, bool list, unsigned threads) {
  const auto all = sc::validation::criteria();
  if (list) {
    for (const auto& cr : all) std::printf("%-22s %s\n", cr.id.c_str(), cr.title.c_str());
    return kOk;
  }
  for (const auto& id : only) {
    bool known = false;
    for (const auto& cr : all) known = known || cr.id == id;
    if (!known) throw sc::ConfigError("unknown criterion '" + id + "' (see validate --list)");
  }
  bool all_pass = true;
  sc::validation::run(only, threads, [&](const sc::validation::Report& r) {
    std::printf("%s  %-22s %8.1f s  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  });
  return all_pass ? kOk : kValidation;
}

int cmd_materials(const Common& c) {
  const auto db = catalog_for(c);
  Output out(c.out);
  out.stream() << "vacuum vacuum\n";
  for (const auto& e : db.entries()) {
    out.stream() << e.name << " " << sc::describe(e.model) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir pressure between plane mirrors across a superconducting transition"};
  app.set_version_flag("--version", std::string(sc::kVersion));
  app.require_subcommand(1);

  CavityFlags pflags, dflags;
  Common pcommon, dcommon, scommon, rcommon, vcommon, mcommon;
  std::string pmode = "as_modeled", dmode = "as_modeled", smode;
  std::string sbuiltin, sscenario, sconfig, rbuiltin;
  std::vector<std::string> only;
  bool list = false;

  auto* pressure = app.add_subcommand("pressure", "Lifshitz pressure of one cavity");
  add_cavity_flags(pressure, pflags);
  add_common(pressure, pcommon, true);
  pressure->add_option("--mode", pmode, "as_modeled or force_normal_state")
      ->check(CLI::IsMember({"as_modeled", "force_normal_state"}));

  auto* delta = app.add_subcommand("delta", "pressure change P(T) - P(T_ref), T_ref defaults to Tc");
  add_cavity_flags(delta, dflags);
  add_common(delta, dcommon, true);
  delta->add_option("--T-ref-K", dflags.T_ref_K, "reference temperature (K)");
  delta->add_option("--mode", dmode, "as_modeled or force_normal_state")
      ->check(CLI::IsMember({"as_modeled", "force_normal_state"}));

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
  sweep->add_option("--builtin", sbuiltin, "builtin scenario name");
  sweep->add_option("--scenario", sscenario, "builtin scenario name or scenario file");
  sweep->add_option("--config", sconfig, "scenario file");
  sweep->add_option("--mode", smode, "override: as_modeled, force_normal_state or both");
  add_common(sweep, scommon, true);

  auto* response = app.add_subcommand("response", "write g(xi) or eps(i xi) curves as CSV");
  response->add_option("--builtin", rbuiltin, "fig1 (g) or fig2 (permittivities)")->required();
  add_common(response, rcommon, true);

  auto* validate = app.add_subcommand("validate", "run the acceptance checks and print a pass/fail table");
  validate->add_option("--only", only, "criterion id (repeatable)");
  validate->add_flag("--list", list, "list criterion ids");
  validate->add_option("--threads", vcommon.threads, "worker threads (0: hardware concurrency)");

  auto* materials = app.add_subcommand("materials", "list the material catalog");
  add_common(materials, mcommon, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }

  try {
    if (*pressure) return cmd_pressure(pflags, pcommon, pmode);
    if (*delta) return cmd_delta(dflags, dcommon, dmode);
    if (*sweep) return cmd_sweep(sbuiltin, sscenario, sconfig, smode, scommon);
    if (*response) return cmd_response(rbuiltin, rcommon);
    if (*validate) return cmd_validate(only, list, vcommon.threads);
    if (*materials) return cmd_materials(mcommon);
  } catch (const sc::NumericalError& e) {
    std::fprintf(stderr, "error: numerical failure: %s (best estimate %.6g, error bound %.3g)\n", e.what(),
                 e.best_estimate(), e.error_bound());
    return kNumerical;
  } catch (const sc::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const sc::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
