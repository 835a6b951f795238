#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/lifshitz/pressure.hpp"
#include "supercasimir/scenarios/builtin.hpp"
#include "supercasimir/scenarios/material_db.hpp"
#include "supercasimir/scenarios/response.hpp"
#include "supercasimir/scenarios/scenario_file.hpp"
#include "supercasimir/scenarios/sweep.hpp"

namespace sc = supercasimir;

namespace {

// Expects a ConfigError whose message contains every fragment.
template <class Fn>
void expect_config_error(Fn&& fn, std::initializer_list<const char*> fragments) {
  try {
    fn();
    ADD_FAILURE() << "no ConfigError";
  } catch (const sc::ConfigError& e) {
    const std::string what = e.what();
    for (const char* f : fragments) EXPECT_NE(what.find(f), std::string::npos) << what << " lacks '" << f << "'";
  }
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

const sc::BcsParams& params_of(const sc::Mirror& m) {
  const auto& mat = std::holds_alternative<sc::HalfSpace>(m) ? std::get<sc::HalfSpace>(m).material
                                                             : std::get<sc::Film>(m).film;
  return *sc::superconductor_params(mat);
}

}  // namespace

TEST(MaterialDb, DefaultCatalog) {
  const auto& db = sc::default_catalog();
  const auto au = std::get<sc::Drude>(db.get("Au")).params;
  EXPECT_EQ(au.omega_p_eV, 9.0);
  EXPECT_EQ(au.gamma0_eV, 0.035);
  EXPECT_EQ(au.eps0, 6.3);
  EXPECT_EQ(au.rrr, 1.0);
  const auto al = std::get<sc::Bcs>(db.get("Al")).params;
  EXPECT_EQ(al.drude.omega_p_eV, 13.0);
  EXPECT_EQ(al.drude.gamma0_eV, 0.1);
  EXPECT_EQ(al.drude.eps0, 1.03);
  EXPECT_EQ(al.tc_K, 1.2);
  const auto nb = std::get<sc::Bcs>(db.get("NbTiN")).params;
  EXPECT_EQ(nb.drude.omega_p_eV, 5.33);
  EXPECT_EQ(nb.drude.gamma0_eV, 0.465);
  EXPECT_EQ(nb.drude.rrr, 1.12);
  EXPECT_EQ(nb.tc_K, 13.6);
  EXPECT_TRUE(std::holds_alternative<sc::Vacuum>(db.get("vacuum")));
}

TEST(MaterialDb, ShippedFileMatchesBuiltIn) {
  const auto file = sc::load_materials(std::string(SUPERCASIMIR_DATA_DIR) + "/materials.db");
  const auto& builtin = sc::default_catalog();
  ASSERT_EQ(file.entries().size(), builtin.entries().size());
  for (std::size_t i = 0; i < file.entries().size(); ++i) {
    EXPECT_EQ(file.entries()[i].name, builtin.entries()[i].name);
    EXPECT_EQ(sc::describe(file.entries()[i].model), sc::describe(builtin.entries()[i].model));
  }
}

TEST(MaterialDb, Errors) {
  expect_config_error([] { sc::parse_materials(""); }, {"no materials"});
  expect_config_error([] { sc::parse_materials("# only a comment\n\n"); }, {"no materials"});
  expect_config_error(
      [] {
        sc::parse_materials("name=X model=dielectric eps=2\nname=Y model=perfect\nname=X model=perfect\n");
      },
      {"line 3", "duplicate material 'X'", "line 1"});
  expect_config_error([] { sc::parse_materials("name=X model=drude omega_p_eV=1 gamma0_eV=1 colour=red"); },
                      {"line 1", "unknown key 'colour'"});
  expect_config_error([] { sc::parse_materials("\nname=X model=drude omega_p_eV=1 gamma0_eV=1 tc_K=3"); },
                      {"line 2", "tc_K", "does not apply"});
  expect_config_error([] { sc::parse_materials("name=X model=drude omega_p_eV=abc gamma0_eV=1"); },
                      {"line 1", "omega_p_eV"});
  expect_config_error([] { sc::parse_materials("name=X model=drude gamma0_eV=1"); }, {"missing key 'omega_p_eV'"});
  expect_config_error([] { sc::parse_materials("name=X model=drude omega_p_eV=-1 gamma0_eV=1"); },
                      {"line 1", "omega_p"});
  expect_config_error([] { sc::parse_materials("name=vacuum model=perfect"); }, {"built in"});
  expect_config_error([] { sc::parse_materials("name=X model=plasma"); }, {"unknown model 'plasma'"});
  expect_config_error([] { sc::parse_materials("name=X model=perfect name=Y"); }, {"given twice"});
  expect_config_error([] { sc::parse_materials("name=X model=bcs omega_p_eV=1 gamma0_eV=1"); }, {"tc_K"});
  expect_config_error([] { sc::load_materials("/nonexistent/materials.db"); }, {"cannot open"});
  expect_config_error([] { sc::default_catalog().get("Pb"); }, {"unknown material 'Pb'", "NbTiN"});
}

TEST(MaterialDb, Defaults) {
  const auto db = sc::parse_materials("name=M model=twofluid omega_p_eV=2 gamma0_eV=0.1 tc_K=9  # trailing");
  const auto p = std::get<sc::TwoFluid>(db.get("M")).params;
  EXPECT_EQ(p.drude.eps0, 1.0);
  EXPECT_EQ(p.drude.rrr, 1.0);
}

TEST(Builtin, UnknownNameListsValidNames) {
  expect_config_error([] { sc::builtin_scenario("fig11"); }, {"fig11", "fig1", "fig10", "twofluid_comparison"});
}

TEST(Builtin, AllValidate) {
  for (const auto& name : sc::builtin_names()) {
    const auto s = sc::builtin_scenario(name);
    if (const auto* spec = std::get_if<sc::SweepSpec>(&s)) {
      EXPECT_NO_THROW(sc::validate(*spec)) << name;
      EXPECT_EQ(spec->name, name);
    } else {
      EXPECT_TRUE(name == "fig1" || name == "fig2");
    }
  }
}

TEST(Builtin, Fig6) {
  const auto s = std::get<sc::SweepSpec>(sc::builtin_scenario("fig6"));
  EXPECT_EQ(s.axis, sc::SweepAxis::temperature);
  EXPECT_EQ(s.mode, sc::SweepMode::both);
  EXPECT_EQ(s.output, sc::SweepOutput::delta_pressure);
  ASSERT_EQ(s.points.size(), 25u);
  EXPECT_DOUBLE_EQ(s.points.front(), 0.05 * 13.6);
  EXPECT_EQ(s.points.back(), 13.6);
  ASSERT_EQ(s.series.size(), 2u);
  for (const auto& ser : s.series) {
    EXPECT_EQ(ser.cavity.gap_nm, 100.0);
    const auto& au = std::get<sc::Drude>(std::get<sc::HalfSpace>(ser.cavity.mirror1).material).params;
    EXPECT_EQ(au.rrr, 1.0);
    EXPECT_EQ(params_of(ser.cavity.mirror2).drude.rrr, 1.12);
  }
  EXPECT_EQ(params_of(s.series[0].cavity.mirror2).drude.eps0, 1.0);
  EXPECT_EQ(params_of(s.series[1].cavity.mirror2).drude.eps0, 10.0);
}

TEST(Builtin, Fig7AndFig10Series) {
  const auto f7 = std::get<sc::SweepSpec>(sc::builtin_scenario("fig7"));
  EXPECT_EQ(f7.axis, sc::SweepAxis::separation);
  ASSERT_EQ(f7.series.size(), 2u);
  EXPECT_EQ(params_of(f7.series[0].cavity.mirror2).drude.rrr, 1.12);
  EXPECT_EQ(params_of(f7.series[1].cavity.mirror2).drude.rrr, 5.0);

  const auto f10 = std::get<sc::SweepSpec>(sc::builtin_scenario("fig10"));
  EXPECT_EQ(f10.axis, sc::SweepAxis::film_thickness);
  ASSERT_EQ(f10.series.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<sc::Vacuum>(std::get<sc::Film>(f10.series[0].cavity.mirror2).substrate));
  EXPECT_EQ(std::get<sc::ConstantDielectric>(std::get<sc::Film>(f10.series[1].cavity.mirror2).substrate).eps, 10.0);
  EXPECT_TRUE(std::holds_alternative<sc::HalfSpace>(f10.series[2].cavity.mirror2));
}

TEST(Builtin, TwoFluidComparison) {
  const auto s = std::get<sc::SweepSpec>(sc::builtin_scenario("twofluid_comparison"));
  ASSERT_EQ(s.series.size(), 2u);
  EXPECT_EQ(s.points, std::vector<double>{0.1 * 13.6});
  EXPECT_TRUE(std::holds_alternative<sc::Bcs>(std::get<sc::HalfSpace>(s.series[0].cavity.mirror2).material));
  EXPECT_TRUE(std::holds_alternative<sc::TwoFluid>(std::get<sc::HalfSpace>(s.series[1].cavity.mirror2).material));
}

TEST(Builtin, ResponseCurves) {
  auto spec = std::get<sc::ResponseSpec>(sc::builtin_scenario("fig1"));
  spec.xi_over_2gap = sc::log_grid(1e-3, 1e3, 13);
  const auto t = sc::run_response(spec);
  ASSERT_EQ(t.rows.size(), 26u);
  EXPECT_EQ(t.columns.back(), "g");
  double prev = INFINITY;
  for (std::size_t i = 0; i < 13; ++i) {
    const double g = std::stod(t.rows[i][4]);
    EXPECT_LT(g, prev);
    prev = g;
  }
  const auto csv = lines(sc::to_csv(t));
  EXPECT_EQ(csv[0], "# supercasimir v" + std::string(sc::kVersion) + " scenario=fig1");
  EXPECT_EQ(csv[2], "series,T_over_Tc,xi_over_2Delta0,xi_eV,g");

  auto f2 = std::get<sc::ResponseSpec>(sc::builtin_scenario("fig2"));
  f2.xi_over_2gap = {1e-2, 1.0, 1e2};
  for (const auto& row : sc::run_response(f2).rows) {
    const double bcs = std::stod(row[4]), two = std::stod(row[5]), drude = std::stod(row[6]);
    EXPECT_GE(two, bcs);
    EXPECT_GE(bcs, drude);
  }
}

TEST(Grids, Endpoints) {
  const auto lin = sc::linear_grid(0.05, 1.0, 25);
  EXPECT_EQ(lin.front(), 0.05);
  EXPECT_EQ(lin.back(), 1.0);
  const auto lg = sc::log_grid(5.0, 2000.0, 23);
  EXPECT_EQ(lg.front(), 5.0);
  EXPECT_EQ(lg.back(), 2000.0);
  EXPECT_NEAR(lg[1] / lg[0], lg[22] / lg[21], 1e-12);
  EXPECT_THROW(sc::log_grid(0.0, 1.0, 3), sc::ConfigError);
  EXPECT_THROW(sc::linear_grid(0.0, 1.0, 0), sc::ConfigError);
}

TEST(Overrides, ApplyAndReject) {
  auto c = std::get<sc::SweepSpec>(sc::builtin_scenario("fig10")).series[0].cavity;
  sc::apply_override(c, "a_nm", "60");
  EXPECT_EQ(c.gap_nm, 60.0);
  sc::apply_override(c, "T_over_Tc", "0.25");
  EXPECT_EQ(c.temperature_K, 0.25 * 13.6);
  sc::apply_override(c, "substrate_eps", "3.5");
  EXPECT_EQ(std::get<sc::ConstantDielectric>(std::get<sc::Film>(c.mirror2).substrate).eps, 3.5);
  sc::apply_override(c, "rrr_au", "3");
  EXPECT_EQ(std::get<sc::Drude>(std::get<sc::HalfSpace>(c.mirror1).material).params.rrr, 3.0);
  sc::set_axis_value(c, sc::SweepAxis::film_thickness, 77.0);
  EXPECT_EQ(std::get<sc::Film>(c.mirror2).thickness_nm, 77.0);

  expect_config_error([&] { sc::apply_override(c, "colour", "1"); }, {"unknown override 'colour'"});
  expect_config_error([&] { sc::apply_override(c, "a_nm", "5"); }, {"out of range"});
  expect_config_error([&] { sc::apply_override(c, "a_nm", "1e2x"); }, {"a_nm"});
  expect_config_error([&] { sc::apply_override(c, "T_over_Tc", "1.5"); }, {"T_over_Tc"});
  expect_config_error([&] { sc::apply_override(c, "sc_model", "gl"); }, {"sc_model"});
  expect_config_error([&] { sc::apply_override(c, "rrr_sc", "0.01"); }, {"out of range"});
}

TEST(SweepSpec, Validation) {
  auto s = std::get<sc::SweepSpec>(sc::builtin_scenario("fig6"));
  s.points = {1.0, 3.0, 2.0};
  expect_config_error([&] { sc::validate(s); }, {"monotone"});
  s.points = {1.0, 14.0};
  expect_config_error([&] { sc::validate(s); }, {"exceeds T_ref"});
  s.points = {};
  expect_config_error([&] { sc::validate(s); }, {"no points"});
  s.points = {-1.0};
  expect_config_error([&] { sc::validate(s); }, {"out of range"});
  s.points = {13.6, 6.8};  // decreasing is fine
  EXPECT_NO_THROW(sc::validate(s));
}

TEST(ScenarioFile, Parses) {
  const auto spec = sc::parse_scenario(R"(
# Au against a NbTiN film
[scenario]
name = thin
[cavity]
a_nm = 120
T_over_Tc = 0.5
[mirror1]
material = Au
[mirror2]
material = NbTiN
w_nm = 40
substrate = SiN
[sweep]
axis = film_thickness
from = 10
to = 1000
count = 5
scale = log
mode = both
[series rrr=1.12]
[series rrr=5]
rrr_sc = 5
)",
                                       sc::default_catalog());
  EXPECT_EQ(spec.name, "thin");
  EXPECT_EQ(spec.axis, sc::SweepAxis::film_thickness);
  EXPECT_EQ(spec.mode, sc::SweepMode::both);
  ASSERT_EQ(spec.points.size(), 5u);
  EXPECT_NEAR(spec.points[2], 100.0, 1e-12);
  ASSERT_EQ(spec.series.size(), 2u);
  EXPECT_EQ(spec.series[0].label, "rrr=1.12");
  EXPECT_EQ(spec.series[1].cavity.temperature_K, 6.8);
  EXPECT_EQ(params_of(spec.series[1].cavity.mirror2).drude.rrr, 5.0);
  EXPECT_EQ(spec.series[0].cavity.gap_nm, 120.0);
  const auto& film = std::get<sc::Film>(spec.series[0].cavity.mirror2);
  EXPECT_EQ(film.thickness_nm, 40.0);
  EXPECT_EQ(std::get<sc::ConstantDielectric>(film.substrate).eps, 7.6);
}

TEST(ScenarioFile, ErrorsCarryLineNumbers) {
  const auto& db = sc::default_catalog();
  const std::string head = "[cavity]\na_nm = 100\nT_K = 1\n[mirror1]\nmaterial = Au\n[mirror2]\nmaterial = NbTiN\n";
  auto parse = [&](const std::string& tail) { return [&, tail] { sc::parse_scenario(head + tail, db); }; };
  expect_config_error(parse("[sweep]\naxis = temperature\npoints = 1, 2\ncolour = red\n"),
                      {"line 11", "unknown key 'colour'"});
  expect_config_error(parse("[sweep]\naxis = speed\npoints = 1\n"), {"line 9", "speed"});
  expect_config_error(parse("[sweep]\naxis = temperature\npoints = 1, x\n"), {"line 10"});
  expect_config_error(parse("[sweep]\naxis = temperature\npoints = 2, 1, 3\n"), {"line 8", "monotone"});
  expect_config_error(parse("[sweep]\naxis = temperature\npoints = 1\nfrom = 1\n"), {"line 10"});
  expect_config_error(parse("[extras]\n"), {"line 8", "unknown section [extras]"});
  expect_config_error(parse("[sweep]\naxis = temperature\npoints = 1\n[series a]\nrrr_au = 0\n"),
                      {"line 12", "out of range"});
  expect_config_error(parse(""), {"missing section [sweep]"});
  expect_config_error([&] { sc::parse_scenario("[cavity]\na_nm = 100\nT_K = 1\nT_over_Tc = 0.5\n[mirror1]\nmaterial = Au\n[mirror2]\nmaterial = Au\n", db, false); },
                      {"line 4", "either T_K or T_over_Tc"});
  expect_config_error([&] { sc::parse_scenario("[mirror1]\nmaterial = Au\nsubstrate = SiN\n", db); },
                      {"missing section [cavity]"});
  expect_config_error(
      [&] {
        sc::parse_scenario("[cavity]\na_nm=1e2\nT_K=1\n[mirror1]\nmaterial=Au\nsubstrate=SiN\n[mirror2]\nmaterial=Au\n",
                           db, false);
      },
      {"line 6", "'substrate' needs 'w_nm'"});
  expect_config_error(
      [&] { sc::parse_scenario("[cavity]\na_nm=100\nT_K=1\n[mirror1]\nmaterial=Gold\n[mirror2]\nmaterial=Au\n", db, false); },
      {"line 5", "unknown material 'Gold'"});
  expect_config_error([&] { sc::parse_scenario("a_nm = 3\n", db); }, {"line 1", "outside of any section"});
  expect_config_error([&] { sc::load_scenario("/nonexistent.ini", db); }, {"cannot open"});
}

TEST(Sweep, SinglePointEqualsDirectCall) {
  sc::SweepSpec s = std::get<sc::SweepSpec>(sc::builtin_scenario("fig6"));
  s.series.resize(1);
  s.points = {6.8};
  s.mode = sc::SweepMode::both;
  sc::PressureSolver solver;
  const auto t = sc::run_sweep(s, solver);
  ASSERT_EQ(t.rows.size(), 1u);
  const auto& c = s.series[0].cavity;
  const auto d = sc::delta_pressure(c, 6.8, 13.6);
  const auto n = sc::delta_pressure(c, 6.8, 13.6, sc::DeltaMode::force_normal_state);
  EXPECT_EQ(t.rows[0].value, d.delta_Pa * 1e3);
  EXPECT_EQ(t.rows[0].normal_value, n.delta_Pa * 1e3);
  EXPECT_EQ(t.rows[0].status, "ok");
  EXPECT_GT(t.rows[0].error_bound, 0.0);

  const auto csv = lines(sc::to_csv(t));
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(csv[0], "# supercasimir v" + std::string(sc::kVersion) + " scenario=fig6");
  EXPECT_EQ(csv[1].rfind("# axis=temperature | mode=both", 0), 0u);
  EXPECT_EQ(csv[2], "series,T_K,deltaP_mPa,deltaP_normal_mPa,error_bound_mPa,status");
  EXPECT_EQ(count(csv[3], ','), 5u);
}

TEST(Sweep, ColumnsFollowMode) {
  sc::SweepSpec s;
  s.axis = sc::SweepAxis::separation;
  s.output = sc::SweepOutput::pressure;
  s.mode = sc::SweepMode::force_normal_state;
  EXPECT_EQ(sc::sweep_columns(s), (std::vector<std::string>{"series", "a_nm", "P_normal_Pa", "error_bound_Pa", "status"}));
  s.mode = sc::SweepMode::as_modeled;
  EXPECT_EQ(sc::sweep_columns(s).size(), 5u);
  s.mode = sc::SweepMode::both;
  EXPECT_EQ(sc::sweep_columns(s).size(), 6u);
}

TEST(Sweep, FailedPointsAreRecordedInRow) {
  // With a small term budget the low-temperature point cannot converge.
  sc::SweepSpec s;
  s.axis = sc::SweepAxis::temperature;
  s.output = sc::SweepOutput::pressure;
  s.points = {0.5, 300.0};
  const auto& db = sc::default_catalog();
  s.series = {{"AuAu", {sc::HalfSpace{db.get("Au")}, sc::HalfSpace{db.get("Au")}, 1000.0, 300.0}, {}}};
  sc::PressureOptions o;
  o.sum.max_terms = 200;
  const auto t = sc::run_sweep(s, o);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].status.rfind("failed: ", 0), 0u);
  EXPECT_TRUE(std::isnan(t.rows[0].value));
  EXPECT_EQ(t.rows[1].status, "ok");
  EXPECT_LT(t.rows[1].value, 0.0);
  EXPECT_EQ(count(lines(sc::to_csv(t))[3], ','), 4u);  // reason carries no commas

  s.points = {0.5, 1.0};
  EXPECT_THROW(sc::run_sweep(s, o), sc::NumericalError);
}

TEST(Sweep, CsvIndependentOfThreads) {
  auto s = std::get<sc::SweepSpec>(sc::builtin_scenario("fig7"));
  s.points = {100.0, 200.0};
  std::vector<std::string> out;
  for (unsigned t : {1u, 3u}) {
    sc::PressureOptions o;
    o.threads = t;
    out.push_back(sc::to_csv(sc::run_sweep(s, o)));
  }
  EXPECT_EQ(out[0], out[1]);
}
