#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <variant>

#include "supercasimir/constants.hpp"
#include "supercasimir/errors.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"
#include "supercasimir/materials/g_table.hpp"
#include "supercasimir/materials/material_model.hpp"
#include "supercasimir/materials/permittivity.hpp"
#include "supercasimir/validation/oracles.hpp"

namespace sc = supercasimir;
using sc::PhysicalConstants;

namespace {

sc::BcsParams al() { return {{1.03, 13.0, 0.1, 1.0}, 1.2}; }
sc::BcsParams nbtin() { return {{1.0, 5.33, 0.465, 1.12}, 13.6}; }
sc::DrudeParams au() { return {6.3, 9.0, 0.035, 1.0}; }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST(Constants, HbarCIsConsistent) {
  EXPECT_LT(rel(PhysicalConstants::hbar_eV_s * PhysicalConstants::c_nm_per_s, PhysicalConstants::hbar_c_eV_nm),
            1e-12);
  EXPECT_DOUBLE_EQ(PhysicalConstants::eV_to_rad_per_s(PhysicalConstants::rad_per_s_to_eV(3e14)), 3e14);
}

TEST(BcsGap, ClosesAtTc) {
  EXPECT_EQ(sc::bcs_gap(1.2, 1.2), 0.0);
  EXPECT_EQ(sc::bcs_gap(1.2, 5.0), 0.0);
  EXPECT_LT(sc::bcs_gap(1.2, 1.2 * (1 - 1e-12)), 1e-9);
}

TEST(BcsGap, ZeroTemperatureValues) {
  EXPECT_LT(rel(sc::zero_temperature_gap(1.2), 1.8e-4), 0.015);
  EXPECT_LT(rel(sc::zero_temperature_gap(13.6), 2.1e-3), 0.02);
  EXPECT_EQ(sc::bcs_gap(13.6, 0.0), 1.764 * 0.9963 * PhysicalConstants::kB_eV_per_K * 13.6);
}

TEST(BcsGap, ShapeOfTheInterpolation) {
  // d/dt [sqrt(1-t)(c2 + c3 t)] = 0 at t* = (2 c3 - c2) / (3 c3): the formula
  // rises by a few percent before falling to zero.
  const sc::GapProfile g{13.6};
  const double t_star = (2 * g.c3 - g.c2) / (3 * g.c3);
  double prev = sc::bcs_gap(g, 0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double d = sc::bcs_gap(g, t * g.tc_K);
    if (t <= t_star) EXPECT_GT(d, prev) << "t = " << t;
    if (t - 1e-3 >= t_star) EXPECT_LT(d, prev) << "t = " << t;
    prev = d;
  }
  EXPECT_LT(sc::bcs_gap(g, t_star * g.tc_K) / sc::bcs_gap(g, 0.0), 1.04);
}

TEST(BcsGap, RejectsNegativeTemperature) { EXPECT_THROW(sc::bcs_gap(1.2, -1.0), sc::DomainError); }

TEST(GFunction, VanishesAtAndAboveTc) {
  for (double xi : {0.0, 1e-5, 1e-3, 1.0}) {
    EXPECT_EQ(sc::g_function(xi, 13.6, nbtin()), 0.0);
    EXPECT_EQ(sc::g_function(xi, 20.0, nbtin()), 0.0);
  }
}

TEST(GFunction, DecaysAtHighFrequency) {
  const auto p = nbtin();
  const double gap = sc::bcs_gap(p.tc_K, 0.5 * p.tc_K);
  const double g = sc::g_function(1e4 * gap, 0.5 * p.tc_K, p);
  EXPECT_GE(g, 0.0);
  EXPECT_LT(g, 1e-3);
}

TEST(GFunction, StaticValueMatchesOracle) {
  const auto p = nbtin();
  const double T = 0.5 * p.tc_K;
  const double g0 = sc::g_function(0.0, T, p);
  EXPECT_GT(g0, 0.0);
  EXPECT_LT(g0, 1.0);
  // The oracle needs xi > 0; g is continuous at 0 to far better than 1e-6 here.
  const double xi = 1e-9 * 2.0 * sc::zero_temperature_gap(p.tc_K);
  EXPECT_LT(rel(g0, sc::oracle::g_trapezoid(xi, T, p)), 1e-6);
}

TEST(GFunction, MatchesOracleAcrossFrequencies) {
  const auto p = al();
  const double T = 0.3 * p.tc_K;
  const double two_gap = 2.0 * sc::zero_temperature_gap(p.tc_K);
  for (double x : {1e-2, 0.5, 1.0, 3.0, 100.0}) {
    const double g = sc::g_function(x * two_gap, T, p);
    EXPECT_LT(rel(g, sc::oracle::g_trapezoid(x * two_gap, T, p)), 1e-6) << "xi/2Delta0 = " << x;
  }
}

TEST(GFunction, PositiveAndDecreasingAtLowTemperature) {
  for (const auto& p : {al(), nbtin()}) {
    const double T = 0.1 * p.tc_K;
    const double two_gap = 2.0 * sc::bcs_gap(p.tc_K, T);
    double prev = sc::g_function(0.0, T, p);
    for (int i = 0; i < 200; ++i) {
      const double xi = two_gap * std::pow(10.0, -3.0 + 6.0 * i / 199.0);
      const double g = sc::g_function(xi, T, p);
      EXPECT_GE(g, 0.0);
      EXPECT_LT(g, prev) << "xi = " << xi;
      prev = g;
    }
  }
}

TEST(GFunction, NegativeFrequencyRejected) {
  EXPECT_THROW(sc::g_function(-1e-3, 1.0, nbtin()), sc::DomainError);
}

TEST(SuperfluidFraction, Values) {
  EXPECT_EQ(sc::superfluid_fraction(13.6, 13.6), 0.0);
  EXPECT_EQ(sc::superfluid_fraction(13.6, 0.0), 1.0);
  EXPECT_EQ(sc::superfluid_fraction(13.6, 6.8), 0.9375);
  EXPECT_EQ(sc::superfluid_fraction(13.6, 30.0), 0.0);
  EXPECT_THROW(sc::superfluid_fraction(13.6, -1.0), sc::DomainError);
}

TEST(Permittivity, DrudeGoldByHand) {
  EXPECT_NEAR(sc::permittivity(sc::Drude{au()}, 1.0, 300.0), 6.3 + 81.0 / 1.035, 1e-12);
  EXPECT_NEAR(sc::permittivity(sc::Drude{au()}, 1.0, 300.0), 84.56, 1e-2);
}

TEST(Permittivity, TwoFluidAtTcIsDrude) {
  const auto p = nbtin();
  for (double xi : {1e-4, 1e-2, 1.0}) {
    EXPECT_EQ(sc::permittivity(sc::TwoFluid{p}, xi, p.tc_K), sc::permittivity(sc::Drude{p.drude}, xi, p.tc_K));
  }
}

TEST(Permittivity, BcsAboveDrudeAndApproachesIt) {
  const auto p = nbtin();
  const double T = 0.1 * p.tc_K;
  const double two_gap = 2.0 * sc::zero_temperature_gap(p.tc_K);
  double last_ratio = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double xi = two_gap * std::pow(10.0, -2.0 + 4.0 * i / 40.0);
    const double bcs = sc::permittivity(sc::Bcs{p}, xi, T);
    const double drude = sc::permittivity(sc::Drude{p.drude}, xi, T);
    EXPECT_GT(bcs, drude);
    last_ratio = bcs / drude;
  }
  EXPECT_LT(last_ratio, 1.01);
}

TEST(Permittivity, MetalsRealAboveOneAndDecreasing) {
  const auto p = nbtin();
  const sc::MaterialModel models[] = {sc::Drude{au()}, sc::Bcs{p}, sc::TwoFluid{p}};
  for (const auto& m : models) {
    double prev = INFINITY;
    for (int i = 0; i <= 60; ++i) {
      const double xi = std::pow(10.0, -5.0 + 6.0 * i / 60.0);
      const double e = sc::permittivity(m, xi, 0.5 * p.tc_K);
      EXPECT_TRUE(std::isfinite(e));
      EXPECT_GE(e, 1.0);
      EXPECT_LT(e, prev) << sc::describe(m) << " xi=" << xi;
      prev = e;
    }
  }
}

TEST(Permittivity, SimpleModels) {
  EXPECT_EQ(sc::permittivity(sc::Vacuum{}, 0.3, 1.0), 1.0);
  EXPECT_EQ(sc::permittivity(sc::ConstantDielectric{7.6}, 0.3, 1.0), 7.6);
}

TEST(Permittivity, Errors) {
  EXPECT_THROW(sc::permittivity(sc::Drude{au()}, 0.0, 1.0), sc::DomainError);
  EXPECT_THROW(sc::permittivity(sc::Drude{au()}, -1.0, 1.0), sc::DomainError);
  EXPECT_THROW(sc::permittivity(sc::PerfectConductor{}, 1.0, 1.0), sc::DomainError);
}

TEST(ZeroFrequency, Classification) {
  const auto p = nbtin();
  EXPECT_TRUE(std::holds_alternative<sc::TeVanishing>(sc::zero_frequency_behavior(sc::Drude{au()}, 1.0)));
  EXPECT_TRUE(std::holds_alternative<sc::TeVanishing>(sc::zero_frequency_behavior(sc::Bcs{p}, p.tc_K)));
  EXPECT_TRUE(std::holds_alternative<sc::TeVanishing>(sc::zero_frequency_behavior(sc::TwoFluid{p}, p.tc_K)));

  const auto tf = sc::zero_frequency_behavior(sc::TwoFluid{p}, 0.5 * p.tc_K);
  ASSERT_TRUE(std::holds_alternative<sc::PlasmaLike>(tf));
  EXPECT_DOUBLE_EQ(std::get<sc::PlasmaLike>(tf).plasma_eV, 5.33 * std::sqrt(0.9375));

  const auto bcs = sc::zero_frequency_behavior(sc::Bcs{p}, 0.5 * p.tc_K);
  ASSERT_TRUE(std::holds_alternative<sc::PlasmaLike>(bcs));
  EXPECT_DOUBLE_EQ(std::get<sc::PlasmaLike>(bcs).plasma_eV, 5.33 * std::sqrt(sc::g_function(0.0, 6.8, p)));

  const auto d = sc::zero_frequency_behavior(sc::ConstantDielectric{7.6}, 1.0);
  ASSERT_TRUE(std::holds_alternative<sc::Dielectric>(d));
  EXPECT_EQ(std::get<sc::Dielectric>(d).eps, 7.6);
  EXPECT_TRUE(std::isinf(std::get<sc::PlasmaLike>(sc::zero_frequency_behavior(sc::PerfectConductor{}, 1.0)).plasma_eV));
}

TEST(DirtyLimit, Ratios) {
  EXPECT_LT(rel(sc::dirty_limit_ratio(al()), 5.7e-3), 0.02);
  auto nb = nbtin();
  nb.drude.rrr = 1.0;
  EXPECT_LT(rel(sc::dirty_limit_ratio(nb), 1.4e-2), 0.02);
  nb.drude.gamma0_eV = 1e300;
  EXPECT_LT(sc::dirty_limit_ratio(nb), 1e-300);
}

TEST(MaterialModel, Validation) {
  EXPECT_THROW(sc::validate(sc::Drude{{1.0, -1.0, 0.1, 1.0}}), sc::DomainError);
  EXPECT_THROW(sc::validate(sc::Drude{{0.5, 9.0, 0.1, 1.0}}), sc::DomainError);
  EXPECT_THROW(sc::validate(sc::Bcs{{au(), 0.0}}), sc::DomainError);
  EXPECT_THROW(sc::validate(sc::ConstantDielectric{0.9}), sc::DomainError);
  EXPECT_NO_THROW(sc::validate(sc::Bcs{nbtin()}));
  EXPECT_TRUE(std::holds_alternative<sc::Drude>(sc::normal_state(sc::Bcs{nbtin()})));
}

TEST(GTable, ReproducesDirectEvaluation) {
  const auto p = nbtin();
  const double T = 0.5 * p.tc_K;
  sc::GTableOptions o;
  o.tol = 1e-8;
  const auto table = sc::GTable::build(p, T, o);
  ASSERT_FALSE(table.identically_zero());
  EXPECT_LT(table.max_probe_error(), 1e-8);
  EXPECT_LT(table.tail_bound(), 1e-8);
  std::mt19937_64 rng(20240601);
  const double two_gap = 2.0 * sc::bcs_gap(p.tc_K, T);
  std::uniform_real_distribution<double> decade(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double xi = two_gap * std::pow(10.0, decade(rng));
    EXPECT_NEAR(table(xi), sc::g_function(xi, T, p), 1e-8) << "xi = " << xi;
  }
  EXPECT_EQ(table(0.0), table.g0());
}

TEST(GTable, IdenticallyZeroAtTc) {
  const auto t = sc::GTable::build(al(), 1.2);
  EXPECT_TRUE(t.identically_zero());
  EXPECT_EQ(t(1e-3), 0.0);
  EXPECT_EQ(t.size(), 0u);
}

TEST(GTable, NodeValuesDecrease) {
  for (const auto& p : {al(), nbtin()}) {
    const auto t = sc::GTable::build(p, 0.1 * p.tc_K);
    const auto v = t.node_values();
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(v[i], v[i - 1]);
  }
}

TEST(GTable, RejectsBadTolerance) {
  sc::GTableOptions o;
  o.tol = 0.0;
  EXPECT_THROW(sc::GTable::build(al(), 0.5, o), sc::DomainError);
}
