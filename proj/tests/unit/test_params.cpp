#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qgrav/params.hpp"

using namespace qgrav;
using qgrav::test::rel;

// Reference values below come from 30-digit mpmath evaluation of the defining
// formulas with hbar = h / (2 pi).

TEST(Derive, ScenarioOne) {
  const DerivedParams p = derive(test::scenario_one());
  EXPECT_LT(rel(p.z_zpf, 3.9791949221745213e-16), 1e-13);
  EXPECT_LT(rel(p.gamma_lever, 3182.8418066966833), 1e-13);
  EXPECT_DOUBLE_EQ(p.k, 0.2);
  EXPECT_LT(rel(p.G_bar, 31223.678123694463), 1e-13);
  EXPECT_LT(rel(p.n_th, 4166.8238446623607), 1e-12);
  EXPECT_LT(rel(p.Gamma_2, 1958.75227842055), 1e-13);
  EXPECT_DOUBLE_EQ(p.Gamma_1, 1.0 / 0.8e-3);
}

TEST(Derive, ScenarioTwo) {
  const DerivedParams p = derive(test::scenario_two());
  EXPECT_DOUBLE_EQ(p.k, 0.2);
  EXPECT_LT(rel(p.gamma_lever, 154572.46244820704), 1e-13);
  EXPECT_LT(rel(p.n_th, 20836.119127326942), 1e-12);
  EXPECT_LT(rel(p.Gamma_2, 1958.375227841862), 1e-13);
}

TEST(Derive, DefiningIdentitiesHoldExactly) {
  const DerivedParams p = derive(test::scenario_one());
  EXPECT_DOUBLE_EQ(p.z_zpf, std::sqrt(constants::hbar / (2.0 * 5.3e-10 * p.omega_m)));
  EXPECT_DOUBLE_EQ(p.G_bar, p.gamma_lever * 9.81);
  EXPECT_DOUBLE_EQ(p.Gamma_2, p.Gamma_1 / 2.0 + 2.0 * p.Gamma_phi_prime);
  EXPECT_DOUBLE_EQ(p.omega_m, constants::two_pi * 100e3);
}

TEST(Derive, ZeroGravityGivesZeroDrive) {
  DeviceInput d = test::scenario_one();
  d.g = 0.0;
  EXPECT_EQ(derive(d).G_bar, 0.0);
}

TEST(Derive, ReportsOffendingField) {
  DeviceInput d = test::scenario_one();
  d.m_eff = -1.0;
  try {
    derive(d);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.field(), "m_eff");
  }
  const std::pair<double DeviceInput::*, const char*> fields[] = {
      {&DeviceInput::f_m, "f_m"}, {&DeviceInput::Q_m, "Q_m"}, {&DeviceInput::T_bath, "T_bath"},
      {&DeviceInput::T1, "T1"}, {&DeviceInput::T_phi, "T_phi"}};
  for (const auto& [member, name] : fields) {
    DeviceInput bad = test::scenario_one();
    bad.*member = 0.0;
    try {
      validate(bad);
      ADD_FAILURE() << name;
    } catch (const ParameterError& e) {
      EXPECT_EQ(e.field(), name);
    }
  }
}

TEST(Derive, RangeChecks) {
  DeviceInput d = test::scenario_one();
  d.F_r = 0.4;
  EXPECT_THROW(validate(d), ParameterError);
  d = test::scenario_one();
  d.theta = 3.5;
  EXPECT_THROW(validate(d), ParameterError);
  d = test::scenario_one();
  d.T_over = -1e-6;
  EXPECT_THROW(validate(d), ParameterError);
}

TEST(ThermalOccupation, MatchesReferenceAndHighTemperatureLimit) {
  const double w1 = constants::two_pi * 100e3;
  const double w2 = constants::two_pi * 20e3;
  EXPECT_LT(rel(thermal_occupation(w1, 0.02), 4166.8238446623607), 1e-12);
  EXPECT_LT(rel(thermal_occupation(w2, 0.02), 20836.119127326942), 1e-12);
  const double high_t = constants::boltzmann * 0.02 / (constants::hbar * w1) - 0.5;
  EXPECT_LT(std::abs(thermal_occupation(w1, 0.02) - high_t), 1e-3);
}

TEST(ThermalOccupation, ColdLimitIsFiniteAndSmall) {
  const double w = constants::two_pi * 5e9;
  for (double T : {1e-3, 1e-4, 1e-6, 1e-9}) {
    const double n = thermal_occupation(w, T);
    EXPECT_TRUE(std::isfinite(n));
    EXPECT_GE(n, 0.0);
    EXPECT_LT(n, 1e-100);
  }
  const double x = constants::hbar * w / (constants::boltzmann * 0.01);
  EXPECT_LT(rel(thermal_occupation(w, 0.01), std::exp(-x)), 1e-6);
}

TEST(ThermalOccupation, Monotone) {
  const double w = constants::two_pi * 1e5;
  double last = 0.0;
  for (double T = 1e-4; T < 1.0; T *= 1.7) {
    const double n = thermal_occupation(w, T);
    EXPECT_GT(n, last);
    last = n;
  }
  last = 1e300;
  for (double f = 1e3; f < 1e9; f *= 2.3) {
    const double n = thermal_occupation(constants::two_pi * f, 0.02);
    EXPECT_LT(n, last);
    last = n;
  }
}

TEST(Dephasing, BreakdownTerms) {
  const DerivedParams p = derive(test::scenario_one());
  const DephasingBreakdown b = dephasing_breakdown(p);
  EXPECT_DOUBLE_EQ(b.relaxation, 625.0);
  EXPECT_LT(rel(b.pure, 2.0 / 1.5e-3), 1e-15);
  EXPECT_LT(rel(b.mechanical, 0.41894508721666704), 1e-12);
  EXPECT_LT(rel(b.total(), total_dephasing_rate(p)), 1e-15);
  EXPECT_LT(rel(total_dephasing_rate(p), p.Gamma_2), 1e-15);
}

TEST(Dephasing, RelaxationOnlyLimit) {
  DerivedParams p = derive(test::scenario_one());
  p.Gamma_phi = 0.0;
  p.gamma_m = 0.0;
  EXPECT_DOUBLE_EQ(total_dephasing_rate(p), p.Gamma_1 / 2.0);
}

TEST(Dephasing, DecoupledMechanicsIgnoresBath) {
  for (double T : {0.001, 0.02, 4.0}) {
    for (double Q : {1e3, 1e9}) {
      DeviceInput d = test::scenario_one();
      d.g0_over_2pi = 0.0;
      d.T_bath = T;
      d.Q_m = Q;
      const DerivedParams p = derive(d);
      EXPECT_DOUBLE_EQ(p.Gamma_2, p.Gamma_1 / 2.0 + 2.0 * p.Gamma_phi);
    }
  }
}

TEST(Scaling, MassDoubling) {
  DeviceInput d = test::scenario_one();
  const DerivedParams a = derive(d);
  d.m_eff *= 2.0;
  const DerivedParams b = derive(d);
  EXPECT_LT(rel(b.z_zpf, a.z_zpf / std::sqrt(2.0)), 1e-12);
  EXPECT_LT(rel(b.gamma_lever, a.gamma_lever * std::sqrt(2.0)), 1e-12);
}

TEST(Scaling, JointFrequencyRescalingKeepsK) {
  DeviceInput d = test::scenario_one();
  const double k0 = derive(d).k;
  for (double s : {0.1, 3.0, 17.0}) {
    DeviceInput e = d;
    e.f_m *= s;
    e.g0_over_2pi *= s;
    EXPECT_LT(rel(derive(e).k, k0), 1e-15);
  }
}
