#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "qgrav/scenario.hpp"

using namespace qgrav;
using qgrav::test::rel;

namespace {

ScenarioSpec spec_one() {
  ScenarioSpec s;
  s.name = "one";
  s.device = test::scenario_one();
  return s;
}

ScenarioSpec spec_two() {
  ScenarioSpec s;
  s.name = "two";
  s.device = test::scenario_two();
  return s;
}

}  // namespace

TEST(OptimalTime, PublishedValues) {
  const OptimalTime a = find_optimal_time(spec_one());
  EXPECT_EQ(a.n_star, 52);
  EXPECT_LT(rel(a.t_star, 260e-6), 1e-12);
  const OptimalTime b = find_optimal_time(spec_two());
  EXPECT_EQ(b.n_star, 10);
  EXPECT_LT(rel(b.t_star, 250e-6), 1e-12);
}

TEST(OptimalTime, BruteForceAgreement) {
  // Rate maximum located independently on the continuous-revival form.
  for (const ScenarioSpec& s : {spec_one(), spec_two()}) {
    const DerivedParams p = derive(s.device);
    double best_rate = -1.0;
    int best = 0;
    for (int l = 1; l <= 200; ++l) {
      const double t = 2.0 * constants::pi * l / p.omega_m;
      const double A = 8.0 * constants::pi * l * p.k * p.gamma_lever;
      const double rate = A * A * std::exp(-2.0 * p.Gamma_2 * t) / t;
      if (rate > best_rate) {
        best_rate = rate;
        best = 2 * l;
      }
    }
    EXPECT_EQ(find_optimal_time(s).n_star, best) << s.name;
  }
}

TEST(OptimalTime, BoundaryIsAnError) {
  ScenarioSpec s = spec_one();
  s.n_half_cycle_max = 20;
  EXPECT_THROW(find_optimal_time(s), ScenarioError);
}

TEST(OptimalTime, NoInformationIsAnError) {
  ScenarioSpec s = spec_one();
  s.device.theta = 0.0;
  EXPECT_THROW(find_optimal_time(s), ScenarioError);
}

TEST(Evaluate, ScenarioOnePublished) {
  const ScenarioReport r = evaluate_scenario(spec_one());
  EXPECT_EQ(r.n_star, 52);
  EXPECT_LT(rel(r.realistic.F_Q, 62483500989.9206), 1e-11);
  EXPECT_LT(rel(r.realistic.eta_g, 6.51581584905827e-8), 1e-11);
  EXPECT_LT(rel(r.ideal.F_Q, 173028050419.901), 1e-11);
  EXPECT_LT(rel(r.ideal.eta_g, 3.87639849933584e-8), 1e-11);
  EXPECT_LT(rel(r.realistic.visibility, 0.600930739977724), 1e-12);
  EXPECT_LT(rel(r.realistic.delta_g_T_int, 6.51581584905827e-8 / std::sqrt(600.0)), 1e-12);
  EXPECT_LT(rel(r.ideal_eta_with_readout, 3.91555e-8), 1e-5);
  EXPECT_TRUE(r.cfi_as_reported_exceeds_qfi);
  EXPECT_LT(rel(r.realistic.F_C_max, r.realistic.F_Q), 1e-12);
}

TEST(Evaluate, ScenarioTwoPublished) {
  const ScenarioReport r = evaluate_scenario(spec_two());
  EXPECT_EQ(r.n_star, 10);
  EXPECT_LT(rel(r.realistic.F_Q, 5668761599878.59), 1e-11);
  EXPECT_LT(rel(r.realistic.eta_g, 6.70796384559748e-9), 1e-11);
  EXPECT_LT(rel(r.ideal.F_Q, 15091901796421.5), 1e-11);
  EXPECT_LT(rel(r.ideal.eta_g, 4.07003382971198e-9), 1e-11);
  EXPECT_LT(rel(r.realistic.visibility, 0.61287528930788), 1e-12);
}

TEST(Evaluate, SelfConsistentSensitivity) {
  for (const ScenarioSpec& s : {spec_one(), spec_two()}) {
    const ScenarioReport r = evaluate_scenario(s);
    for (const MetricBlock* m : {&r.realistic, &r.ideal}) {
      EXPECT_LT(rel(m->eta_g, std::sqrt((r.t_star + r.T_over) / m->F_eff)), 1e-13);
      EXPECT_LT(rel(m->delta_g_T_int, m->eta_g / std::sqrt(r.T_int)), 1e-13);
    }
    EXPECT_LT(rel(r.crb_per_shot, 1.0 / std::sqrt(r.realistic.F_eff)), 1e-13);
    EXPECT_LE(r.ideal.eta_g, r.ideal_eta_with_readout);
    EXPECT_LE(r.ideal_eta_with_readout, r.realistic.eta_g);
  }
}

TEST(Evaluate, ReferenceFlags) {
  ScenarioSpec s = spec_one();
  s.reference = {{"eta_g", 6.5e-8}, {"delta_g_T_int", 6.5e-9}};
  const ScenarioReport r = evaluate_scenario(s);
  ASSERT_EQ(r.references.size(), 2u);
  for (const ReferenceCheck& c : r.references) {
    if (c.quantity == "eta_g") {
      EXPECT_FALSE(c.flagged);
      EXPECT_LT(std::abs(c.relative_deviation), 3e-3);
    } else {
      EXPECT_TRUE(c.flagged);
    }
  }
  s.reference = {{"bogus", 1.0}};
  EXPECT_THROW(validate(s), ParameterError);
}

TEST(Evaluate, SeriesStopsAtOptimum) {
  const ScenarioReport r = evaluate_scenario(spec_two(), 16);
  ASSERT_FALSE(r.series.empty());
  EXPECT_LE(r.series.back().t, r.t_star * (1 + 1e-12));
  EXPECT_EQ(r.series.size(), 16u * 5u);
}

TEST(TimeSeries, GridAndColumns) {
  const std::vector<MetrologyPoint> pts = time_series(spec_one(), 40, 2.0, Regime::Realistic);
  ASSERT_EQ(pts.size(), 80u);
  EXPECT_NEAR(pts.front().tau_over_pi, 2.0 / 40.0, 1e-15);
  EXPECT_NEAR(pts.back().tau_over_pi, 4.0, 1e-13);
  for (const MetrologyPoint& m : pts) {
    EXPECT_GE(m.F_Q, 0.0);
    EXPECT_GE(m.S_L, 0.0);
    EXPECT_LE(m.S_L, 0.5);
    EXPECT_FALSE(std::isnan(m.eta_g_if_stopped));
    const double r = std::remainder(m.tau_over_pi, 2.0);
    if (std::abs(r) < 1e-12) {
      EXPECT_LT(m.S_L, 1e-12);
      EXPECT_LE(m.F_Q, m.F_Q_closed * (1 + 1e-12));
    }
  }
  EXPECT_THROW(time_series(spec_one(), 40, 0.0, Regime::Realistic), ScenarioError);
}

TEST(Readout, IdealIsPerfect) {
  ScenarioSpec s = spec_one();
  EXPECT_EQ(readout_fidelity(s, Regime::Ideal), 1.0);
  EXPECT_EQ(readout_fidelity(s, Regime::Realistic), 0.995);
}

TEST(Sweep, CouplingSquaredScaling) {
  const std::vector<SweepRow> rows = sweep(spec_one(), SweepAxis::K, {0.1, 0.2, 0.3});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].n_star, rows[1].n_star);
  EXPECT_EQ(rows[1].n_star, rows[2].n_star);
  EXPECT_LT(rel(rows[1].FQ_peak_ideal / rows[0].FQ_peak_ideal, 4.0), 1e-9);
  EXPECT_LT(rel(rows[2].FQ_peak_ideal / rows[0].FQ_peak_ideal, 9.0), 1e-9);
}

TEST(Sweep, BathTemperatureMonotone) {
  const std::vector<SweepRow> rows = sweep(spec_one(), SweepAxis::T_bath, {0.01, 0.02, 0.05, 0.1, 0.3});
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].visibility_tau_pi, rows[i - 1].visibility_tau_pi);
    EXPECT_GE(rows[i].eta_g_at_opt, rows[i - 1].eta_g_at_opt);
  }
}

TEST(Sweep, QualityFactorMonotone) {
  const std::vector<SweepRow> rows = sweep(spec_one(), SweepAxis::Q_m, {1e6, 1e7, 1e8, 1e9});
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].eta_g_at_opt, rows[i - 1].eta_g_at_opt * (1 + 1e-12));
  }
}

TEST(Sweep, ReadoutAxis) {
  const std::vector<SweepRow> rows = sweep(spec_one(), SweepAxis::F_r, {0.9, 1.0});
  EXPECT_LT(rel(rows[0].eta_g_at_opt / rows[1].eta_g_at_opt, 1.0 / 0.8), 1e-12);
  EXPECT_THROW(sweep(spec_one(), SweepAxis::F_r, {0.4}), std::exception);
}

TEST(Sweep, AxisValueSubstitution) {
  const DeviceInput d = test::scenario_one();
  EXPECT_LT(rel(derive(with_axis_value(d, SweepAxis::K, 0.3)).k, 0.3), 1e-14);
  const DeviceInput f = with_axis_value(d, SweepAxis::f_m, 50e3);
  EXPECT_EQ(f.g0_over_2pi, d.g0_over_2pi);
  EXPECT_EQ(f.f_m, 50e3);
  EXPECT_EQ(with_axis_value(d, SweepAxis::m_eff, 1e-9).m_eff, 1e-9);
}

TEST(Sweep, Errors) {
  EXPECT_THROW(sweep(spec_one(), SweepAxis::K, {}), ScenarioError);
  EXPECT_THROW(parse_axis("temperature"), std::invalid_argument);
  for (SweepAxis a : {SweepAxis::K, SweepAxis::Q_m, SweepAxis::T_bath, SweepAxis::F_r,
                      SweepAxis::m_eff, SweepAxis::f_m}) {
    EXPECT_EQ(parse_axis(axis_name(a)), a);
  }
}
