#include <gtest/gtest.h>

#include <cmath>

#include "qgrav/constants.hpp"
#include "qgrav/qubit.hpp"
#include "qgrav/tau.hpp"

using namespace qgrav;

TEST(Tau, RevivalsAreExactZeros) {
  for (int n = 1; n <= 1000; n += 37) {
    const Tau t = Tau::half_cycles(2.0 * n);
    EXPECT_EQ(t.sin(), 0.0);
    EXPECT_EQ(t.cos(), 1.0);
    EXPECT_EQ(t.one_minus_cos(), 0.0);
    EXPECT_EQ(t.half_sin_sq(), 0.0);
    EXPECT_DOUBLE_EQ(t.minus_sin(), t.value());
  }
}

TEST(Tau, HalfCyclesAgreeWithRadians) {
  for (double x : {0.1, 0.5, 1.0, 1.7, 3.3}) {
    const Tau a = Tau::half_cycles(x);
    const Tau b = Tau::radians(x * constants::pi);
    EXPECT_NEAR(a.sin(), std::sin(x * constants::pi), 1e-15);
    EXPECT_NEAR(a.cos(), b.cos(), 1e-15);
    EXPECT_NEAR(a.value(), b.value(), 1e-15);
  }
  EXPECT_EQ(Tau::half_cycles(1.0).cos(), -1.0);
  EXPECT_EQ(Tau::half_cycles(0.5).cos(), 0.0);
}

TEST(Tau, MinusSinSmallArgument) {
  // tau - sin tau ~ tau^3/6 - tau^5/120: naive subtraction loses everything here.
  for (double x : {1e-8, 1e-5, 1e-3, 0.1, 0.24, 0.26, 1.0}) {
    const double series = x * x * x / 6.0 - std::pow(x, 5) / 120.0 + std::pow(x, 7) / 5040.0 -
                          std::pow(x, 9) / 362880.0 + std::pow(x, 11) / 39916800.0;
    EXPECT_NEAR(Tau::radians(x).minus_sin() / series, 1.0, x < 0.3 ? 1e-14 : 1e-6) << x;
  }
}

TEST(Tau, Seconds) {
  const double w = constants::two_pi * 1e5;
  const Tau t = Tau::from_seconds(260e-6, w);
  EXPECT_NEAR(t.over_pi(), 52.0, 1e-12);
  EXPECT_NEAR(Tau::half_cycles(52).seconds(w), 260e-6, 1e-18);
}

TEST(Qubit, BlochAndTraceDistance) {
  QubitDensityMatrix a;
  a.rho00 = 0.5;
  a.rho11 = 0.5;
  a.rho01 = {0.5, 0.0};
  const BlochVector r = a.bloch();
  EXPECT_DOUBLE_EQ(r.r_x, 1.0);
  EXPECT_DOUBLE_EQ(r.r_y, 0.0);
  EXPECT_DOUBLE_EQ(r.r_z, 0.0);
  EXPECT_DOUBLE_EQ(a.purity(), 1.0);
  QubitDensityMatrix b = a;
  b.rho01 = {-0.5, 0.0};
  EXPECT_DOUBLE_EQ(trace_distance(a, b), 1.0);
  QubitDensityMatrix mixed;
  mixed.rho00 = mixed.rho11 = 0.5;
  EXPECT_DOUBLE_EQ(mixed.purity(), 0.5);
  EXPECT_DOUBLE_EQ(trace_distance(a, mixed), 0.5);
}
