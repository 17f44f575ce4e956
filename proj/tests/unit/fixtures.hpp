#pragma once

#include <cmath>

#include "qgrav/params.hpp"

namespace qgrav::test {

inline DeviceInput scenario_one() {
  DeviceInput d;
  d.f_m = 100e3;
  d.m_eff = 5.3e-10;
  d.g0_over_2pi = 20e3;
  d.Q_m = 1e9;
  d.T_bath = 0.020;
  d.T1 = 0.8e-3;
  d.T_phi = 1.5e-3;
  d.F_r = 0.995;
  return d;
}

inline DeviceInput scenario_two() {
  DeviceInput d = scenario_one();
  d.f_m = 20e3;
  d.m_eff = 1.0e-8;
  d.g0_over_2pi = 4e3;
  d.Q_m = 1e10;
  return d;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace qgrav::test
