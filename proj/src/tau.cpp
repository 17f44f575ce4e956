#include "qgrav/tau.hpp"

#include <cmath>

#include "qgrav/constants.hpp"

namespace qgrav {

std::pair<double, double> sincospi(double x) {
  // Reduce to [-2, 2], then to an octant offset f in [-1/4, 1/4].
  const double r = std::fmod(x, 2.0);
  const double q = std::nearbyint(2.0 * r);
  const double f = r - 0.5 * q;
  const double s = std::sin(constants::pi * f);
  const double c = std::cos(constants::pi * f);
  const int quadrant = static_cast<int>(((static_cast<long long>(q) % 4) + 4) % 4);
  switch (quadrant) {
    case 0: return {s, c};
    case 1: return {c, -s};
    case 2: return {-s, -c};
    default: return {-c, s};
  }
}

Tau Tau::radians(double tau) { return Tau(tau / constants::pi); }
Tau Tau::half_cycles(double n) { return Tau(n); }
Tau Tau::from_seconds(double t, double omega_m) { return Tau(omega_m * t / constants::pi); }

double Tau::value() const { return constants::pi * over_pi_; }
double Tau::sin() const { return sincospi(over_pi_).first; }
double Tau::cos() const { return sincospi(over_pi_).second; }

double Tau::half_sin_sq() const {
  const double s = sincospi(0.5 * over_pi_).first;
  return s * s;
}

double Tau::one_minus_cos() const { return 2.0 * half_sin_sq(); }

double Tau::minus_sin() const {
  const double t = value();
  if (std::abs(t) < 0.25) {
    const double t2 = t * t;
    // tau^3/3! - tau^5/5! + ... through tau^13
    double term = t * t2 / 6.0;
    double sum = term;
    for (int n = 5; n <= 13; n += 2) {
      term *= -t2 / static_cast<double>((n - 1) * n);
      sum += term;
    }
    return sum;
  }
  return t - sin();
}

}  // namespace qgrav
