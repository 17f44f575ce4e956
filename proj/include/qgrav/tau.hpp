#pragma once

#include <utility>

namespace qgrav {

/// sin(pi*x), cos(pi*x) with exact zeros at integer and half-integer x.
std::pair<double, double> sincospi(double x);

/// Dimensionless mechanical time tau = omega_m * t.
///
/// Stored as a multiple of pi, so revival times tau = 2*pi*n are held exactly
/// and every trigonometric factor built from them (1 - cos tau, sin tau,
/// eta = 1 - exp(-i tau)) is exactly zero there.
class Tau {
 public:
  static Tau radians(double tau);
  static Tau half_cycles(double n);
  static Tau from_seconds(double t, double omega_m);

  double over_pi() const { return over_pi_; }
  double value() const;
  double seconds(double omega_m) const { return value() / omega_m; }

  double sin() const;
  double cos() const;
  /// 1 - cos(tau), evaluated as 2 sin^2(tau/2).
  double one_minus_cos() const;
  /// tau - sin(tau), series-evaluated for small tau.
  double minus_sin() const;
  /// sin^2(tau/2)
  double half_sin_sq() const;

 private:
  explicit Tau(double over_pi) : over_pi_(over_pi) {}
  double over_pi_;
};

}  // namespace qgrav
