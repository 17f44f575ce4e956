#include "qgrav/params.hpp"

#include <cmath>

namespace qgrav {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(field, "must be positive and finite, got " + std::to_string(value));
  }
}

}  // namespace

void validate(const DeviceInput& in) {
  require_positive(in.f_m, "f_m");
  require_positive(in.m_eff, "m_eff");
  require_positive(in.Q_m, "Q_m");
  require_positive(in.T_bath, "T_bath");
  require_positive(in.T1, "T1");
  require_positive(in.T_phi, "T_phi");
  if (!(in.g0_over_2pi >= 0.0) || !std::isfinite(in.g0_over_2pi)) {
    throw ParameterError("g0_over_2pi", "must be non-negative and finite");
  }
  if (!(in.F_r >= 0.5 && in.F_r <= 1.0)) {
    throw ParameterError("F_r", "must lie in [0.5, 1], got " + std::to_string(in.F_r));
  }
  if (!(in.theta >= 0.0 && in.theta <= constants::pi)) {
    throw ParameterError("theta", "must lie in [0, pi], got " + std::to_string(in.theta));
  }
  if (!(in.T_over >= 0.0) || !std::isfinite(in.T_over)) {
    throw ParameterError("T_over", "must be non-negative and finite");
  }
  if (!std::isfinite(in.g)) throw ParameterError("g", "must be finite");
  if (!std::isfinite(in.alpha.real()) || !std::isfinite(in.alpha.imag())) {
    throw ParameterError("alpha", "must be finite");
  }
}

double thermal_occupation(double omega_m, double T_bath) {
  if (!(omega_m > 0.0)) throw ParameterError("omega_m", "must be positive");
  if (!(T_bath > 0.0)) throw ParameterError("T_bath", "must be positive");
  const double x = constants::hbar * omega_m / (constants::boltzmann * T_bath);
  // exp(-x) / (1 - exp(-x)): no cancellation at small x, no overflow at large x.
  return std::exp(-x) / -std::expm1(-x);
}

DephasingBreakdown dephasing_breakdown(const DerivedParams& p) {
  DephasingBreakdown b;
  b.relaxation = 0.5 * p.Gamma_1;
  b.pure = 2.0 * p.Gamma_phi;
  b.mechanical = 2.0 * p.gamma_m * p.k * p.k * (2.0 * p.n_th + 1.0);
  return b;
}

double total_dephasing_rate(const DerivedParams& p) { return dephasing_breakdown(p).total(); }

DerivedParams derive(const DeviceInput& in) {
  validate(in);
  DerivedParams p;
  p.omega_m = constants::two_pi * in.f_m;
  p.z_zpf = std::sqrt(constants::hbar / (2.0 * in.m_eff * p.omega_m));
  p.gamma_lever = in.m_eff * p.z_zpf / (constants::hbar * p.omega_m);
  // Both rates carry the same 2*pi, so k is the plain frequency ratio.
  p.k = in.g0_over_2pi / in.f_m;
  p.G_bar = p.gamma_lever * in.g;
  p.gamma_m = p.omega_m / in.Q_m;
  p.n_th = thermal_occupation(p.omega_m, in.T_bath);
  p.Gamma_1 = 1.0 / in.T1;
  p.Gamma_phi = 1.0 / in.T_phi;
  p.Gamma_phi_prime = p.Gamma_phi + p.gamma_m * p.k * p.k * (2.0 * p.n_th + 1.0);
  p.Gamma_2 = 0.5 * p.Gamma_1 + 2.0 * p.Gamma_phi_prime;
  return p;
}

}  // namespace qgrav
