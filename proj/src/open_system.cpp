#include "qgrav/open_system.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgrav {

std::string_view model_name(DephasingModel model) {
  switch (model) {
    case DephasingModel::PolaronLab: return "polaron";
    case DephasingModel::ThermalWhichPath: return "thermal";
    case DephasingModel::ThermalWhichPathDamped: return "thermal-damped";
  }
  return "unknown";
}

std::string_view model_label(DephasingModel model) {
  switch (model) {
    case DephasingModel::PolaronLab: return "lab-frame polaron reduction (canonical)";
    case DephasingModel::ThermalWhichPath: return "geometric phase, thermal which-path";
    case DephasingModel::ThermalWhichPathDamped:
      return "geometric phase, damped thermal which-path";
  }
  return "unknown";
}

DephasingModel parse_model(std::string_view name) {
  if (name == "polaron") return DephasingModel::PolaronLab;
  if (name == "thermal") return DephasingModel::ThermalWhichPath;
  if (name == "thermal-damped") return DephasingModel::ThermalWhichPathDamped;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected polaron, thermal, thermal-damped)");
}

namespace {

double qubit_rate(const DerivedParams& p, Regime regime) {
  return regime == Regime::Ideal ? 0.0 : p.Gamma_2;
}

// Transverse Bloch length r_perp / sin(theta).
double transverse_envelope(Tau tau, const DerivedParams& p, Regime regime) {
  const double t = tau.seconds(p.omega_m);
  return std::exp(-decoherence_envelope_lambda(tau, p) - qubit_rate(p, regime) * t);
}

}  // namespace

double decoherence_envelope_lambda(Tau tau, const DerivedParams& p) {
  return 4.0 * p.k * p.k * tau.one_minus_cos();
}

double accumulated_phase(Tau tau, const DerivedParams& p) {
  const double kG = p.k * p.G_bar;
  return -4.0 * kG * tau.value() - 4.0 * p.k * p.k * tau.sin() + 4.0 * kG * tau.one_minus_cos();
}

double wrap_phase(double phi) {
  double r = std::remainder(phi, constants::two_pi);
  if (r <= -constants::pi) r += constants::two_pi;
  return r;
}

double phase_sensitivity(Tau tau, const DerivedParams& p) {
  return 4.0 * p.k * p.gamma_lever * (tau.one_minus_cos() - tau.value());
}

QubitDensityMatrix lab_density_matrix(double theta, Tau tau, const DerivedParams& p,
                                      Regime regime) {
  const double t = tau.seconds(p.omega_m);
  const double s_half = std::sin(0.5 * theta);
  QubitDensityMatrix rho;
  rho.rho11 = s_half * s_half * std::exp(-p.Gamma_1 * t);
  rho.rho00 = 1.0 - rho.rho11;
  const double magnitude = 0.5 * std::sin(theta) * transverse_envelope(tau, p, regime);
  rho.rho01 = std::polar(magnitude, -accumulated_phase(tau, p));
  return rho;
}

double visibility(Tau tau, const DerivedParams& p, Regime regime) {
  return transverse_envelope(tau, p, regime);
}

double qfi_decohered(double theta, Tau tau, const DerivedParams& p, Regime regime) {
  const double s = std::sin(theta);
  const double t = tau.seconds(p.omega_m);
  const double exponent =
      -2.0 * decoherence_envelope_lambda(tau, p) - 2.0 * qubit_rate(p, regime) * t;
  const double A = phase_sensitivity(tau, p);
  return s * s * std::exp(exponent) * A * A;
}

double cfi_ramsey(double theta, Tau tau, double phi_lo, const DerivedParams& p, Regime regime) {
  const double r_perp = std::abs(std::sin(theta)) * transverse_envelope(tau, p, regime);
  const double A = phase_sensitivity(tau, p);
  const double x = accumulated_phase(tau, p) + phi_lo;
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double denom = 1.0 - r_perp * r_perp * cx * cx;
  if (!(denom > 0.0)) return 0.0;  // pure state aligned with the readout axis
  return r_perp * r_perp * A * A * sx * sx / denom;
}

CfiOptimum cfi_optimal(double theta, Tau tau, const DerivedParams& p, Regime regime) {
  CfiOptimum opt;
  opt.phi_lo_star = 0.5 * constants::pi - accumulated_phase(tau, p);
  opt.F_C_max = cfi_ramsey(theta, tau, opt.phi_lo_star, p, regime);
  const double r_perp = std::abs(std::sin(theta)) * transverse_envelope(tau, p, regime);
  const double A = phase_sensitivity(tau, p);
  const double r2 = r_perp * r_perp;
  opt.as_reported = r2 < 1.0 ? r2 * A * A / (1.0 - r2) : std::numeric_limits<double>::infinity();
  opt.as_reported_exceeds_qfi = opt.as_reported > r2 * A * A;
  return opt;
}

double which_path_dephasing(Tau tau, const DerivedParams& p, DephasingModel model) {
  const double thermal = 2.0 * p.n_th + 1.0;
  switch (model) {
    case DephasingModel::PolaronLab:
      return std::exp(-2.0 * decoherence_envelope_lambda(tau, p));
    case DephasingModel::ThermalWhichPath:
      return std::exp(-16.0 * p.k * p.k * thermal * tau.half_sin_sq());
    case DephasingModel::ThermalWhichPathDamped: {
      // |1 - e^{-(gamma_m/2 + i omega_m) t}|^2 with the same normalization as
      // the undamped branch, which it reproduces at gamma_m = 0.
      const double t = tau.seconds(p.omega_m);
      const double decay = std::exp(-0.5 * p.gamma_m * t);
      const double gap = -std::expm1(-0.5 * p.gamma_m * t);  // 1 - decay
      const double loop_sq = gap * gap + 2.0 * decay * tau.one_minus_cos();
      return std::exp(-4.0 * p.k * p.k * thermal * loop_sq);
    }
  }
  throw std::invalid_argument("unknown dephasing model");
}

double qfi_geometric_model(double theta, Tau tau, const DerivedParams& p,
                           DephasingModel envelope, Regime regime) {
  const double s = std::sin(theta);
  const double rate = regime == Regime::Ideal ? 0.0 : 0.5 * p.Gamma_1 + p.Gamma_phi;
  const double t = tau.seconds(p.omega_m);
  const double slope = 2.0 * p.k * p.gamma_lever * tau.minus_sin();
  return s * s * which_path_dephasing(tau, p, envelope) * std::exp(-rate * t) * slope * slope;
}

double qfi_for_model(double theta, Tau tau, const DerivedParams& p, DephasingModel model,
                     Regime regime) {
  if (model == DephasingModel::PolaronLab) return qfi_decohered(theta, tau, p, regime);
  return qfi_geometric_model(theta, tau, p, model, regime);
}

Sensitivity effective_fisher_and_sensitivity(double F_Q, double F_r, double t, double T_over) {
  if (!(F_Q >= 0.0)) throw std::domain_error("F_Q must be non-negative");
  if (!(F_r >= 0.5 && F_r <= 1.0)) throw std::domain_error("F_r must lie in [0.5, 1]");
  if (!(t > 0.0)) throw std::domain_error("interrogation time must be positive");
  if (!(T_over >= 0.0)) throw std::domain_error("T_over must be non-negative");
  const double contrast = 2.0 * F_r - 1.0;
  Sensitivity s;
  s.F_eff = contrast * contrast * F_Q;
  if (!(s.F_eff > 0.0)) throw std::domain_error("F_eff = 0: no information per cycle");
  s.eta_g = std::sqrt((t + T_over) / s.F_eff);
  return s;
}

}  // namespace qgrav
