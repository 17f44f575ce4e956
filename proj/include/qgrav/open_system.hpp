#pragma once

#include <string>
#include <string_view>

#include "qgrav/params.hpp"
#include "qgrav/qubit.hpp"
#include "qgrav/tau.hpp"

namespace qgrav {

/// Decoherence envelope selector. PolaronLab is the lab-frame reduction with
/// the polaron overlap Lambda(t); the two thermal variants are the which-path
/// models built on the branch separation Delta alpha(t).
enum class DephasingModel { PolaronLab, ThermalWhichPath, ThermalWhichPathDamped };

/// Ideal drops qubit dephasing (Gamma_2 -> 0) and keeps every mechanical factor.
enum class Regime { Realistic, Ideal };

std::string_view model_name(DephasingModel model);  // "polaron", "thermal", "thermal-damped"
std::string_view model_label(DephasingModel model);
DephasingModel parse_model(std::string_view name);

/// Lambda(t) = 4 k^2 (1 - cos omega_m t)
double decoherence_envelope_lambda(Tau tau, const DerivedParams& p);

/// Phase Phi(t) without the bare Omega_q t precession:
/// -4 omega_m k G_bar t - 4 k^2 sin(omega_m t) + 4 k G_bar (1 - cos omega_m t).
double accumulated_phase(Tau tau, const DerivedParams& p);

/// Phase reduced to (-pi, pi], for display only.
double wrap_phase(double phi);

/// dPhi/dg = 4 k gamma (1 - cos omega_m t - omega_m t), s^2/m.
double phase_sensitivity(Tau tau, const DerivedParams& p);

QubitDensityMatrix lab_density_matrix(double theta, Tau tau, const DerivedParams& p,
                                      Regime regime = Regime::Realistic);

/// e^{-Lambda(t)} e^{-Gamma_2 t}
double visibility(Tau tau, const DerivedParams& p, Regime regime = Regime::Realistic);

/// sin^2(theta) exp[-8 k^2 (1 - cos) - 2 Gamma_2 t] A(t)^2, s^4/m^2.
double qfi_decohered(double theta, Tau tau, const DerivedParams& p,
                     Regime regime = Regime::Realistic);

/// Ramsey readout Fisher information at local-oscillator phase phi_lo.
double cfi_ramsey(double theta, Tau tau, double phi_lo, const DerivedParams& p,
                  Regime regime = Regime::Realistic);

struct CfiOptimum {
  double F_C_max = 0.0;      // cfi_ramsey at phi_lo_star
  double phi_lo_star = 0.0;  // pi/2 - Phi(t)
  /// r_perp^2 A^2 / (1 - r_perp^2); kept for comparison, exceeds the QFI
  /// whenever r_perp > 0.
  double as_reported = 0.0;
  bool as_reported_exceeds_qfi = false;
};

CfiOptimum cfi_optimal(double theta, Tau tau, const DerivedParams& p,
                       Regime regime = Regime::Realistic);

/// Mechanical dephasing factor D_mech in (0, 1] for the chosen model.
double which_path_dephasing(Tau tau, const DerivedParams& p, DephasingModel model);

/// Geometric-phase model: sin^2(theta) D_mech e^{-Gamma_2' t} [2 k gamma (tau - sin tau)]^2,
/// where Gamma_2' = Gamma_1/2 + Gamma_phi is the bare qubit rate of that model.
double qfi_geometric_model(double theta, Tau tau, const DerivedParams& p,
                           DephasingModel envelope = DephasingModel::ThermalWhichPath,
                           Regime regime = Regime::Realistic);

/// Dispatch: PolaronLab -> qfi_decohered, thermal variants -> qfi_geometric_model.
double qfi_for_model(double theta, Tau tau, const DerivedParams& p, DephasingModel model,
                     Regime regime = Regime::Realistic);

struct Sensitivity {
  double F_eff = 0.0;  // (2 F_r - 1)^2 F_Q
  double eta_g = 0.0;  // sqrt((t + T_over) / F_eff), m s^-2 / sqrt(Hz)
};

/// Throws std::domain_error when F_eff is zero (no information per cycle).
Sensitivity effective_fisher_and_sensitivity(double F_Q, double F_r, double t, double T_over);

}  // namespace qgrav
