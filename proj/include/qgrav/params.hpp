#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "qgrav/constants.hpp"

namespace qgrav {

/// Raised when a device parameter violates its physical domain.
class ParameterError : public std::domain_error {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raw experimental parameters. Frequencies are ordinary (Hz); conversion to
/// angular units happens once, in derive().
struct DeviceInput {
  double f_m = 0.0;          // mechanical frequency, Hz
  double m_eff = 0.0;        // effective mass, kg
  double g0_over_2pi = 0.0;  // single-phonon coupling, Hz
  double Q_m = 0.0;          // mechanical quality factor
  double T_bath = 0.0;       // bath temperature, K
  double T1 = 0.0;           // qubit relaxation time, s
  double T_phi = 0.0;        // pure dephasing time, s
  double F_r = 1.0;          // binary readout fidelity, [0.5, 1]
  double theta = constants::pi / 2.0;  // preparation polar angle, rad
  std::complex<double> alpha{0.0, 0.0};  // initial coherent amplitude
  double g = 9.81;           // gravitational acceleration, m/s^2
  double T_over = 0.0;       // preparation/readout overhead per cycle, s
};

struct DerivedParams {
  double omega_m = 0.0;          // rad/s
  double z_zpf = 0.0;            // m
  double gamma_lever = 0.0;      // s^2/m, m_eff z_zpf / (hbar omega_m)
  double k = 0.0;                // g0 / omega_m
  double G_bar = 0.0;            // gamma_lever * g
  double gamma_m = 0.0;          // omega_m / Q_m, 1/s
  double n_th = 0.0;
  double Gamma_1 = 0.0;          // 1/T1
  double Gamma_phi = 0.0;        // 1/T_phi (bare)
  double Gamma_phi_prime = 0.0;  // Gamma_phi + gamma_m k^2 (2 n_th + 1)
  double Gamma_2 = 0.0;          // Gamma_1/2 + 2 Gamma_phi_prime
};

/// Additive pieces of the total dephasing rate, all in 1/s.
struct DephasingBreakdown {
  double relaxation = 0.0;  // Gamma_1 / 2
  double pure = 0.0;        // 2 Gamma_phi
  double mechanical = 0.0;  // 2 gamma_m k^2 (2 n_th + 1)
  double total() const { return relaxation + pure + mechanical; }
};

/// Checks every DeviceInput invariant; throws ParameterError naming the field.
void validate(const DeviceInput& input);

DerivedParams derive(const DeviceInput& input);

/// Bose-Einstein occupation 1/(exp(hbar w / kB T) - 1), finite for any x > 0.
double thermal_occupation(double omega_m, double T_bath);

double total_dephasing_rate(const DerivedParams& p);
DephasingBreakdown dephasing_breakdown(const DerivedParams& p);

}  // namespace qgrav
