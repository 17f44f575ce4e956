#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrav/open_system.hpp"
#include "qgrav/params.hpp"

namespace qgrav {

/// Scenario-level failure; the message always starts with the scenario name.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& scenario, const std::string& what)
      : std::runtime_error(scenario + ": " + what), scenario_(scenario) {}
  const std::string& scenario() const noexcept { return scenario_; }

 private:
  std::string scenario_;
};

struct ScenarioSpec {
  std::string name;
  DeviceInput device;
  DephasingModel model = DephasingModel::PolaronLab;
  Regime regime = Regime::Realistic;
  int n_half_cycle_max = 400;  // search covers even n in [2, n_half_cycle_max]
  double T_int = 600.0;        // s
  /// Published values to compare against, keyed by report quantity
  /// (see reference_quantities()).
  std::map<std::string, double> reference;
};

void validate(const ScenarioSpec& spec);

/// Ideal evaluation: qubit dephasing off and perfect readout.
double readout_fidelity(const ScenarioSpec& spec, Regime regime);

struct MetrologyPoint {
  double t = 0.0;
  double tau_over_pi = 0.0;
  double F_Q_closed = 0.0;     // pure-state QFI, no decoherence
  double F_Q = 0.0;            // decohered QFI of the selected model
  double F_C_max = 0.0;
  double visibility = 0.0;
  double S_L = 0.0;
  double eta_g_if_stopped = 0.0;  // +inf when the cycle carries no information
};

MetrologyPoint metrology_point(const ScenarioSpec& spec, const DerivedParams& p, Tau tau,
                               Regime regime);

/// Uniform grid t_i = i T_m / points_per_period, i = 1 .. points_per_period * periods.
std::vector<MetrologyPoint> time_series(const ScenarioSpec& spec, int points_per_period,
                                        double periods, Regime regime);

struct OptimalTime {
  int n_star = 0;  // half cycles, always even
  double t_star = 0.0;
};

/// Maximizes F_eff / (t + T_over) over revival times. Throws ScenarioError if
/// the best revival is the last one searched.
OptimalTime find_optimal_time(const ScenarioSpec& spec);

struct MetricBlock {
  double F_Q = 0.0;
  double F_eff = 0.0;
  double eta_g = 0.0;
  double delta_g_T_int = 0.0;  // eta_g / sqrt(T_int)
  double F_C_max = 0.0;
  double visibility = 0.0;
};

struct ReferenceCheck {
  std::string quantity;
  double computed = 0.0;
  double reference = 0.0;
  double relative_deviation = 0.0;
  bool flagged = false;  // |relative_deviation| > 3%
};

struct ScenarioReport {
  std::string name;
  std::string model;
  int n_star = 0;
  double t_star = 0.0;
  double Gamma_2 = 0.0;
  double T_int = 0.0;
  double T_over = 0.0;
  MetricBlock realistic;
  MetricBlock ideal;                    // Gamma_2 = 0, F_r = 1
  double ideal_eta_with_readout = 0.0;  // Gamma_2 = 0, F_r kept
  double cfi_as_reported = 0.0;         // r_perp^2 A^2 / (1 - r_perp^2) at t*
  bool cfi_as_reported_exceeds_qfi = false;
  double crb_per_shot = 0.0;            // 1 / sqrt(F_eff) at t*
  std::vector<ReferenceCheck> references;
  std::vector<MetrologyPoint> series;   // up to t*, at the requested density
};

/// Keys accepted in ScenarioSpec::reference.
const std::vector<std::string>& reference_quantities();

ScenarioReport evaluate_scenario(const ScenarioSpec& spec, int points_per_period = 40);

enum class SweepAxis { K, Q_m, T_bath, F_r, m_eff, f_m };

/// Accepted names: k, Q_m, T_bath, F_r, m_eff, f_m.
SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);
std::string axis_choices();

/// Copy of the device with one parameter replaced. k is set through g0;
/// f_m keeps g0 fixed, so it moves k too.
DeviceInput with_axis_value(const DeviceInput& device, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  double FQ_peak_ideal = 0.0;       // Gamma_2 = 0 QFI at the realistic t*
  double FQ_peak_decohered = 0.0;   // realistic QFI at t*
  double visibility_tau_pi = 0.0;   // realistic visibility at tau = pi
  double eta_g_at_opt = 0.0;
  int n_star = 0;
};

std::vector<SweepRow> sweep(const ScenarioSpec& spec, SweepAxis axis,
                            const std::vector<double>& values);

}  // namespace qgrav
