#pragma once

#include <string>
#include <vector>

#include "qgrav/params.hpp"

namespace qgrav {

struct ValidationCheck {
  std::string name;
  std::string reference;  // what is being compared against what
  double tolerance = 0.0;
  double achieved = 0.0;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  int n_max = 0;             // 0: default_n_max per point
  double delta_g = 0.0;      // 0: automatic step
  bool open_system = true;   // run the Lindblad checks
  bool inject_sign_fault = false;  // harness self-test: flips the closed-form sign
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  int n_max_min = 0;   // smallest / largest cutoff used by the closed-system sweep
  int n_max_max = 0;
  double n_max_doubling_shift = 0.0;
  bool passed() const;
};

/// Point set used by the closed-system oracle comparison.
struct OraclePoint {
  double theta = 0.0;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  double tau = 0.0;    // radians
  double k = 0.0;
  double G_bar = 0.0;  // test value, the physical one is out of Fock reach
};
std::vector<OraclePoint> oracle_points();

// Individual checks. `device` supplies gamma (and k where physical values are
// used); all Fock-space work uses test values of G_bar.
ValidationCheck check_revival_identity(const DeviceInput& device);
ValidationCheck check_closed_vs_oracle(const DeviceInput& device, const ValidationOptions& opts,
                                       ValidationReport* report = nullptr);
ValidationCheck check_n_max_convergence(const DeviceInput& device, const ValidationOptions& opts,
                                        ValidationReport* report = nullptr);
ValidationCheck check_analytic_state(const ValidationOptions& opts);
ValidationCheck check_revival_vacuum(const DeviceInput& device, const ValidationOptions& opts);
ValidationCheck check_revival_fd(const DeviceInput& device, const ValidationOptions& opts);
ValidationCheck check_no_superposition(const DeviceInput& device, const ValidationOptions& opts);
ValidationCheck check_mixed_bloch(const DeviceInput& device);
ValidationCheck check_cfi_grid(const DeviceInput& device);
ValidationCheck check_lindblad_relaxation(const ValidationOptions& opts);
ValidationCheck check_lindblad_closed_limit(const ValidationOptions& opts);
ValidationCheck check_lindblad_lab_frame(const ValidationOptions& opts);
ValidationCheck check_lindblad_branch_overlap(const ValidationOptions& opts);

ValidationReport run_validation(const DeviceInput& device, const ValidationOptions& opts);

}  // namespace qgrav
