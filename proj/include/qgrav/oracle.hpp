#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

#include "qgrav/closed_system.hpp"
#include "qgrav/params.hpp"
#include "qgrav/qubit.hpp"
#include "qgrav/tau.hpp"

/// Brute-force checks in a truncated Fock space. Everything here works in
/// units of hbar * omega_m and dimensionless time tau, in the frame rotating
/// with the bare qubit precession. Basis index is j * (n_max + 1) + n with
/// qubit state j in {0, 1} and phonon number n.
namespace qgrav::oracle {

class TruncationError : public std::runtime_error {
 public:
  TruncationError(double tau, double leakage, int n_max);
  double tau() const noexcept { return tau_; }
  double leakage() const noexcept { return leakage_; }

 private:
  double tau_;
  double leakage_;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kLeakageLimit = 1e-8;

/// Phonon cutoff for a coherent drive alpha and G_bar-displaced branches.
int default_n_max(cplx alpha, const DerivedParams& p);

struct FockState {
  int n_max = 0;
  Eigen::VectorXcd amplitudes;
};

struct DensityOperator {
  int n_max = 0;
  Eigen::MatrixXcd matrix;
};

Eigen::VectorXcd coherent_amplitudes(cplx alpha, int n_max);

/// (cos(theta/2)|0> + sin(theta/2)|1>) (x) |alpha>
FockState product_state(double theta, cplx alpha, int n_max);

/// Analytic joint state written out in the Fock basis (precession dropped).
FockState embed(const HybridPureState& state, int n_max);

/// a^dag a + (k sigma_z + G_bar)(a + a^dag), dense, dimension 2 (n_max + 1).
Eigen::MatrixXcd build_hamiltonian(const DerivedParams& p, int n_max);

/// |<a|b>|^2
double fidelity(const FockState& a, const FockState& b);

/// Largest population on the top Fock level across both qubit branches.
double top_level_population(const FockState& s);

/// Direct propagation of the truncated Hamiltonian. Leakage into level n_max
/// is sampled along the trajectory; TruncationError names the first bad time.
FockState evolve_pure(const FockState& state, Tau tau, const DerivedParams& p);

QubitDensityMatrix reduce_qubit(const FockState& s);
QubitDensityMatrix reduce_qubit(const DensityOperator& rho);

struct FiniteDifferenceQfi {
  double derivative_form = 0.0;       // 4[<dPsi|dPsi> - |<Psi|dPsi>|^2] at step delta
  double fidelity_form = 0.0;         // 8 (1 - |<Psi(g)|Psi(g + delta)>|) / delta^2
  double derivative_richardson = 0.0; // (4 F(delta/2) - F(delta)) / 3
  double fidelity_richardson = 0.0;
  double delta_g = 0.0;               // m/s^2
  bool richardson_consistent = true;  // both step pairs agree to 1e-3
  std::string warning;
};

/// Pure-state QFI with respect to g, s^4/m^2, from central differences in
/// G_bar = gamma g. delta_g <= 0 picks a step with phase increments ~1e-3 rad.
FiniteDifferenceQfi qfi_pure_fd(double theta, cplx alpha, Tau tau, const DerivedParams& p,
                                int n_max, double delta_g = 0.0);

/// Truncated Bose distribution (renormalized) for the mechanics, pure qubit.
DensityOperator thermal_product(double theta, double n_th, int n_max);
DensityOperator projector(const FockState& s);

struct LindbladOptions {
  int initial_steps = 0;      // 0: derived from the spectral radius
  double tolerance = 1e-9;    // max element change between step counts N and 2N
  int max_halvings = 5;
  double trace_tolerance = 1e-8;
  double positivity_tolerance = 1e-8;
};

struct LindbladResult {
  DensityOperator rho;
  int steps = 0;
  double achieved_change = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

/// Lab-frame master equation with collapse operators sqrt(Gamma_1) sigma_-,
/// sqrt(Gamma_phi) sigma_z, sqrt(gamma_m (n_th + 1)) a and sqrt(gamma_m n_th) a^dag.
/// Fixed-step RK4 with step halving until successive results agree.
LindbladResult lindblad_integrate(const DensityOperator& rho0, Tau tau, const DerivedParams& p,
                                  const LindbladOptions& options = {});

/// Two-level QFI |dr|^2 + (r . dr)^2 / (1 - |r|^2) from central differences
/// of the Bloch vector, Richardson-combined over delta and delta/2.
double qfi_mixed_bloch(const std::function<QubitDensityMatrix(double)>& rho_of_g, double g,
                       double delta_g);

}  // namespace qgrav::oracle
