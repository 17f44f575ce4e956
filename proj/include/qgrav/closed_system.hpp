#pragma once

#include <array>
#include <complex>

#include "qgrav/params.hpp"
#include "qgrav/qubit.hpp"
#include "qgrav/tau.hpp"

namespace qgrav {

using cplx = std::complex<double>;

/// Branch phase phi_j = precession * (Omega_q / omega_m) + value.
///
/// The qubit-precession part is kept as a coefficient and never multiplied by
/// Omega_q; only phase differences and g-derivatives reach observables.
struct BranchPhase {
  double precession = 0.0;
  double value = 0.0;
};

/// Mechanical trajectory conditioned on qubit state |j>.
struct ConditionalBranch {
  int j = 0;
  double Z = 0.0;    // (-1)^j k + G_bar
  cplx alpha;        // alpha e^{-i tau} - Z (1 - e^{-i tau})
  BranchPhase phi;
};

struct HybridPureState {
  double c0 = 1.0;
  double c1 = 0.0;
  std::array<ConditionalBranch, 2> branches;
  Tau tau = Tau::radians(0.0);
};

struct QfiIntermediates {
  cplx eta;                    // 1 - e^{-i tau}
  std::array<double, 2> A{};   // 2 Z_j (tau - sin tau) + Re(i eta alpha e^{i tau})
  std::array<double, 2> R{};   // Re(eta conj(alpha_j))
  std::array<double, 2> I{};   // Im(eta conj(alpha_j))
};

struct BranchOverlap {
  cplx O;             // exp(-|alpha_1 - alpha_0|^2 / 2), phase-free form
  double O_sq = 1.0;  // exp(-|alpha_0 - alpha_1|^2)
};

ConditionalBranch branch_state(int j, cplx alpha, Tau tau, const DerivedParams& p);
HybridPureState hybrid_state(double theta, cplx alpha, Tau tau, const DerivedParams& p);

QfiIntermediates qfi_intermediates(cplx alpha, Tau tau, const DerivedParams& p);

/// Pure-state gravitational QFI, s^4/m^2.
///
/// Evaluated as 4 gamma^2 [Var_p(A_j - 2 I_j) + |eta|^2]: the weighted
/// second moments of the two branches collapse into a central variance plus
/// the shot term, so the ~G_bar * tau sized pieces of A_j never subtract.
/// The branch difference uses Z_0 - Z_1 = 2k directly.
double qfi_closed_form(double theta, cplx alpha, Tau tau, const DerivedParams& p);

/// 256 pi^2 gamma^2 k^2 p0 (1 - p0): the QFI at the first revival.
double qfi_revival(double gamma_lever, double k, double p0);

/// Quantum Cramer-Rao bound 1/sqrt(N F_Q), m/s^2.
double crb_delta_g(double F_Q, long long repetitions);

BranchOverlap branch_overlap(cplx alpha_0, cplx alpha_1);

/// 2 p (1 - p) (1 - |O|^2)
double linear_entropy(double p, cplx alpha_0, cplx alpha_1);

/// Reduced qubit state of the joint pure state, using the full coherent-state
/// overlap <alpha_1|alpha_0> and the branch phases (precession dropped).
QubitDensityMatrix reduced_qubit_state(const HybridPureState& state);

}  // namespace qgrav
