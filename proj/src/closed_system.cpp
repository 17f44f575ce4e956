#include "qgrav/closed_system.hpp"

#include <cmath>
#include <stdexcept>

namespace qgrav {

namespace {

cplx unit_phase_minus(Tau tau) { return {tau.cos(), -tau.sin()}; }  // e^{-i tau}

cplx eta_of(Tau tau) { return {tau.one_minus_cos(), tau.sin()}; }

double branch_sign(int j) { return j == 0 ? 1.0 : -1.0; }

}  // namespace

ConditionalBranch branch_state(int j, cplx alpha, Tau tau, const DerivedParams& p) {
  if (j != 0 && j != 1) throw std::invalid_argument("branch index must be 0 or 1");
  ConditionalBranch b;
  b.j = j;
  b.Z = branch_sign(j) * p.k + p.G_bar;
  const cplx rotated = alpha * unit_phase_minus(tau);
  const cplx beta = -b.Z * eta_of(tau);
  b.alpha = rotated + beta;
  // Displacement phase from D(beta) acting on the rotated coherent state.
  const double chi = (beta * std::conj(rotated)).imag();
  b.phi.precession = 0.5 * branch_sign(j) * tau.value();
  b.phi.value = b.Z * b.Z * tau.minus_sin() + chi;
  return b;
}

HybridPureState hybrid_state(double theta, cplx alpha, Tau tau, const DerivedParams& p) {
  HybridPureState s;
  s.c0 = std::cos(0.5 * theta);
  s.c1 = std::sin(0.5 * theta);
  s.branches = {branch_state(0, alpha, tau, p), branch_state(1, alpha, tau, p)};
  s.tau = tau;
  return s;
}

QfiIntermediates qfi_intermediates(cplx alpha, Tau tau, const DerivedParams& p) {
  QfiIntermediates q;
  q.eta = eta_of(tau);
  const cplx e_plus{tau.cos(), tau.sin()};
  const double drive_term = (cplx{0.0, 1.0} * q.eta * alpha * e_plus).real();
  for (int j = 0; j < 2; ++j) {
    const ConditionalBranch b = branch_state(j, alpha, tau, p);
    q.A[j] = 2.0 * b.Z * tau.minus_sin() + drive_term;
    const cplx w = q.eta * std::conj(b.alpha);
    q.R[j] = w.real();
    q.I[j] = w.imag();
  }
  return q;
}

double qfi_closed_form(double theta, cplx /*alpha*/, Tau tau, const DerivedParams& p) {
  const double p0 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
  const double p1 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
  const cplx eta = eta_of(tau);
  // Branch differences: the drive term in A_j and the common alpha e^{-i tau}
  // in alpha_j are branch independent and cancel exactly.
  const double dZ = 2.0 * p.k;
  const double dA = 2.0 * dZ * tau.minus_sin();
  const cplx d_alpha = -dZ * eta;
  const double dI = (eta * std::conj(d_alpha)).imag();
  const double spread = dA - 2.0 * dI;
  const double variance = p0 * p1 * spread * spread;
  const double shot = std::norm(eta);
  return 4.0 * p.gamma_lever * p.gamma_lever * (variance + shot);
}

double qfi_revival(double gamma_lever, double k, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::domain_error("p0 must lie in [0, 1]");
  return 256.0 * constants::pi * constants::pi * gamma_lever * gamma_lever * k * k * p0 * (1.0 - p0);
}

double crb_delta_g(double F_Q, long long repetitions) {
  if (!(F_Q > 0.0)) throw std::domain_error("Cramer-Rao bound needs F_Q > 0");
  if (repetitions < 1) throw std::domain_error("repetitions must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(repetitions) * F_Q);
}

BranchOverlap branch_overlap(cplx alpha_0, cplx alpha_1) {
  const double d2 = std::norm(alpha_1 - alpha_0);
  return {cplx{std::exp(-0.5 * d2), 0.0}, std::exp(-d2)};
}

double linear_entropy(double p, cplx alpha_0, cplx alpha_1) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("population must lie in [0, 1]");
  // 1 - |O|^2 via expm1 keeps the small-separation regime accurate.
  const double d2 = std::norm(alpha_1 - alpha_0);
  return 2.0 * p * (1.0 - p) * -std::expm1(-d2);
}

QubitDensityMatrix reduced_qubit_state(const HybridPureState& s) {
  const ConditionalBranch& b0 = s.branches[0];
  const ConditionalBranch& b1 = s.branches[1];
  // <alpha_1|alpha_0> = exp(-|a0|^2/2 - |a1|^2/2 + conj(a1) a0)
  const cplx overlap = std::exp(-0.5 * std::norm(b0.alpha) - 0.5 * std::norm(b1.alpha) +
                                std::conj(b1.alpha) * b0.alpha);
  const cplx phase = std::polar(1.0, b0.phi.value - b1.phi.value);
  QubitDensityMatrix rho;
  rho.rho00 = s.c0 * s.c0;
  rho.rho11 = s.c1 * s.c1;
  rho.rho01 = s.c0 * s.c1 * phase * overlap;
  return rho;
}

}  // namespace qgrav
