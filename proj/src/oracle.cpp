#include "qgrav/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace qgrav::oracle {

namespace {

using SparseC = Eigen::SparseMatrix<cplx>;

int block_size(int n_max) { return n_max + 1; }

std::string leakage_message(double tau, double leakage, int n_max) {
  std::ostringstream os;
  os << "truncation leakage " << leakage << " on Fock level n_max=" << n_max << " at tau=" << tau
     << " exceeds " << kLeakageLimit;
  return os.str();
}

DerivedParams with_gravity_bar(DerivedParams p, double G_bar) {
  p.G_bar = G_bar;
  return p;
}

SparseC to_sparse(const std::vector<Eigen::Triplet<cplx>>& t, int dim) {
  SparseC m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// I_2 (x) a
SparseC lowering(int n_max) {
  const int nb = block_size(n_max);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int j = 0; j < 2; ++j)
    for (int n = 1; n <= n_max; ++n)
      t.emplace_back(j * nb + n - 1, j * nb + n, std::sqrt(static_cast<double>(n)));
  return to_sparse(t, 2 * nb);
}

SparseC sigma_z(int n_max) {
  const int nb = block_size(n_max);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 0; n <= n_max; ++n) {
    t.emplace_back(n, n, 1.0);
    t.emplace_back(nb + n, nb + n, -1.0);
  }
  return to_sparse(t, 2 * nb);
}

// |0><1| (x) I : relaxation 1 -> 0
SparseC sigma_minus(int n_max) {
  const int nb = block_size(n_max);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 0; n <= n_max; ++n) t.emplace_back(n, nb + n, 1.0);
  return to_sparse(t, 2 * nb);
}

SparseC sparse_hamiltonian(const DerivedParams& p, int n_max) {
  const SparseC a = lowering(n_max);
  const SparseC ad = SparseC(a.adjoint());
  const SparseC x = a + ad;
  SparseC number = ad * a;
  SparseC coupling = p.k * (sigma_z(n_max) * x) + p.G_bar * x;
  return number + coupling;
}

}  // namespace

TruncationError::TruncationError(double tau, double leakage, int n_max)
    : std::runtime_error(leakage_message(tau, leakage, n_max)), tau_(tau), leakage_(leakage) {}

int default_n_max(cplx alpha, const DerivedParams& p) {
  const double a = std::abs(alpha);
  const int base = static_cast<int>(std::ceil(4.0 * std::pow(a + 2.0 * std::abs(p.k) + 2.0, 2)));
  const double z_max = std::max(std::abs(p.k + p.G_bar), std::abs(-p.k + p.G_bar));
  const double reach = a + 2.0 * z_max;
  const int tails = static_cast<int>(std::ceil(std::pow(reach + 5.0, 2)));
  return std::max(base, tails);
}

Eigen::VectorXcd coherent_amplitudes(cplx alpha, int n_max) {
  Eigen::VectorXcd v(block_size(n_max));
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

FockState product_state(double theta, cplx alpha, int n_max) {
  const int nb = block_size(n_max);
  FockState s{n_max, Eigen::VectorXcd::Zero(2 * nb)};
  const Eigen::VectorXcd coh = coherent_amplitudes(alpha, n_max);
  s.amplitudes.head(nb) = std::cos(0.5 * theta) * coh;
  s.amplitudes.tail(nb) = std::sin(0.5 * theta) * coh;
  return s;
}

FockState embed(const HybridPureState& state, int n_max) {
  const int nb = block_size(n_max);
  FockState s{n_max, Eigen::VectorXcd::Zero(2 * nb)};
  const double c[2] = {state.c0, state.c1};
  for (int j = 0; j < 2; ++j) {
    const ConditionalBranch& b = state.branches[j];
    s.amplitudes.segment(j * nb, nb) =
        c[j] * std::polar(1.0, b.phi.value) * coherent_amplitudes(b.alpha, n_max);
  }
  return s;
}

Eigen::MatrixXcd build_hamiltonian(const DerivedParams& p, int n_max) {
  return Eigen::MatrixXcd(sparse_hamiltonian(p, n_max));
}

double fidelity(const FockState& a, const FockState& b) {
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

double top_level_population(const FockState& s) {
  const int nb = block_size(s.n_max);
  return std::max(std::norm(s.amplitudes(nb - 1)), std::norm(s.amplitudes(2 * nb - 1)));
}

FockState evolve_pure(const FockState& state, Tau tau, const DerivedParams& p) {
  constexpr int kSamples = 8;
  const int nb = block_size(state.n_max);
  const Eigen::MatrixXcd H = build_hamiltonian(p, state.n_max);
  FockState out{state.n_max, Eigen::VectorXcd::Zero(2 * nb)};
  const double total = tau.value();

  std::vector<Eigen::VectorXcd> modes(2);
  std::vector<Eigen::MatrixXd> vectors(2);
  std::vector<Eigen::VectorXd> energies(2);
  for (int j = 0; j < 2; ++j) {
    // Each qubit sector is a real symmetric tridiagonal block.
    const Eigen::MatrixXd block = H.block(j * nb, j * nb, nb, nb).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    vectors[j] = solver.eigenvectors();
    energies[j] = solver.eigenvalues();
    modes[j] = vectors[j].transpose() * state.amplitudes.segment(j * nb, nb);
  }
  for (int s = 1; s <= kSamples; ++s) {
    const double t = total * s / kSamples;
    FockState snapshot{state.n_max, Eigen::VectorXcd::Zero(2 * nb)};
    for (int j = 0; j < 2; ++j) {
      Eigen::VectorXcd phased = modes[j];
      for (int m = 0; m < nb; ++m) phased(m) *= std::polar(1.0, -energies[j](m) * t);
      snapshot.amplitudes.segment(j * nb, nb) = vectors[j].cast<cplx>() * phased;
    }
    const double leak = top_level_population(snapshot);
    if (leak > kLeakageLimit) throw TruncationError(t, leak, state.n_max);
    if (s == kSamples) out = std::move(snapshot);
  }
  if (total == 0.0) out = state;
  return out;
}

QubitDensityMatrix reduce_qubit(const FockState& s) {
  const int nb = block_size(s.n_max);
  const auto b0 = s.amplitudes.head(nb);
  const auto b1 = s.amplitudes.tail(nb);
  QubitDensityMatrix rho;
  rho.rho00 = b0.squaredNorm();
  rho.rho11 = b1.squaredNorm();
  rho.rho01 = b1.dot(b0);  // sum_n psi_0(n) conj(psi_1(n))
  return rho;
}

QubitDensityMatrix reduce_qubit(const DensityOperator& rho) {
  const int nb = block_size(rho.n_max);
  QubitDensityMatrix q;
  q.rho00 = rho.matrix.block(0, 0, nb, nb).trace().real();
  q.rho11 = rho.matrix.block(nb, nb, nb, nb).trace().real();
  q.rho01 = rho.matrix.block(0, nb, nb, nb).trace();
  return q;
}

FiniteDifferenceQfi qfi_pure_fd(double theta, cplx alpha, Tau tau, const DerivedParams& p,
                                int n_max, double delta_g) {
  const double gamma = p.gamma_lever;
  double dG = delta_g > 0.0 ? gamma * delta_g : 0.0;
  if (dG == 0.0) {
    const double slope = 2.0 * (std::abs(p.k) + std::abs(p.G_bar)) * std::abs(tau.value()) +
                         2.0 * std::abs(alpha) + 2.0;
    dG = 1e-3 / slope;
  }
  const FockState initial = product_state(theta, alpha, n_max);
  auto at = [&](double G) { return evolve_pure(initial, tau, with_gravity_bar(p, G)); };
  const double G0 = p.G_bar;
  const FockState centre = at(G0);

  auto estimate = [&](double h, double& derivative_form, double& fidelity_form) {
    const FockState plus = at(G0 + h);
    const FockState minus = at(G0 - h);
    const Eigen::VectorXcd d = (plus.amplitudes - minus.amplitudes) / (2.0 * h);
    const double norm_d = d.squaredNorm();
    const double proj = std::norm(centre.amplitudes.dot(d));
    derivative_form = 4.0 * (norm_d - proj) * gamma * gamma;
    // 1 - |<a|b>| = |a - c b|^2 / 2 with c aligning the phase; no cancellation.
    const cplx ov = minus.amplitudes.dot(plus.amplitudes);
    const cplx align = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : cplx(1.0, 0.0);
    const double infidelity = 0.5 * (minus.amplitudes - align * plus.amplitudes).squaredNorm();
    fidelity_form = 8.0 * infidelity / (4.0 * h * h) * gamma * gamma;
  };

  FiniteDifferenceQfi r;
  r.delta_g = dG / gamma;
  double d_full = 0, f_full = 0, d_half = 0, f_half = 0;
  estimate(dG, d_full, f_full);
  estimate(0.5 * dG, d_half, f_half);
  r.derivative_form = d_full;
  r.fidelity_form = f_full;
  r.derivative_richardson = (4.0 * d_half - d_full) / 3.0;
  r.fidelity_richardson = (4.0 * f_half - f_full) / 3.0;

  const double floor = 1e-6 * gamma * gamma;
  const double scale = std::max(std::abs(r.derivative_richardson), floor);
  const double spread_d = std::abs(d_full - d_half) / scale;
  const double spread_forms = std::abs(r.derivative_richardson - r.fidelity_richardson) / scale;
  if (spread_d > 1e-3 || spread_forms > 1e-3) {
    r.richardson_consistent = false;
    std::ostringstream os;
    os << "finite-difference estimates disagree: step spread " << spread_d << ", form spread "
       << spread_forms;
    r.warning = os.str();
  }
  return r;
}

DensityOperator thermal_product(double theta, double n_th, int n_max) {
  const int nb = block_size(n_max);
  Eigen::VectorXd weights(nb);
  const double ratio = n_th / (n_th + 1.0);
  double w = 1.0;
  for (int n = 0; n < nb; ++n) {
    weights(n) = w;
    w *= ratio;
  }
  weights /= weights.sum();
  const double c[2] = {std::cos(0.5 * theta), std::sin(0.5 * theta)};
  DensityOperator rho{n_max, Eigen::MatrixXcd::Zero(2 * nb, 2 * nb)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int n = 0; n < nb; ++n) rho.matrix(i * nb + n, j * nb + n) = c[i] * c[j] * weights(n);
  return rho;
}

DensityOperator projector(const FockState& s) {
  return {s.n_max, s.amplitudes * s.amplitudes.adjoint()};
}

namespace {

struct Liouvillian {
  SparseC H_eff;               // H - (i/2) sum L^dag L
  std::vector<SparseC> jumps;  // L_k
  std::vector<SparseC> jumps_adj;

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const {
    const Eigen::MatrixXcd x = H_eff * rho;
    // rho H_eff^dag = (H_eff rho)^dag for Hermitian rho.
    Eigen::MatrixXcd out = cplx(0.0, -1.0) * (x - x.adjoint());
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      const Eigen::MatrixXcd y = jumps[k] * rho;
      out.noalias() += y * jumps_adj[k];
    }
    return out;
  }
};

Liouvillian make_liouvillian(const DerivedParams& p, int n_max) {
  const double w = p.omega_m;
  const SparseC a = lowering(n_max);
  const SparseC ad = SparseC(a.adjoint());
  std::vector<SparseC> L;
  auto add = [&](double rate, const SparseC& op) {
    if (rate > 0.0) L.push_back(std::sqrt(rate / w) * op);
  };
  add(p.Gamma_1, sigma_minus(n_max));
  add(p.Gamma_phi, sigma_z(n_max));
  add(p.gamma_m * (p.n_th + 1.0), a);
  add(p.gamma_m * p.n_th, ad);

  Liouvillian liou;
  liou.H_eff = sparse_hamiltonian(p, n_max);
  for (const SparseC& op : L) {
    const SparseC adj = SparseC(op.adjoint());
    liou.H_eff -= cplx(0.0, 0.5) * (adj * op);
    liou.jumps.push_back(op);
    liou.jumps_adj.push_back(adj);
  }
  return liou;
}

Eigen::MatrixXcd rk4(const Liouvillian& liou, Eigen::MatrixXcd rho, double total, int steps) {
  const double h = total / steps;
  for (int s = 0; s < steps; ++s) {
    const Eigen::MatrixXcd k1 = liou.apply(rho);
    const Eigen::MatrixXcd k2 = liou.apply(rho + 0.5 * h * k1);
    const Eigen::MatrixXcd k3 = liou.apply(rho + 0.5 * h * k2);
    const Eigen::MatrixXcd k4 = liou.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

LindbladResult lindblad_integrate(const DensityOperator& rho0, Tau tau, const DerivedParams& p,
                                  const LindbladOptions& options) {
  const Liouvillian liou = make_liouvillian(p, rho0.n_max);
  const double total = tau.value();
  LindbladResult result;
  if (total == 0.0) {
    result.rho = rho0;
    result.trace_error = std::abs(rho0.matrix.trace().real() - 1.0);
    return result;
  }

  int steps = options.initial_steps;
  if (steps <= 0) {
    const double radius = rho0.n_max + 2.0 * (std::abs(p.k) + std::abs(p.G_bar)) *
                                           std::sqrt(static_cast<double>(rho0.n_max) + 1.0);
    steps = std::max(16, static_cast<int>(std::ceil(total * radius / 0.5)));
  }
  Eigen::MatrixXcd coarse = rk4(liou, rho0.matrix, total, steps);
  double change = 0.0;
  bool converged = false;
  for (int halving = 0; halving <= options.max_halvings; ++halving) {
    steps *= 2;
    Eigen::MatrixXcd fine = rk4(liou, rho0.matrix, total, steps);
    change = (fine - coarse).cwiseAbs().maxCoeff();
    coarse = std::move(fine);
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  result.rho = {rho0.n_max, coarse};
  result.steps = steps;
  result.achieved_change = change;
  result.trace_error = std::abs(coarse.trace().real() - 1.0);
  const Eigen::MatrixXcd herm = 0.5 * (coarse + coarse.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  result.min_eigenvalue = eig.eigenvalues().minCoeff();

  if (!converged) {
    std::ostringstream os;
    os << "Lindblad step halving did not converge: change " << change << " after " << steps
       << " steps (tolerance " << options.tolerance << ")";
    throw IntegrationError(os.str());
  }
  if (result.trace_error > options.trace_tolerance) {
    throw IntegrationError("Lindblad trace drift " + std::to_string(result.trace_error));
  }
  if (result.min_eigenvalue < -options.positivity_tolerance) {
    throw IntegrationError("Lindblad positivity violated: min eigenvalue " +
                           std::to_string(result.min_eigenvalue));
  }
  return result;
}

double qfi_mixed_bloch(const std::function<QubitDensityMatrix(double)>& rho_of_g, double g,
                       double delta_g) {
  if (!(delta_g > 0.0)) throw std::domain_error("delta_g must be positive");
  const BlochVector r = rho_of_g(g).bloch();
  auto estimate = [&](double h) {
    const BlochVector up = rho_of_g(g + h).bloch();
    const BlochVector dn = rho_of_g(g - h).bloch();
    const double dx = (up.r_x - dn.r_x) / (2.0 * h);
    const double dy = (up.r_y - dn.r_y) / (2.0 * h);
    const double dz = (up.r_z - dn.r_z) / (2.0 * h);
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double rd = r.r_x * dx + r.r_y * dy + r.r_z * dz;
    const double mixedness = 1.0 - r.norm_sq();
    if (mixedness < 1e-12) {
      if (std::abs(rd) > 1e-9 * std::sqrt(d2)) {
        throw std::domain_error("Bloch QFI singular: |r| -> 1 with r . dr != 0");
      }
      return d2;
    }
    return d2 + rd * rd / mixedness;
  };
  const double full = estimate(delta_g);
  const double half = estimate(0.5 * delta_g);
  return (4.0 * half - full) / 3.0;
}

}  // namespace qgrav::oracle
