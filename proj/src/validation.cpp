#include "qgrav/validation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qgrav/closed_system.hpp"
#include "qgrav/open_system.hpp"
#include "qgrav/oracle.hpp"
#include "qgrav/scenario.hpp"

namespace qgrav {

namespace {

using Clock = std::chrono::steady_clock;

double frac(double x) { return x - std::floor(x); }

template <typename Fn>
ValidationCheck timed(Fn fn) {
  const auto start = Clock::now();
  ValidationCheck c = fn();
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

ValidationCheck make(std::string name, std::string reference, double tolerance, double achieved,
                     std::string detail = {}) {
  ValidationCheck c;
  c.name = std::move(name);
  c.reference = std::move(reference);
  c.tolerance = tolerance;
  c.achieved = achieved;
  c.passed = std::isfinite(achieved) && achieved <= tolerance;
  c.detail = std::move(detail);
  return c;
}

DerivedParams test_params(const DeviceInput& device, double k, double G_bar) {
  DerivedParams p = derive(device);
  p.k = k;
  p.G_bar = G_bar;
  return p;
}

int cutoff(const ValidationOptions& opts, cplx alpha, const DerivedParams& p) {
  return opts.n_max > 0 ? opts.n_max : oracle::default_n_max(alpha, p);
}

double relative(double value, double expected, double floor) {
  return std::abs(value - expected) / std::max(std::abs(expected), floor);
}

// Dimensionless open-system test point: omega_m = 1, so t = tau.
DerivedParams lindblad_params(double k, double G_bar, double n_th, double Gamma_1,
                              double Gamma_phi, double gamma_m) {
  DerivedParams p;
  p.omega_m = 1.0;
  p.gamma_lever = 1.0;
  p.k = k;
  p.G_bar = G_bar;
  p.n_th = n_th;
  p.Gamma_1 = Gamma_1;
  p.Gamma_phi = Gamma_phi;
  p.gamma_m = gamma_m;
  p.Gamma_phi_prime = Gamma_phi + gamma_m * k * k * (2.0 * n_th + 1.0);
  p.Gamma_2 = 0.5 * Gamma_1 + 2.0 * p.Gamma_phi_prime;
  return p;
}

int lindblad_cutoff(const ValidationOptions& opts, int fallback) {
  return opts.n_max > 0 ? opts.n_max : fallback;
}

constexpr int kSegments = 8;

/// Reduced qubit states after each of kSegments equal slices of one period.
std::vector<QubitDensityMatrix> lindblad_period(const oracle::DensityOperator& rho0,
                                                const DerivedParams& p,
                                                const oracle::LindbladOptions& lo = {}) {
  std::vector<QubitDensityMatrix> out;
  oracle::DensityOperator rho = rho0;
  const Tau slice = Tau::half_cycles(2.0 / kSegments);
  for (int s = 0; s < kSegments; ++s) {
    rho = oracle::lindblad_integrate(rho, slice, p, lo).rho;
    out.push_back(oracle::reduce_qubit(rho));
  }
  return out;
}

Tau segment_end(int s) { return Tau::half_cycles(2.0 * (s + 1) / kSegments); }

double operator_trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::vector<OraclePoint> oracle_points() {
  // Additive recurrence on irrational steps: deterministic, well spread.
  constexpr double s1 = 0.7548776662466927, s2 = 0.5698402909980532;
  constexpr double s3 = 0.6180339887498949, s4 = 0.4142135623730950, s5 = 0.7320508075688772;
  std::vector<OraclePoint> pts;
  for (int i = 0; i < 52; ++i) {
    OraclePoint q;
    q.theta = 0.15 + (constants::pi - 0.3) * frac(0.5 + i * s1);
    const double mag = 2.0 * frac(0.5 + i * s2);
    const double arg = constants::two_pi * frac(0.5 + i * s3);
    q.alpha_re = mag * std::cos(arg);
    q.alpha_im = mag * std::sin(arg);
    q.tau = 4.0 * constants::pi * frac(i * s4);
    q.k = 0.05 + 0.25 * frac(0.5 + i * s5);
    q.G_bar = 2.0 * frac(0.25 + i * s3 * s4);
    pts.push_back(q);
  }
  // Revivals at the corners of the range.
  pts.push_back({constants::pi / 2, 0.0, 0.0, constants::two_pi, 0.2, 1.0});
  pts.push_back({constants::pi / 2, 2.0, 0.0, 2.0 * constants::two_pi, 0.3, 2.0});
  pts.push_back({1.0, 0.0, -2.0, constants::pi, 0.3, 0.0});
  return pts;
}

ValidationCheck check_revival_identity(const DeviceInput& device) {
  return timed([&] {
    const double gamma = derive(device).gamma_lever;
    double worst = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c) {
          const double k = 0.05 + 0.45 * a / 4.0;
          const double G = b == 0 ? 0.0 : std::pow(10.0, 5.0 * b / 4.0);
          const double theta = 0.1 + (constants::pi - 0.2) * c / 4.0;
          DerivedParams p = test_params(device, k, G);
          const double F = qfi_closed_form(theta, cplx(0.0, 0.0), Tau::half_cycles(2.0), p);
          const double p0 = std::pow(std::cos(0.5 * theta), 2);
          worst = std::max(worst, relative(F, qfi_revival(gamma, k, p0), 0.0));
        }
    return make("revival_identity", "closed-form QFI at tau = 2 pi vs 256 pi^2 gamma^2 k^2 p0 p1",
                1e-9, worst, "125 points in (k, G_bar, theta)");
  });
}

ValidationCheck check_closed_vs_oracle(const DeviceInput& device, const ValidationOptions& opts,
                                       ValidationReport* report) {
  return timed([&] {
    const auto pts = oracle_points();
    double worst = 0.0;
    int warnings = 0;
    int n_lo = 1 << 30, n_hi = 0;
    for (const OraclePoint& q : pts) {
      const DerivedParams p = test_params(device, q.k, q.G_bar);
      const cplx alpha(q.alpha_re, q.alpha_im);
      const Tau tau = Tau::radians(q.tau);
      const int n = cutoff(opts, alpha, p);
      n_lo = std::min(n_lo, n);
      n_hi = std::max(n_hi, n);
      const auto fd = oracle::qfi_pure_fd(q.theta, alpha, tau, p, n, opts.delta_g);
      double closed = qfi_closed_form(q.theta, alpha, tau, p);
      if (opts.inject_sign_fault) closed = -closed;
      const double floor = 1e-6 * p.gamma_lever * p.gamma_lever;
      worst = std::max({worst, relative(fd.derivative_richardson, closed, floor),
                        relative(fd.fidelity_richardson, closed, floor)});
      if (!fd.richardson_consistent) ++warnings;
    }
    if (report) {
      report->n_max_min = n_lo;
      report->n_max_max = n_hi;
    }
    std::ostringstream os;
    os << pts.size() << " points, alpha <= 2, k <= 0.3, tau in [0, 4 pi], n_max " << n_lo << ".."
       << n_hi << ", richardson warnings " << warnings;
    if (opts.inject_sign_fault) os << ", sign fault injected";
    return make("closed_vs_fock_qfi", "closed-form QFI vs finite-difference QFI of the propagated Fock state",
                1e-4, worst, os.str());
  });
}

ValidationCheck check_n_max_convergence(const DeviceInput& device, const ValidationOptions& opts,
                                        ValidationReport* report) {
  return timed([&] {
    auto pts = oracle_points();
    // The hardest points: largest drive and longest time.
    std::sort(pts.begin(), pts.end(), [](const OraclePoint& a, const OraclePoint& b) {
      return std::hypot(a.alpha_re, a.alpha_im) + a.tau > std::hypot(b.alpha_re, b.alpha_im) + b.tau;
    });
    pts.resize(6);
    double worst = 0.0;
    for (const OraclePoint& q : pts) {
      const DerivedParams p = test_params(device, q.k, q.G_bar);
      const cplx alpha(q.alpha_re, q.alpha_im);
      const Tau tau = Tau::radians(q.tau);
      const int n = cutoff(opts, alpha, p);
      const auto base = oracle::qfi_pure_fd(q.theta, alpha, tau, p, n, opts.delta_g);
      const auto doubled = oracle::qfi_pure_fd(q.theta, alpha, tau, p, 2 * n, opts.delta_g);
      worst = std::max(worst, relative(doubled.derivative_richardson, base.derivative_richardson,
                                       1e-6 * p.gamma_lever * p.gamma_lever));
    }
    if (report) report->n_max_doubling_shift = worst;
    return make("n_max_doubling", "oracle QFI at n_max vs 2 n_max", 1e-6, worst,
                "6 largest-amplitude points");
  });
}

ValidationCheck check_analytic_state(const ValidationOptions& opts) {
  return timed([&] {
    DeviceInput unit;
    unit.f_m = 1e5;
    unit.m_eff = 5.3e-10;
    unit.Q_m = unit.T_bath = unit.T1 = unit.T_phi = 1.0;
    const DerivedParams p = test_params(unit, 0.2, 0.8);
    double worst = 0.0;
    const std::pair<cplx, double> cases[] = {
        {cplx(1.0, 0.0), constants::pi}, {std::polar(2.0, 0.7), 3.3}, {cplx(0.0, 0.0), 1.25}};
    for (const auto& [alpha, tau_r] : cases) {
      const Tau tau = Tau::radians(tau_r);
      const int n = cutoff(opts, alpha, p);
      const auto numeric = oracle::evolve_pure(oracle::product_state(1.2, alpha, n), tau, p);
      const auto analytic = oracle::embed(hybrid_state(1.2, alpha, tau, p), n);
      worst = std::max(worst, 1.0 - oracle::fidelity(numeric, analytic));
    }
    return make("analytic_state_fidelity", "propagated Fock state vs analytic branch construction",
                1e-8, worst, "alpha in {1, 2 e^{0.7i}, 0}, k = 0.2, G_bar = 0.8");
  });
}

ValidationCheck check_revival_vacuum(const DeviceInput& device, const ValidationOptions& opts) {
  return timed([&] {
    const DerivedParams p = test_params(device, derive(device).k, 1.0);
    const int n = cutoff(opts, cplx(0.0, 0.0), p);
    const auto s = oracle::evolve_pure(oracle::product_state(constants::pi / 2, 0.0, n),
                                       Tau::half_cycles(2.0), p);
    const double vac = std::norm(s.amplitudes(0)) + std::norm(s.amplitudes(n + 1));
    return make("revival_disentangles", "mechanical vacuum population after one period",
                1e-8, 1.0 - vac, "theta = pi/2, alpha = 0, test G_bar = 1");
  });
}

ValidationCheck check_revival_fd(const DeviceInput& device, const ValidationOptions& opts) {
  return timed([&] {
    const DerivedParams phys = derive(device);
    const DerivedParams p = test_params(device, phys.k, 1.0);
    const int n = cutoff(opts, cplx(0.0, 0.0), p);
    const auto fd = oracle::qfi_pure_fd(constants::pi / 2, 0.0, Tau::half_cycles(2.0), p, n, opts.delta_g);
    const double expected = qfi_revival(phys.gamma_lever, phys.k, 0.5);
    std::ostringstream os;
    os << "oracle " << fd.derivative_richardson << " vs " << expected
       << " s^4/m^2; relies on G_bar-independence at revivals";
    return make("revival_qfi_oracle", "finite-difference QFI at tau = 2 pi vs revival formula", 1e-4,
                relative(fd.derivative_richardson, expected, 0.0), os.str());
  });
}

ValidationCheck check_no_superposition(const DeviceInput& device, const ValidationOptions& opts) {
  return timed([&] {
    const DerivedParams phys = derive(device);
    const DerivedParams p = test_params(device, phys.k, 1.0);
    const int n = cutoff(opts, cplx(0.0, 0.0), p);
    const auto fd = oracle::qfi_pure_fd(0.0, 0.0, Tau::half_cycles(2.0), p, n, opts.delta_g);
    const double scale = qfi_revival(phys.gamma_lever, phys.k, 0.5);
    return make("theta_zero_qfi", "oracle QFI with no qubit superposition, tau = 2 pi", 1e-6,
                std::abs(fd.derivative_richardson) / scale, "relative to the balanced revival value");
  });
}

ValidationCheck check_mixed_bloch(const DeviceInput& device) {
  return timed([&] {
    ScenarioSpec spec;
    spec.name = "validation";
    spec.device = device;
    const OptimalTime opt = find_optimal_time(spec);
    const Tau tau = Tau::half_cycles(opt.n_star);
    const DerivedParams p = derive(device);
    const double expected = qfi_decohered(device.theta, tau, p);
    const double dg = 1e-3 / std::abs(phase_sensitivity(tau, p));
    const double F = oracle::qfi_mixed_bloch(
        [&](double g) {
          DeviceInput d = device;
          d.g = g;
          return lab_density_matrix(d.theta, tau, derive(d));
        },
        device.g, dg);
    std::ostringstream os;
    os << "Bloch-vector QFI " << F << " vs " << expected << " at n* = " << opt.n_star;
    return make("decohered_qfi_bloch", "decohered QFI vs two-level QFI of the lab-frame state", 1e-3,
                relative(F, expected, 0.0), os.str());
  });
}

ValidationCheck check_cfi_grid(const DeviceInput& device) {
  return timed([&] {
    const DerivedParams p = derive(device);
    ScenarioSpec spec;
    spec.name = "validation";
    spec.device = device;
    const int n_star = find_optimal_time(spec).n_star;
    const double theta = device.theta;
    double worst = 0.0;
    double excess = 0.0;
    constexpr int kGrid = 10000;
    for (double h : {0.5, 1.3, 2.0, 7.7, static_cast<double>(n_star)}) {
      const Tau tau = Tau::half_cycles(h);
      const double quad = qfi_decohered(theta, tau, p);
      const double dg = 1e-2 / std::max(std::abs(phase_sensitivity(tau, p)), 1.0);
      const double bloch_qfi = oracle::qfi_mixed_bloch(
          [&](double g) {
            DeviceInput d = device;
            d.g = g;
            return lab_density_matrix(theta, tau, derive(d));
          },
          device.g, dg);
      double best = 0.0;
      for (int i = 0; i < kGrid; ++i) {
        const double phi = constants::two_pi * i / kGrid;
        const double F = cfi_ramsey(theta, tau, phi, p);
        best = std::max(best, F);
        excess = std::max(excess, F / bloch_qfi - 1.0);
      }
      worst = std::max(worst, relative(best, quad, 0.0));
    }
    std::ostringstream os;
    os << "5 times x 1e4 phases; max CFI excess over Bloch QFI " << excess;
    ValidationCheck c = make("cfi_grid_maximum", "grid-maximized Ramsey CFI vs r_perp^2 A^2", 1e-6,
                             worst, os.str());
    c.passed = c.passed && excess <= 1e-6;
    return c;
  });
}

ValidationCheck check_lindblad_relaxation(const ValidationOptions& opts) {
  return timed([&] {
    const DerivedParams p = lindblad_params(0.0, 0.0, 1.0, 0.05, 0.02, 0.01);
    const auto states = lindblad_period(oracle::thermal_product(constants::pi / 2, 1.0,
                                                                 lindblad_cutoff(opts, 12)), p);
    double worst = 0.0;
    for (int s = 0; s < kSegments; ++s) {
      const double t = segment_end(s).value();
      const double expected = 0.5 * std::exp(-(0.5 * p.Gamma_1 + 2.0 * p.Gamma_phi) * t);
      worst = std::max(worst, relative(std::abs(states[s].rho01), expected, 0.0));
    }
    return make("lindblad_k0_decay", "Lindblad |rho01| at k = 0 vs exp(-(Gamma_1/2 + 2 Gamma_phi) t) / 2",
                1e-6, worst, "Gamma_1 = 0.05, Gamma_phi = 0.02, gamma_m = 0.01 (units of omega_m)");
  });
}

ValidationCheck check_lindblad_closed_limit(const ValidationOptions& opts) {
  return timed([&] {
    const DerivedParams p = lindblad_params(0.2, 0.6, 0.0, 0.0, 0.0, 0.0);
    const cplx alpha(0.5, -0.3);
    const int n = opts.n_max > 0 ? opts.n_max : oracle::default_n_max(alpha, p);
    const auto psi0 = oracle::product_state(1.0, alpha, n);
    const Tau tau = Tau::half_cycles(1.4);
    oracle::LindbladOptions lo;
    lo.tolerance = 1e-10;
    const auto rho = oracle::lindblad_integrate(oracle::projector(psi0), tau, p, lo);
    const auto pure = oracle::projector(oracle::evolve_pure(psi0, tau, p));
    return make("lindblad_closed_limit", "Lindblad with all rates zero vs propagated projector", 1e-8,
                operator_trace_distance(rho.rho.matrix, pure.matrix), "full joint-state trace distance");
  });
}

ValidationCheck check_lindblad_lab_frame(const ValidationOptions& opts) {
  return timed([&] {
    const double n_th = 1.0;
    const DerivedParams p = lindblad_params(0.2, 0.5, n_th, 0.02, 0.01, 0.002);
    const double theta = constants::pi / 2;
    const auto states = lindblad_period(oracle::thermal_product(theta, n_th, lindblad_cutoff(opts, 40)), p);
    double worst = 0.0;
    int worst_s = 0;
    for (int s = 0; s < kSegments; ++s) {
      const double d = trace_distance(states[s], lab_density_matrix(theta, segment_end(s), p));
      if (d > worst) {
        worst = d;
        worst_s = s;
      }
    }
    std::ostringstream os;
    os << "k = 0.2, n_th = 1, test G_bar = 0.5; worst at tau/pi = " << segment_end(worst_s).over_pi();
    return make("lindblad_vs_lab_frame", "Lindblad reduced qubit vs analytic lab-frame density matrix",
                1e-3, worst, os.str());
  });
}

ValidationCheck check_lindblad_branch_overlap(const ValidationOptions& opts) {
  return timed([&] {
    const double n_th = 1.0;
    const DerivedParams p = lindblad_params(0.2, 0.5, n_th, 0.02, 0.01, 0.0);
    const double theta = constants::pi / 2;
    const auto states = lindblad_period(oracle::thermal_product(theta, n_th, lindblad_cutoff(opts, 40)), p);
    double worst = 0.0;
    for (int s = 0; s < kSegments; ++s) {
      const Tau tau = segment_end(s);
      const double t = tau.value();
      QubitDensityMatrix exact = reduced_qubit_state(hybrid_state(theta, 0.0, tau, p));
      exact.rho11 *= std::exp(-p.Gamma_1 * t);
      exact.rho00 = 1.0 - exact.rho11;
      exact.rho01 *= std::exp(-(0.5 * p.Gamma_1 + 2.0 * p.Gamma_phi) * t -
                              8.0 * p.k * p.k * n_th * tau.one_minus_cos());
      worst = std::max(worst, trace_distance(states[s], exact));
    }
    return make("lindblad_vs_branch_overlap",
                "Lindblad reduced qubit vs thermally averaged branch overlap (no damping)", 1e-6, worst,
                "k = 0.2, n_th = 1, test G_bar = 0.5, gamma_m = 0");
  });
}

ValidationReport run_validation(const DeviceInput& device, const ValidationOptions& opts) {
  ValidationReport r;
  r.checks.push_back(check_revival_identity(device));
  r.checks.push_back(check_closed_vs_oracle(device, opts, &r));
  r.checks.push_back(check_n_max_convergence(device, opts, &r));
  r.checks.push_back(check_analytic_state(opts));
  r.checks.push_back(check_revival_vacuum(device, opts));
  r.checks.push_back(check_revival_fd(device, opts));
  r.checks.push_back(check_no_superposition(device, opts));
  r.checks.push_back(check_mixed_bloch(device));
  r.checks.push_back(check_cfi_grid(device));
  if (opts.open_system) {
    r.checks.push_back(check_lindblad_relaxation(opts));
    r.checks.push_back(check_lindblad_closed_limit(opts));
    r.checks.push_back(check_lindblad_branch_overlap(opts));
    r.checks.push_back(check_lindblad_lab_frame(opts));
  }
  return r;
}

}  // namespace qgrav
