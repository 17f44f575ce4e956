#include "qgrav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qgrav/closed_system.hpp"
#include "qgrav/parallel.hpp"

namespace qgrav {

namespace {

constexpr double kReferenceTolerance = 0.03;

double readout_factor(double F_r) {
  const double c = 2.0 * F_r - 1.0;
  return c * c;
}

double max_cfi(const ScenarioSpec& spec, const DerivedParams& p, Tau tau, Regime regime,
               double F_Q) {
  if (spec.model == DephasingModel::PolaronLab) {
    return cfi_optimal(spec.device.theta, tau, p, regime).F_C_max;
  }
  // The which-path models carry the signal purely in the transverse phase,
  // so quadrature readout saturates their QFI.
  return F_Q;
}

MetricBlock metric_block(const ScenarioSpec& spec, const DerivedParams& p, Tau tau,
                         Regime regime) {
  const double t = tau.seconds(p.omega_m);
  MetricBlock b;
  b.F_Q = qfi_for_model(spec.device.theta, tau, p, spec.model, regime);
  const Sensitivity s = effective_fisher_and_sensitivity(
      b.F_Q, readout_fidelity(spec, regime), t, spec.device.T_over);
  b.F_eff = s.F_eff;
  b.eta_g = s.eta_g;
  b.delta_g_T_int = s.eta_g / std::sqrt(spec.T_int);
  b.F_C_max = max_cfi(spec, p, tau, regime, b.F_Q);
  b.visibility = visibility(tau, p, regime);
  return b;
}

double reference_value(const ScenarioReport& r, const std::string& key) {
  if (key == "n_star") return r.n_star;
  if (key == "t_star_s") return r.t_star;
  if (key == "eta_g") return r.realistic.eta_g;
  if (key == "F_Q") return r.realistic.F_Q;
  if (key == "delta_g_T_int") return r.realistic.delta_g_T_int;
  if (key == "eta_g_ideal") return r.ideal.eta_g;
  if (key == "F_Q_ideal") return r.ideal.F_Q;
  if (key == "delta_g_T_int_ideal") return r.ideal.delta_g_T_int;
  throw std::invalid_argument("unknown reference quantity '" + key + "'");
}

template <typename Fn>
auto with_context(const std::string& name, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParameterError&) {
    throw;
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(name, e.what());
  }
}

}  // namespace

const std::vector<std::string>& reference_quantities() {
  static const std::vector<std::string> keys = {
      "n_star", "t_star_s", "eta_g", "F_Q", "delta_g_T_int",
      "eta_g_ideal", "F_Q_ideal", "delta_g_T_int_ideal"};
  return keys;
}

void validate(const ScenarioSpec& spec) {
  validate(spec.device);
  if (spec.n_half_cycle_max < 2) {
    throw ParameterError("n_half_cycle_max", "must be at least 2");
  }
  if (!(spec.T_int > 0.0)) throw ParameterError("T_int_s", "must be positive");
  const auto& keys = reference_quantities();
  for (const auto& [key, value] : spec.reference) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParameterError(key, "not a reference quantity");
    }
    (void)value;
  }
}

double readout_fidelity(const ScenarioSpec& spec, Regime regime) {
  return regime == Regime::Ideal ? 1.0 : spec.device.F_r;
}

MetrologyPoint metrology_point(const ScenarioSpec& spec, const DerivedParams& p, Tau tau,
                               Regime regime) {
  const DeviceInput& d = spec.device;
  MetrologyPoint m;
  m.t = tau.seconds(p.omega_m);
  m.tau_over_pi = tau.over_pi();
  m.F_Q_closed = qfi_closed_form(d.theta, d.alpha, tau, p);
  m.F_Q = qfi_for_model(d.theta, tau, p, spec.model, regime);
  m.F_C_max = max_cfi(spec, p, tau, regime, m.F_Q);
  m.visibility = visibility(tau, p, regime);
  const HybridPureState s = hybrid_state(d.theta, d.alpha, tau, p);
  m.S_L = linear_entropy(s.c1 * s.c1, s.branches[0].alpha, s.branches[1].alpha);
  const double F_eff = readout_factor(readout_fidelity(spec, regime)) * m.F_Q;
  m.eta_g_if_stopped = F_eff > 0.0 ? std::sqrt((m.t + d.T_over) / F_eff)
                                   : std::numeric_limits<double>::infinity();
  return m;
}

std::vector<MetrologyPoint> time_series(const ScenarioSpec& spec, int points_per_period,
                                        double periods, Regime regime) {
  if (points_per_period < 1) throw ScenarioError(spec.name, "points per period must be >= 1");
  const long count = std::lround(points_per_period * periods);
  if (!(periods > 0.0) || count < 1) throw ScenarioError(spec.name, "empty grid");
  const DerivedParams p = derive(spec.device);
  return with_context(spec.name, [&] {
    return parallel_map<MetrologyPoint>(static_cast<std::size_t>(count), [&](std::size_t i) {
      const Tau tau = Tau::half_cycles(2.0 * static_cast<double>(i + 1) / points_per_period);
      return metrology_point(spec, p, tau, regime);
    });
  });
}

OptimalTime find_optimal_time(const ScenarioSpec& spec) {
  validate(spec);
  const DerivedParams p = derive(spec.device);
  const double readout = readout_factor(readout_fidelity(spec, spec.regime));
  const int last = spec.n_half_cycle_max / 2;
  int best = 0;
  double best_rate = -1.0;
  for (int l = 1; l <= last; ++l) {
    const Tau tau = Tau::half_cycles(2.0 * l);
    const double t = tau.seconds(p.omega_m);
    const double F = qfi_for_model(spec.device.theta, tau, p, spec.model, spec.regime);
    const double rate = readout * F / (t + spec.device.T_over);
    if (rate > best_rate) {
      best_rate = rate;
      best = l;
    }
  }
  if (best_rate <= 0.0) throw ScenarioError(spec.name, "no revival carries information");
  if (best == last) {
    std::ostringstream os;
    os << "optimum sits at the search boundary n = " << 2 * last
       << "; raise n_half_cycle_max";
    throw ScenarioError(spec.name, os.str());
  }
  OptimalTime o;
  o.n_star = 2 * best;
  o.t_star = Tau::half_cycles(o.n_star).seconds(p.omega_m);
  return o;
}

ScenarioReport evaluate_scenario(const ScenarioSpec& spec, int points_per_period) {
  validate(spec);
  const DerivedParams p = derive(spec.device);
  ScenarioSpec searched = spec;
  searched.regime = Regime::Realistic;
  const OptimalTime opt = find_optimal_time(searched);

  return with_context(spec.name, [&] {
    ScenarioReport r;
    r.name = spec.name;
    r.model = std::string(model_label(spec.model));
    r.n_star = opt.n_star;
    r.t_star = opt.t_star;
    r.Gamma_2 = p.Gamma_2;
    r.T_int = spec.T_int;
    r.T_over = spec.device.T_over;

    const Tau tau = Tau::half_cycles(opt.n_star);
    r.realistic = metric_block(spec, p, tau, Regime::Realistic);
    r.ideal = metric_block(spec, p, tau, Regime::Ideal);
    r.ideal_eta_with_readout =
        effective_fisher_and_sensitivity(r.ideal.F_Q, spec.device.F_r, opt.t_star, spec.device.T_over)
            .eta_g;
    const CfiOptimum cfi = cfi_optimal(spec.device.theta, tau, p, Regime::Realistic);
    r.cfi_as_reported = cfi.as_reported;
    r.cfi_as_reported_exceeds_qfi = cfi.as_reported_exceeds_qfi;
    r.crb_per_shot = crb_delta_g(r.realistic.F_eff, 1);

    for (const auto& [key, ref] : spec.reference) {
      ReferenceCheck c;
      c.quantity = key;
      c.computed = reference_value(r, key);
      c.reference = ref;
      c.relative_deviation = ref != 0.0 ? (c.computed - ref) / ref : c.computed;
      c.flagged = std::abs(c.relative_deviation) > kReferenceTolerance;
      r.references.push_back(c);
    }
    r.series = time_series(spec, points_per_period, opt.n_star / 2.0, spec.regime);
    return r;
  });
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "k") return SweepAxis::K;
  if (name == "Q_m") return SweepAxis::Q_m;
  if (name == "T_bath") return SweepAxis::T_bath;
  if (name == "F_r") return SweepAxis::F_r;
  if (name == "m_eff") return SweepAxis::m_eff;
  if (name == "f_m") return SweepAxis::f_m;
  throw std::invalid_argument("unknown sweep axis '" + name + "'; allowed: " + axis_choices());
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::K: return "k";
    case SweepAxis::Q_m: return "Q_m";
    case SweepAxis::T_bath: return "T_bath";
    case SweepAxis::F_r: return "F_r";
    case SweepAxis::m_eff: return "m_eff";
    case SweepAxis::f_m: return "f_m";
  }
  return "?";
}

std::string axis_choices() { return "k, Q_m, T_bath, F_r, m_eff, f_m"; }

DeviceInput with_axis_value(const DeviceInput& device, SweepAxis axis, double value) {
  DeviceInput d = device;
  switch (axis) {
    case SweepAxis::K: d.g0_over_2pi = value * d.f_m; break;
    case SweepAxis::Q_m: d.Q_m = value; break;
    case SweepAxis::T_bath: d.T_bath = value; break;
    case SweepAxis::F_r: d.F_r = value; break;
    case SweepAxis::m_eff: d.m_eff = value; break;
    case SweepAxis::f_m: d.f_m = value; break;
  }
  return d;
}

std::vector<SweepRow> sweep(const ScenarioSpec& spec, SweepAxis axis,
                            const std::vector<double>& values) {
  if (values.empty()) throw ScenarioError(spec.name, "empty value list for sweep");
  std::vector<ScenarioSpec> specs;
  for (double v : values) {
    ScenarioSpec s = spec;
    s.regime = Regime::Realistic;
    s.device = with_axis_value(spec.device, axis, v);
    validate(s);
    specs.push_back(std::move(s));
  }
  return parallel_map<SweepRow>(specs.size(), [&](std::size_t i) {
    const ScenarioSpec& s = specs[i];
    const DerivedParams p = derive(s.device);
    const OptimalTime opt = find_optimal_time(s);
    return with_context(s.name, [&] {
      const Tau tau = Tau::half_cycles(opt.n_star);
      const MetricBlock real = metric_block(s, p, tau, Regime::Realistic);
      SweepRow row;
      row.value = values[i];
      row.n_star = opt.n_star;
      row.FQ_peak_ideal = qfi_for_model(s.device.theta, tau, p, s.model, Regime::Ideal);
      row.FQ_peak_decohered = real.F_Q;
      row.visibility_tau_pi = visibility(Tau::half_cycles(1.0), p, Regime::Realistic);
      row.eta_g_at_opt = real.eta_g;
      return row;
    });
  });
}

}  // namespace qgrav
