#include "qgrav/report.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qgrav {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON carries the same 9 significant digits as the CSV output; non-finite
// values become null.
ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string block_prefix(std::size_t index, std::size_t count, const std::string& name) {
  std::string s;
  if (index > 0) s += '\n';
  if (count > 1) s += "# scenario " + name + "\n";
  return s;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json metric_json(const MetricBlock& b) {
  ordered_json j;
  j["F_Q"] = num(b.F_Q);
  j["F_eff"] = num(b.F_eff);
  j["eta_g"] = num(b.eta_g);
  j["delta_g_T_int"] = num(b.delta_g_T_int);
  j["F_C_max"] = num(b.F_C_max);
  j["visibility"] = num(b.visibility);
  return j;
}

void metric_rows(std::string& out, const std::string& name, const std::string& regime,
                 const MetricBlock& b, const std::map<std::string, const ReferenceCheck*>& refs,
                 const std::string& suffix) {
  const std::pair<const char*, double> rows[] = {
      {"F_Q", b.F_Q}, {"F_eff", b.F_eff}, {"eta_g", b.eta_g},
      {"delta_g_T_int", b.delta_g_T_int}, {"F_C_max", b.F_C_max}, {"visibility", b.visibility}};
  for (const auto& [q, v] : rows) {
    std::vector<std::string> cells = {csv_field(name), regime, q, format_number(v), "", "", ""};
    auto it = refs.find(std::string(q) + suffix);
    if (it != refs.end()) {
      cells[4] = format_number(it->second->reference);
      cells[5] = format_number(it->second->relative_deviation);
      cells[6] = it->second->flagged ? "1" : "0";
    }
    out += join(cells);
  }
}

}  // namespace

const std::vector<std::string> kQfiColumns = {"t_s", "tau_over_pi", "FQ_closed", "FQ_decohered",
                                              "FC_max", "visibility", "SL", "eta_if_stopped"};
const std::vector<std::string> kSweepColumns = {"value", "FQ_peak_ideal", "FQ_peak_decohered",
                                                "visibility_tau_pi", "eta_g_at_opt"};
const std::vector<std::string> kDeriveColumns = {
    "scenario", "omega_m", "z_zpf", "gamma_lever", "k", "G_bar", "gamma_m", "n_th", "Gamma_1",
    "Gamma_phi", "Gamma_phi_prime", "Gamma_2", "Gamma_2_relaxation", "Gamma_2_pure",
    "Gamma_2_mechanical"};
const std::vector<std::string> kScenarioColumns = {"scenario", "regime", "quantity", "value",
                                                   "reference", "relative_deviation", "flagged"};
const std::vector<std::string> kValidationColumns = {"check", "reference", "tolerance", "achieved",
                                                     "status", "detail"};

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string derive_csv(const std::vector<NamedDerived>& rows) {
  std::string out = join(kDeriveColumns);
  for (const auto& [name, p] : rows) {
    const DephasingBreakdown b = dephasing_breakdown(p);
    std::vector<std::string> cells = {csv_field(name)};
    for (double v : {p.omega_m, p.z_zpf, p.gamma_lever, p.k, p.G_bar, p.gamma_m, p.n_th, p.Gamma_1,
                     p.Gamma_phi, p.Gamma_phi_prime, p.Gamma_2, b.relaxation, b.pure, b.mechanical}) {
      cells.push_back(format_number(v, 6));
    }
    out += join(cells);
  }
  return out;
}

std::string derive_json(const std::vector<NamedDerived>& rows) {
  ordered_json j = ordered_json::object();
  for (const auto& [name, p] : rows) {
    const DephasingBreakdown b = dephasing_breakdown(p);
    const double values[] = {p.omega_m, p.z_zpf, p.gamma_lever, p.k, p.G_bar, p.gamma_m, p.n_th,
                             p.Gamma_1, p.Gamma_phi, p.Gamma_phi_prime, p.Gamma_2, b.relaxation,
                             b.pure, b.mechanical};
    ordered_json row;
    for (std::size_t i = 1; i < kDeriveColumns.size(); ++i) {
      row[kDeriveColumns[i]] = std::stod(format_number(values[i - 1], 6));
    }
    j[name] = row;
  }
  return dump(j);
}

std::string series_csv(const std::vector<NamedSeries>& series) {
  std::string out;
  for (std::size_t s = 0; s < series.size(); ++s) {
    out += block_prefix(s, series.size(), series[s].name);
    out += join(kQfiColumns);
    for (const MetrologyPoint& m : series[s].points) {
      out += join({format_number(m.t), format_number(m.tau_over_pi), format_number(m.F_Q_closed),
                   format_number(m.F_Q), format_number(m.F_C_max), format_number(m.visibility),
                   format_number(m.S_L), format_number(m.eta_g_if_stopped)});
    }
  }
  return out;
}

std::string series_json(const std::vector<NamedSeries>& series) {
  ordered_json j = ordered_json::object();
  for (const auto& [name, points] : series) {
    ordered_json cols = ordered_json::object();
    for (const auto& c : kQfiColumns) cols[c] = ordered_json::array();
    for (const MetrologyPoint& m : points) {
      const double v[] = {m.t, m.tau_over_pi, m.F_Q_closed, m.F_Q, m.F_C_max, m.visibility, m.S_L,
                          m.eta_g_if_stopped};
      for (std::size_t i = 0; i < kQfiColumns.size(); ++i) cols[kQfiColumns[i]].push_back(num(v[i]));
    }
    j[name] = cols;
  }
  return dump(j);
}

std::string scenario_csv(const std::vector<ScenarioReport>& reports, bool ideal_only) {
  std::string out = join(kScenarioColumns);
  for (const ScenarioReport& r : reports) {
    std::map<std::string, const ReferenceCheck*> refs;
    for (const ReferenceCheck& c : r.references) refs[c.quantity] = &c;
    auto scalar = [&](const std::string& regime, const std::string& q, double v,
                      const std::string& ref_key) {
      std::vector<std::string> cells = {csv_field(r.name), regime, q, format_number(v), "", "", ""};
      auto it = refs.find(ref_key);
      if (it != refs.end()) {
        cells[4] = format_number(it->second->reference);
        cells[5] = format_number(it->second->relative_deviation);
        cells[6] = it->second->flagged ? "1" : "0";
      }
      out += join(cells);
    };
    scalar("common", "n_star", r.n_star, "n_star");
    scalar("common", "t_star_s", r.t_star, "t_star_s");
    scalar("common", "Gamma_2", r.Gamma_2, "");
    scalar("common", "T_int_s", r.T_int, "");
    scalar("common", "T_over_s", r.T_over, "");
    if (!ideal_only) metric_rows(out, r.name, "realistic", r.realistic, refs, "");
    metric_rows(out, r.name, "ideal", r.ideal, refs, "_ideal");
    scalar("ideal", "eta_g_with_readout", r.ideal_eta_with_readout, "");
    if (!ideal_only) {
      scalar("realistic", "cfi_as_reported", r.cfi_as_reported, "");
      scalar("realistic", "cfi_as_reported_exceeds_qfi", r.cfi_as_reported_exceeds_qfi ? 1.0 : 0.0, "");
      scalar("realistic", "crb_per_shot", r.crb_per_shot, "");
    }
  }
  return out;
}

std::string scenario_json(const std::vector<ScenarioReport>& reports, bool ideal_only) {
  ordered_json j = ordered_json::object();
  for (const ScenarioReport& r : reports) {
    ordered_json s;
    s["model"] = r.model;
    s["n_star"] = r.n_star;
    s["t_star_s"] = num(r.t_star);
    s["Gamma_2"] = num(r.Gamma_2);
    s["T_int_s"] = num(r.T_int);
    s["T_over_s"] = num(r.T_over);
    if (!ideal_only) s["realistic"] = metric_json(r.realistic);
    ordered_json ideal = metric_json(r.ideal);
    ideal["eta_g_with_readout"] = num(r.ideal_eta_with_readout);
    s["ideal"] = ideal;
    if (!ideal_only) {
      s["cfi_as_reported"] = {{"value", num(r.cfi_as_reported)},
                              {"exceeds_qfi", r.cfi_as_reported_exceeds_qfi}};
      s["crb_per_shot"] = num(r.crb_per_shot);
    }
    ordered_json refs = ordered_json::array();
    for (const ReferenceCheck& c : r.references) {
      refs.push_back({{"quantity", c.quantity},
                      {"computed", num(c.computed)},
                      {"reference", num(c.reference)},
                      {"relative_deviation", num(c.relative_deviation)},
                      {"flagged", c.flagged}});
    }
    s["references"] = refs;
    j[r.name] = s;
  }
  return dump(j);
}

std::string sweep_csv(const std::vector<NamedSweep>& sweeps) {
  std::string out;
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    out += block_prefix(s, sweeps.size(), sweeps[s].name);
    out += join(kSweepColumns);
    for (const SweepRow& r : sweeps[s].rows) {
      out += join({format_number(r.value), format_number(r.FQ_peak_ideal),
                   format_number(r.FQ_peak_decohered), format_number(r.visibility_tau_pi),
                   format_number(r.eta_g_at_opt)});
    }
  }
  return out;
}

std::string sweep_json(const std::vector<NamedSweep>& sweeps) {
  ordered_json j = ordered_json::object();
  for (const NamedSweep& s : sweeps) {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& r : s.rows) {
      rows.push_back({{"value", num(r.value)},
                      {"FQ_peak_ideal", num(r.FQ_peak_ideal)},
                      {"FQ_peak_decohered", num(r.FQ_peak_decohered)},
                      {"visibility_tau_pi", num(r.visibility_tau_pi)},
                      {"eta_g_at_opt", num(r.eta_g_at_opt)},
                      {"n_star", r.n_star}});
    }
    j[s.name] = {{"axis", s.axis}, {"rows", rows}};
  }
  return dump(j);
}

std::string validation_csv(const ValidationReport& report, const std::vector<ValidationNote>& notes) {
  std::string out = join(kValidationColumns);
  for (const ValidationCheck& c : report.checks) {
    out += join({c.name, csv_field(c.reference), format_number(c.tolerance), format_number(c.achieved),
                 c.passed ? "pass" : "fail", csv_field(c.detail)});
  }
  for (const ValidationNote& n : notes) {
    out += join({n.name, "", "", format_number(n.value), "info", csv_field(n.detail)});
  }
  out += join({"overall", "", "", "", report.passed() ? "pass" : "fail", ""});
  return out;
}

std::string validation_json(const ValidationReport& report, const std::vector<ValidationNote>& notes) {
  ordered_json j;
  j["status"] = report.passed() ? "pass" : "fail";
  j["n_max"] = {{"min", report.n_max_min},
                {"max", report.n_max_max},
                {"doubling_shift", num(report.n_max_doubling_shift)}};
  ordered_json checks = ordered_json::array();
  for (const ValidationCheck& c : report.checks) {
    checks.push_back({{"check", c.name},
                      {"reference", c.reference},
                      {"tolerance", num(c.tolerance)},
                      {"achieved", num(c.achieved)},
                      {"status", c.passed ? "pass" : "fail"},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  ordered_json info = ordered_json::array();
  for (const ValidationNote& n : notes) {
    info.push_back({{"name", n.name}, {"value", num(n.value)}, {"detail", n.detail}});
  }
  j["notes"] = info;
  return dump(j);
}

}  // namespace qgrav
