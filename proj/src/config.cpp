#include "qgrav/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qgrav {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool valid_name(const std::string& s, bool allow_dots) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           (allow_dots && c == '.');
  });
}

ConfigValue parse_value(const std::string& raw, int line, const std::string& key) {
  if (raw.empty()) throw ConfigError(line, key, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw ConfigError(line, key, "unterminated string");
    return raw.substr(1, raw.size() - 2);
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  std::string digits;
  digits.reserve(raw.size());
  for (char c : raw)
    if (c != '_') digits.push_back(c);
  double v = 0.0;
  const char* begin = digits.data();
  const char* end = begin + digits.size();
  if (!digits.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(line, key, "cannot parse value '" + raw + "'");
  }
  return v;
}

double number(const ConfigSection& s, const std::string& key, const ConfigEntry& e) {
  if (const double* v = std::get_if<double>(&e.value)) return *v;
  throw ConfigError(e.line, key, "[" + s.name + "] " + key + " must be a number");
}

std::string text(const ConfigSection& s, const std::string& key, const ConfigEntry& e) {
  if (const std::string* v = std::get_if<std::string>(&e.value)) return *v;
  throw ConfigError(e.line, key, "[" + s.name + "] " + key + " must be a quoted string");
}

int integer(const ConfigSection& s, const std::string& key, const ConfigEntry& e) {
  const double v = number(s, key, e);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(e.line, key, "[" + s.name + "] " + key + " must be an integer");
  }
  return static_cast<int>(v);
}

void reject_unknown(const ConfigSection& s, const std::set<std::string>& allowed) {
  for (const auto& [key, entry] : s.entries) {
    if (!allowed.count(key)) {
      throw ConfigError(entry.line, key, "unknown key '" + key + "' in [" + s.name + "]");
    }
  }
}

ScenarioSpec scenario_from(const ConfigSection& s, const std::string& name) {
  static const std::set<std::string> allowed = {
      "f_m_hz", "m_eff_kg", "g0_over_2pi_hz", "Q_m", "T_bath_k", "T1_s", "T_phi_s",
      "F_r", "theta_rad", "alpha_re", "alpha_im", "g_m_s2", "T_over_s",
      "n_half_cycle_max", "T_int_s", "model"};
  reject_unknown(s, allowed);
  for (const std::string& key : required_scenario_keys()) {
    if (!s.find(key)) {
      throw ConfigError(s.line, key,
                        "scenario '" + name + "' is missing required key '" + key + "'");
    }
  }
  auto num = [&](const std::string& key, double fallback) {
    const ConfigEntry* e = s.find(key);
    return e ? number(s, key, *e) : fallback;
  };
  ScenarioSpec spec;
  spec.name = name;
  DeviceInput& d = spec.device;
  d.f_m = num("f_m_hz", 0.0);
  d.m_eff = num("m_eff_kg", 0.0);
  d.g0_over_2pi = num("g0_over_2pi_hz", 0.0);
  d.Q_m = num("Q_m", 0.0);
  d.T_bath = num("T_bath_k", 0.0);
  d.T1 = num("T1_s", 0.0);
  d.T_phi = num("T_phi_s", 0.0);
  d.F_r = num("F_r", d.F_r);
  d.theta = num("theta_rad", d.theta);
  d.alpha = {num("alpha_re", 0.0), num("alpha_im", 0.0)};
  d.g = num("g_m_s2", d.g);
  d.T_over = num("T_over_s", d.T_over);
  spec.T_int = num("T_int_s", spec.T_int);
  if (const ConfigEntry* e = s.find("n_half_cycle_max")) {
    spec.n_half_cycle_max = integer(s, "n_half_cycle_max", *e);
  }
  if (const ConfigEntry* e = s.find("model")) {
    try {
      spec.model = parse_model(text(s, "model", *e));
    } catch (const std::invalid_argument& err) {
      throw ConfigError(e->line, "model", err.what());
    }
  }
  return spec;
}

}  // namespace

ConfigError::ConfigError(int line, std::string key, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what
                                  : "config: " + what),
      line_(line),
      key_(std::move(key)) {}

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& [k, e] : entries)
    if (k == key) return &e;
  return nullptr;
}

const std::vector<std::string>& required_scenario_keys() {
  static const std::vector<std::string> keys = {"f_m_hz", "m_eff_kg", "g0_over_2pi_hz", "Q_m",
                                                "T_bath_k", "T1_s", "T_phi_s"};
  return keys;
}

std::vector<ConfigSection> parse_config_text(const std::string& text) {
  std::vector<ConfigSection> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name, true)) throw ConfigError(line_no, "", "bad section name '" + name + "'");
      for (const auto& s : sections)
        if (s.name == name) throw ConfigError(line_no, "", "duplicate section [" + name + "]");
      sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "", "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_name(key, false)) throw ConfigError(line_no, key, "bad key '" + key + "'");
    if (sections.empty()) throw ConfigError(line_no, key, "key outside of any section");
    ConfigSection& current = sections.back();
    if (current.find(key)) throw ConfigError(line_no, key, "duplicate key '" + key + "'");
    current.entries.emplace_back(key, ConfigEntry{parse_value(trim(line.substr(eq + 1)), line_no, key),
                                                  line_no});
  }
  return sections;
}

RunConfig load_run_config_text(const std::string& text_in) {
  const std::vector<ConfigSection> sections = parse_config_text(text_in);
  RunConfig cfg;
  std::map<std::string, const ConfigSection*> references;

  for (const ConfigSection& s : sections) {
    const auto dot = s.name.find('.');
    const std::string head = s.name.substr(0, dot);
    const std::string tail = dot == std::string::npos ? "" : s.name.substr(dot + 1);
    if (head == "scenario") {
      if (tail.empty()) throw ConfigError(s.line, "", "scenario sections need a name: [scenario.NAME]");
      cfg.scenarios.push_back(scenario_from(s, tail));
    } else if (head == "reference") {
      if (tail.empty()) throw ConfigError(s.line, "", "reference sections need a name: [reference.NAME]");
      references[tail] = &s;
    } else if (s.name == "grid") {
      reject_unknown(s, {"points_per_period", "periods"});
      if (const ConfigEntry* e = s.find("points_per_period"))
        cfg.points_per_period = integer(s, "points_per_period", *e);
      if (const ConfigEntry* e = s.find("periods")) cfg.periods = number(s, "periods", *e);
    } else if (s.name == "oracle") {
      reject_unknown(s, {"n_max", "delta_g"});
      if (const ConfigEntry* e = s.find("n_max")) cfg.n_max = integer(s, "n_max", *e);
      if (const ConfigEntry* e = s.find("delta_g")) cfg.delta_g = number(s, "delta_g", *e);
    } else if (s.name == "run") {
      reject_unknown(s, {"seed"});
      if (const ConfigEntry* e = s.find("seed")) {
        cfg.seed = static_cast<std::uint64_t>(integer(s, "seed", *e));
      }
    } else {
      throw ConfigError(s.line, "", "unknown section [" + s.name + "]");
    }
  }

  for (const auto& [name, section] : references) {
    auto it = std::find_if(cfg.scenarios.begin(), cfg.scenarios.end(),
                           [&](const ScenarioSpec& sc) { return sc.name == name; });
    if (it == cfg.scenarios.end()) {
      throw ConfigError(section->line, "", "[reference." + name + "] has no matching scenario");
    }
    const auto& keys = reference_quantities();
    for (const auto& [key, entry] : section->entries) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError(entry.line, key, "unknown reference quantity '" + key + "'");
      }
      it->reference[key] = number(*section, key, entry);
    }
  }
  if (cfg.scenarios.empty()) throw ConfigError(0, "", "no [scenario.NAME] section found");
  if (cfg.points_per_period < 8) {
    throw ConfigError(0, "points_per_period", "grid density must be at least 8 points per period");
  }
  for (const ScenarioSpec& sc : cfg.scenarios) {
    try {
      validate(sc);
    } catch (const ParameterError& e) {
      throw ConfigError(0, e.field(), "scenario '" + sc.name + "': " + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_run_config_text(buf.str());
}

}  // namespace qgrav
