#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qgrav/scenario.hpp"

namespace qgrav {

/// Malformed or incomplete configuration. line() is 0 when the problem is not
/// tied to a single line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& what);
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

using ConfigValue = std::variant<double, std::string, bool>;

struct ConfigEntry {
  ConfigValue value;
  int line = 0;
};

/// One [section] of the file, keys in first-seen order.
struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, ConfigEntry>> entries;
  const ConfigEntry* find(const std::string& key) const;
};

/// Parses the sectioned key = value subset: '#' comments, [a.b] headers,
/// numbers, "quoted strings", true/false. Duplicate keys are rejected.
std::vector<ConfigSection> parse_config_text(const std::string& text);

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::vector<ScenarioSpec> scenarios;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty: stdout
  int points_per_period = 40;
  double periods = 2.0;
  int n_max = 0;          // 0: oracle default
  double delta_g = 0.0;   // 0: oracle default
  std::uint64_t seed = 0; // reserved, nothing random yet
};

RunConfig load_run_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Keys a [scenario.NAME] section must define.
const std::vector<std::string>& required_scenario_keys();

}  // namespace qgrav
