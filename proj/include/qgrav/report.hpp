#pragma once

#include <string>
#include <vector>

#include "qgrav/config.hpp"
#include "qgrav/scenario.hpp"
#include "qgrav/validation.hpp"

namespace qgrav {

/// Scientific notation with `digits` significant digits; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_number(double v, int digits = 9);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

extern const std::vector<std::string> kQfiColumns;
extern const std::vector<std::string> kSweepColumns;
extern const std::vector<std::string> kDeriveColumns;
extern const std::vector<std::string> kScenarioColumns;
extern const std::vector<std::string> kValidationColumns;

struct NamedDerived {
  std::string name;
  DerivedParams params;
};
struct NamedSeries {
  std::string name;
  std::vector<MetrologyPoint> points;
};
struct NamedSweep {
  std::string name;
  std::string axis;
  std::vector<SweepRow> rows;
};

/// Extra rows of the validation output that are informative, not pass/fail.
struct ValidationNote {
  std::string name;
  double value = 0.0;
  std::string detail;
};

std::string derive_csv(const std::vector<NamedDerived>& rows);
std::string derive_json(const std::vector<NamedDerived>& rows);

/// One CSV block per series; blocks after the first are preceded by a blank
/// line and every block by "# scenario NAME" when there is more than one.
std::string series_csv(const std::vector<NamedSeries>& series);
std::string series_json(const std::vector<NamedSeries>& series);

std::string scenario_csv(const std::vector<ScenarioReport>& reports, bool ideal_only);
std::string scenario_json(const std::vector<ScenarioReport>& reports, bool ideal_only);

std::string sweep_csv(const std::vector<NamedSweep>& sweeps);
std::string sweep_json(const std::vector<NamedSweep>& sweeps);

std::string validation_csv(const ValidationReport& report, const std::vector<ValidationNote>& notes);
std::string validation_json(const ValidationReport& report, const std::vector<ValidationNote>& notes);

}  // namespace qgrav
