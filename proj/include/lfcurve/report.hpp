#ifndef LFCURVE_REPORT_HPP
#define LFCURVE_REPORT_HPP

// Report sections. Each section is built once and rendered twice: as aligned
// human-readable text and as one JSON record. Every number printed in the text
// also appears, at full precision, in the record.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lfcurve/calibrate.hpp"
#include "lfcurve/econometrics.hpp"
#include "lfcurve/linmodel.hpp"

namespace lfcurve {

using Json = nlohmann::ordered_json;

/// Rates to 4 decimals, statistics to 2.
std::string format_rate(double v);
std::string format_stat(double v);

class Section {
 public:
  Section(std::string task_id, std::string task_kind);

  void rate(std::string_view key, std::string_view label, double v);
  void stat(std::string_view key, std::string_view label, double v);
  void integer(std::string_view key, std::string_view label, long long v);
  void word(std::string_view key, std::string_view label, std::string_view v);
  /// Text-only line; must not contain numbers that are absent from the record.
  void note(std::string_view line);

  Json& record() { return record_; }
  [[nodiscard]] const Json& record() const { return record_; }
  [[nodiscard]] std::string text() const;
  /// One line of compact JSON.
  [[nodiscard]] std::string json_line() const;

  /// Appends text without touching the record.
  void raw(std::string_view line) { lines_ += line; lines_ += '\n'; }

 private:
  std::string id_;
  std::string kind_;
  std::string lines_;
  Json record_;
};

Section calibration_section(const std::string& id, const std::string& kind, const CalibrationResult& r,
                            std::optional<Metric> metric);
void add_gap(Section& s, const GapSeries& gap);
Section test_section(const std::string& id, const std::string& kind, const std::string& subject,
                     const std::vector<TestReport>& reports);
void add_test(Section& s, std::string_view key, const TestReport& report);
void add_rank(Section& s, const RankReport& rank);
Section forecast_section(const std::string& id, const ForecastEvaluation& e, const std::string& fit_id);
Section error_section(const std::string& id, const std::string& kind, const std::string& message);

}  // namespace lfcurve

#endif  // LFCURVE_REPORT_HPP
