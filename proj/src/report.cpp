#include "lfcurve/report.hpp"

#include <cmath>

#include "lfcurve/format.hpp"

namespace lfcurve {

namespace {

constexpr std::size_t kLabelWidth = 28;

std::string padded_label(std::string_view label) {
  std::string out = "  ";
  out += label;
  if (label.size() < kLabelWidth) out.append(kLabelWidth - label.size(), ' ');
  out += ' ';
  return out;
}

std::string fixed_or_na(double v, int decimals) { return std::isfinite(v) ? format_fixed(v, decimals) : "n/a"; }

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json critical_json(const CriticalValues& cv) {
  Json j;
  j["pct1"] = cv.pct1;
  j["pct5"] = cv.pct5;
  j["pct10"] = cv.pct10;
  return j;
}

std::string reject_text(const std::optional<double>& level) {
  if (!level) return "not rejected at 10%";
  return "rejected at " + std::to_string(static_cast<int>(std::lround(*level * 100))) + "%";
}

Json reject_json(const std::optional<double>& level) { return level ? Json(*level) : Json(nullptr); }

}  // namespace

std::string format_rate(double v) { return fixed_or_na(v, 4); }
std::string format_stat(double v) { return fixed_or_na(v, 2); }

Section::Section(std::string task_id, std::string task_kind) : id_(std::move(task_id)), kind_(std::move(task_kind)) {
  record_["task"] = id_;
  record_["kind"] = kind_;
  record_["status"] = "ok";
}

void Section::rate(std::string_view key, std::string_view label, double v) {
  record_[std::string(key)] = number_or_null(v);
  raw(padded_label(label) + format_rate(v));
}

void Section::stat(std::string_view key, std::string_view label, double v) {
  record_[std::string(key)] = number_or_null(v);
  raw(padded_label(label) + format_stat(v));
}

void Section::integer(std::string_view key, std::string_view label, long long v) {
  record_[std::string(key)] = v;
  raw(padded_label(label) + std::to_string(v));
}

void Section::word(std::string_view key, std::string_view label, std::string_view v) {
  record_[std::string(key)] = std::string(v);
  raw(padded_label(label) + std::string(v));
}

void Section::note(std::string_view line) { raw(std::string("  ") + std::string(line)); }

std::string Section::text() const { return "== " + id_ + " (" + kind_ + ") ==\n" + lines_ + "\n"; }

std::string Section::json_line() const { return record_.dump() + "\n"; }

Section calibration_section(const std::string& id, const std::string& kind, const CalibrationResult& r,
                            std::optional<Metric> metric) {
  Section s(id, kind);
  s.word("span", "span", r.observed.span_string());
  s.integer("nobs", "observations", r.observed.size());
  if (std::holds_alternative<PiecewiseLinearModel>(r.model)) {
    const auto& m = r.piecewise();
    s.word("response_kind", "response kind", to_string(m.response_kind()));
    s.word("break_year", "break", r.break_year ? r.break_year->to_string() : "none");
    s.integer("lag", "lag", r.lag);
    Json segments = Json::array();
    for (std::size_t k = 0; k < m.segments().size(); ++k) {
      const auto& seg = m.segments()[k];
      Json js;
      js["break_start"] = seg.break_start ? Json(seg.break_start->to_string()) : Json(nullptr);
      js["slope"] = seg.slope;
      js["intercept"] = seg.intercept;
      segments.push_back(js);
      const std::string from = seg.break_start ? "from " + seg.break_start->to_string() : "initial";
      s.raw(padded_label("segment " + std::to_string(k + 1) + " (" + from + ")") + "slope " + format_rate(seg.slope) +
            "  intercept " + format_rate(seg.intercept));
    }
    s.record()["segments"] = segments;
  } else {
    const auto& g = r.generalized();
    s.integer("driver_lag", "driver lag", g.driver_lag);
    s.integer("unemployment_lag", "unemployment lag", g.unemployment_lag);
    s.rate("c1", "c1 (labour force)", g.c1);
    s.rate("c2", "c2 (unemployment)", g.c2);
    s.rate("c3", "c3 (constant)", g.c3);
  }
  if (metric) s.word("metric", "reported metric", *metric == Metric::l2 ? "l2" : "l1");
  if (!metric || *metric == Metric::l2) {
    s.rate("rms_dynamic", "rms residual (dynamic)", r.metrics.rms_dynamic);
    s.rate("rms_cumulative", "rms residual (cumulative)", r.metrics.rms_cumulative);
  } else {
    s.rate("mean_abs_dynamic", "mean |residual| (dynamic)", r.metrics.mean_abs_dynamic);
    s.rate("mean_abs_cumulative", "mean |residual| (cumulative)", r.metrics.mean_abs_cumulative);
  }
  s.stat("r2_dynamic", "R2 (dynamic)", r.metrics.r2_dynamic);
  s.stat("r2_cumulative", "R2 (cumulative)", r.metrics.r2_cumulative);
  s.integer("fits_evaluated", "fits evaluated", r.fits_evaluated);

  // Linear models are never clamped; flag physically impossible predictions instead.
  Eigen::Index negative = 0;
  for (Eigen::Index k = 0; k < r.predicted.size(); ++k) negative += r.predicted[k] < 0.0 ? 1 : 0;
  if (negative > 0) s.integer("negative_predictions", "negative predictions", negative);
  return s;
}

void add_gap(Section& s, const GapSeries& gap) {
  s.word("gap_window", "counterfactual window", gap.window_from.to_string() + ".." + gap.window_to.to_string());
  s.rate("gap_mean", "mean gap (observed - counterfactual)", gap.window_mean);
}

void add_test(Section& s, std::string_view key, const TestReport& report) {
  Json j;
  j["test"] = report.test_name;
  j["trend"] = to_string(report.trend);
  j["lag_or_bandwidth"] = report.lag_or_bandwidth;
  j["nobs"] = report.nobs;
  const std::string head = report.test_name + " [" + to_string(report.trend) + ", " +
                           (report.test_name == "pp" ? "bandwidth " : "lags ") +
                           std::to_string(report.lag_or_bandwidth) + ", nobs " + std::to_string(report.nobs) + "]";
  if (report.outcome == TestOutcome::degenerate_perfect_fit) {
    j["outcome"] = "degenerate_perfect_fit";
    j["statistics"] = Json::array();
    s.raw(padded_label(head) + "degenerate: test regression fits exactly");
  } else {
    j["outcome"] = "statistic";
    Json stats = Json::array();
    for (const auto& st : report.statistics) {
      Json js;
      js["name"] = st.name;
      js["value"] = st.value;
      js["critical"] = critical_json(st.critical);
      js["reject_at"] = reject_json(st.reject_at);
      stats.push_back(js);
      s.raw(padded_label(head) + st.name + " = " + format_stat(st.value) + "  (1% " + format_stat(st.critical.pct1) +
            ", 5% " + format_stat(st.critical.pct5) + ", 10% " + format_stat(st.critical.pct10) + ")  " +
            reject_text(st.reject_at));
    }
    j["statistics"] = stats;
  }
  Json& tests = s.record()[std::string(key)];
  if (!tests.is_array()) tests = Json::array();
  tests.push_back(j);
}

Section test_section(const std::string& id, const std::string& kind, const std::string& subject,
                     const std::vector<TestReport>& reports) {
  Section s(id, kind);
  s.word("subject", "series", subject);
  for (const auto& r : reports) add_test(s, "tests", r);
  return s;
}

void add_rank(Section& s, const RankReport& rank) {
  Json j;
  j["trend"] = to_string(rank.trend);
  j["maxlag"] = rank.maxlag;
  j["nobs"] = rank.nobs;
  j["eigenvalues"] = rank.eigenvalues;
  Json rows = Json::array();
  s.raw("  johansen trace [" + std::string(to_string(rank.trend)) + ", maxlag " + std::to_string(rank.maxlag) +
        ", nobs " + std::to_string(rank.nobs) + "]");
  for (std::size_t r = 0; r < rank.trace_statistics.size(); ++r) {
    Json row;
    row["rank"] = r;
    row["eigenvalue"] = rank.eigenvalues[r];
    row["trace"] = rank.trace_statistics[r];
    row["critical"] = critical_json(rank.critical_values[r]);
    rows.push_back(row);
    s.raw(padded_label("  r <= " + std::to_string(r)) + "eigenvalue " + format_stat(rank.eigenvalues[r]) +
          "  trace " + format_stat(rank.trace_statistics[r]) + "  (10% " + format_stat(rank.critical_values[r].pct10) +
          ", 5% " + format_stat(rank.critical_values[r].pct5) + ", 1% " + format_stat(rank.critical_values[r].pct1) +
          ")");
  }
  j["hypotheses"] = rows;
  j["selected_rank"] = rank.selected_rank;
  s.record()["johansen"] = j;
  s.raw(padded_label("  selected rank (5%)") + std::to_string(rank.selected_rank));
}

Section forecast_section(const std::string& id, const ForecastEvaluation& e, const std::string& fit_id) {
  Section s(id, "forecast_eval");
  s.word("fit", "fit", fit_id);
  s.integer("horizon", "horizon (periods)", e.horizon);
  s.word("span", "evaluation span", e.from.to_string() + ".." + e.to.to_string());
  s.rate("model_rmsfe", "model RMSFE", e.model_rmsfe);
  s.rate("naive_rmsfe", "naive RMSFE", e.naive_rmsfe);
  s.word("model_beats_naive", "model beats naive", e.model_rmsfe < e.naive_rmsfe ? "yes" : "no");
  return s;
}

Section error_section(const std::string& id, const std::string& kind, const std::string& message) {
  Section s(id, kind);
  s.record()["status"] = "error";
  s.record()["error"] = message;
  s.raw("  error: " + message);
  return s;
}

}  // namespace lfcurve
