#include "lfcurve/pipeline.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "lfcurve/calibrate.hpp"
#include "lfcurve/csv.hpp"
#include "lfcurve/econometrics.hpp"
#include "lfcurve/format.hpp"
#include "lfcurve/report.hpp"
#include "lfcurve/svg.hpp"

namespace lfcurve {

namespace {

namespace fs = std::filesystem;

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw InvalidArgument("expected true|false, got '" + v + "'");
}

int parse_int_param(const std::string& v) {
  auto [a, b] = parse_int_range(v);
  if (a != b) throw InvalidArgument("expected a single integer, got '" + v + "'");
  return a;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream in(v);
  for (std::string item; std::getline(in, item, ',');) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::pair<Period, Period> parse_period_range(const std::string& v) {
  const auto dots = v.find("..");
  if (dots == std::string::npos) throw InvalidArgument("expected a period range 'a..b', got '" + v + "'");
  return {Period::parse(v.substr(0, dots)), Period::parse(v.substr(dots + 2))};
}

// A completed univariate or generalized fit, kept for follow-up tasks.
struct FitState {
  CalibrationResult result;
  GrowthRateSeries driver;  // driver exactly as fitted (smoothed if requested)
  int forecast_lag;         // smallest lag on any regressor
};

class Runner {
 public:
  Runner(const RunConfig& config, fs::path out_dir) : config_(config), out_(std::move(out_dir)) {}

  Section execute(const TaskBlock& task) {
    static const std::map<std::string, Section (Runner::*)(const TaskBlock&)> handlers{
        {"fit_univariate", &Runner::fit_univariate}, {"fit_generalized", &Runner::fit_generalized},
        {"unitroot", &Runner::unitroot},             {"cointegration", &Runner::cointegration},
        {"forecast_eval", &Runner::forecast_eval},   {"figure", &Runner::figure},
    };
    return (this->*handlers.at(task.kind))(task);
  }

 private:
  static Frequency frequency_of(const TaskBlock& t) { return parse_frequency(t.get_or("frequency", "annual")); }

  const Series& source(SourceRole role, Frequency f) {
    const auto key = std::make_pair(role, f);
    if (auto it = loaded_.find(key); it != loaded_.end()) return it->second;
    const DataSource* src = config_.find_source(role, f);
    if (!src) throw InvalidArgument(std::string("no ") + to_string(f) + " source declared for " + to_string(role));
    return loaded_.emplace(key, load_csv(src->path, f)).first->second;
  }

  // Labour force is stored as levels; every other role is already a rate.
  Series rate_series(SourceRole role, Frequency f) {
    const Series& s = source(role, f);
    return role == SourceRole::labour_force ? log_growth_rate(s).series() : s;
  }

  const FitState& fit_ref(const TaskBlock& t) {
    const std::string id = t.require("fit");
    auto it = fits_.find(id);
    if (it == fits_.end()) throw InvalidArgument("fit task '" + id + "' did not run or did not succeed");
    return it->second;
  }

  void write_fit_outputs(const TaskBlock& t, const CalibrationResult& r) {
    if (parse_bool(t.get_or("curves", "true"))) {
      emit_curves(r.observed, r.predicted, CurveKind::dynamic, out_ / (t.id + ".dynamic.csv"));
      emit_curves(r.observed, r.predicted, CurveKind::cumulative, out_ / (t.id + ".cumulative.csv"));
    }
    if (parse_bool(t.get_or("svg", "true"))) {
      emit_svg({{"observed", r.observed}, {"predicted", r.predicted}}, t.id + ": observed and predicted",
               out_ / (t.id + ".svg"));
      emit_svg({{"observed (cumulative)", cumulative_sum(r.observed)},
                {"predicted (cumulative)", cumulative_sum(r.predicted)}},
               t.id + ": cumulative curves", out_ / (t.id + ".cumulative.svg"));
    }
  }

  Section fit_univariate(const TaskBlock& t) {
    const Frequency f = frequency_of(t);
    const SourceRole response_role = parse_source_role(t.require("response"));
    const SourceRole driver_role = parse_source_role(t.get_or("driver", "labour_force"));
    GrowthRateSeries driver(rate_series(driver_role, f));
    Series response = rate_series(response_role, f);

    const ResponseKind kind = parse_response_kind(
        t.get_or("response_kind", response_role == SourceRole::unemployment ? "unemployment" : "inflation"));
    const auto [lag_lo, lag_hi] = t.get("lags") ? parse_int_range(*t.get("lags"))
                                                : std::pair{LagRange::default_for(f).first, LagRange::default_for(f).last};
    const std::optional<int> smoothing = t.get("smooth") ? std::optional(parse_int_param(*t.get("smooth"))) : std::nullopt;
    const std::string metric_name = t.get_or("metric", "l2");
    if (metric_name != "l2" && metric_name != "l1") throw InvalidArgument("metric must be l2 or l1");
    const Metric metric = metric_name == "l2" ? Metric::l2 : Metric::l1;

    std::optional<CalibrationResult> result;
    if (const auto brk = t.get("break"); brk && *brk != "none") {
      CalibrationConfig cfg{Period::parse(*brk), 4, {lag_lo, lag_hi}, metric, smoothing, kind};
      if (auto w = t.get("window")) cfg.break_window = parse_int_param(*w);
      cfg.validate();
      result = search(cfg, driver, response);
    } else {
      // Single-regime fit: lag search on the common span of the largest lag.
      if (lag_lo < 0 || lag_hi < lag_lo) throw InvalidArgument("invalid lag range");
      GrowthRateSeries l = driver;
      Series y = response;
      if (smoothing && *smoothing > 1) {
        l = GrowthRateSeries(moving_average(l.series(), *smoothing));
        y = moving_average(y, *smoothing);
      }
      const Period from = std::max(y.start(), l.start().advanced(lag_hi));
      const Period to = std::min(y.end(), l.end().advanced(lag_lo));
      if (to < from) throw CoverageError("response and lagged driver do not overlap");
      const Series span = y.slice(from, to);
      int evaluated = 0;
      for (int lag = lag_lo; lag <= lag_hi; ++lag) {
        auto r = fit_cumulative_lsq(l, span, std::nullopt, lag, kind);
        ++evaluated;
        if (!result || r.metrics.rms_cumulative < result->metrics.rms_cumulative) result = std::move(r);
      }
      result->fits_evaluated = evaluated;
    }

    const CalibrationResult& r = *result;
    Section s = calibration_section(t.id, t.kind, r, metric);
    s.word("response", "response", to_string(response_role));

    GrowthRateSeries fitted_driver = driver;
    if (smoothing && *smoothing > 1) fitted_driver = GrowthRateSeries(moving_average(driver.series(), *smoothing));

    if (const auto window = t.get("counterfactual")) {
      const auto [from, to] = parse_period_range(*window);
      const GapSeries gap = counterfactual_gap(r.observed, r.piecewise().first_segment_only(), fitted_driver, from, to);
      add_gap(s, gap);
      write_csv(gap.gap, out_ / (t.id + ".gap.csv"));
      if (parse_bool(t.get_or("svg", "true"))) {
        emit_svg({{"observed - counterfactual", gap.gap}}, t.id + ": counterfactual gap", out_ / (t.id + ".gap.svg"));
      }
    }
    write_text_file(out_ / (t.id + ".model.txt"), to_text(r.piecewise()));
    write_fit_outputs(t, r);
    fits_.insert_or_assign(t.id, FitState{r, fitted_driver, r.lag});
    return s;
  }

  Section fit_generalized(const TaskBlock& t) {
    const Frequency f = frequency_of(t);
    GrowthRateSeries l(rate_series(parse_source_role(t.get_or("driver", "labour_force")), f));
    const Series u = rate_series(parse_source_role(t.get_or("unemployment", "unemployment")), f);
    const Series pi = rate_series(parse_source_role(t.require("response")), f);
    const int driver_lag = parse_int_param(t.get_or("driver_lag", "1"));
    const int u_lag = t.get("unemployment_lag") ? parse_int_param(*t.get("unemployment_lag")) : driver_lag;
    const CalibrationResult r = lfcurve::fit_generalized(l, u, pi, driver_lag, u_lag);
    Section s = calibration_section(t.id, t.kind, r, std::nullopt);
    s.word("response", "response", t.require("response"));
    write_fit_outputs(t, r);
    fits_.insert_or_assign(t.id, FitState{r, l, std::min(driver_lag, u_lag)});
    return s;
  }

  std::vector<TestReport> run_tests(const TaskBlock& t, const Series& s, TrendSpec default_trend) {
    const int lags = parse_int_param(t.get_or("lags", "1"));
    const TrendSpec trend = parse_trend(t.get_or("trend", to_string(default_trend)));
    std::vector<TestReport> reports;
    for (const auto& name : split_list(t.get_or("tests", "adf,pp,dfgls"))) {
      if (name == "adf") {
        reports.push_back(adf_test(s, lags, trend));
      } else if (name == "pp") {
        const auto bw = t.get("bandwidth") ? std::optional(parse_int_param(*t.get("bandwidth"))) : std::nullopt;
        reports.push_back(pp_test(s, trend, bw));
      } else if (name == "dfgls") {
        reports.push_back(dfgls_test(s, lags, trend == TrendSpec::none ? TrendSpec::constant : trend));
      } else {
        throw InvalidArgument("unknown test '" + name + "' (expected adf, pp, dfgls)");
      }
    }
    return reports;
  }

  Section unitroot(const TaskBlock& t) {
    const Frequency f = frequency_of(t);
    const std::string role_name = t.require("series");
    const SourceRole role = parse_source_role(role_name);
    const std::string transform = t.get_or("transform", "level");
    Series s = rate_series(role, f);
    if (transform == "difference") {
      s = first_difference(s);
    } else if (transform == "cumulative") {
      s = cumulative_sum(s);
    } else if (transform != "level") {
      throw InvalidArgument("transform must be level, difference or cumulative");
    }
    const std::string subject =
        (role == SourceRole::labour_force ? std::string("labour_force growth") : role_name) + " (" + transform + ")";
    Section sec = test_section(t.id, t.kind, subject, run_tests(t, s, TrendSpec::constant));
    sec.word("span", "span", s.span_string());
    return sec;
  }

  Section cointegration(const TaskBlock& t) {
    const FitState& fit = fit_ref(t);
    const CalibrationResult& r = fit.result;
    const std::string curve = t.get_or("curve", "dynamic");
    if (curve != "dynamic" && curve != "cumulative") throw InvalidArgument("curve must be dynamic or cumulative");
    const bool cumulative = curve == "cumulative";
    const std::string method = t.get_or("method", cumulative ? "residual" : "both");
    if (method != "residual" && method != "johansen" && method != "both") {
      throw InvalidArgument("method must be residual, johansen or both");
    }
    if (cumulative && method != "residual") {
      throw DomainError("the Johansen test is not applied to cumulative curves; use method = residual");
    }

    Section s(t.id, t.kind);
    s.word("fit", "fit", t.require("fit"));
    s.word("curve", "curve", curve);
    if (method != "johansen") {
      const Series& resid = cumulative ? r.residual_cumulative : r.residual_dynamic;
      const int lags = parse_int_param(t.get_or("lags", "1"));
      const auto report = residual_cointegration_test(resid, lags, parse_bool(t.get_or("pp", "true")));
      add_test(s, "residual_tests", report);
      if (parse_bool(t.get_or("dfgls", "false"))) add_test(s, "residual_tests", dfgls_test(resid, lags));
    }
    if (method != "residual") {
      const int maxlag = parse_int_param(t.get_or("maxlag", "1"));
      const TrendSpec trend = parse_trend(t.get_or("trend", "none"));
      std::vector<Series> system;
      if (const auto roles = t.get("series")) {
        const Frequency f = r.observed.frequency();
        for (const auto& name : split_list(*roles)) system.push_back(rate_series(parse_source_role(name), f));
      } else {
        system = {r.observed, r.predicted};
      }
      add_rank(s, johansen_trace(system, maxlag, trend));
    }
    return s;
  }

  Section forecast_eval(const TaskBlock& t) {
    const FitState& fit = fit_ref(t);
    const int horizon = parse_int_param(t.get_or("horizon", "1"));
    const auto e = evaluate_forecast(fit.result.observed, fit.result.predicted, fit.forecast_lag, horizon);
    return forecast_section(t.id, e, t.require("fit"));
  }

  Section figure(const TaskBlock& t) {
    std::vector<Curve> curves;
    std::string title = t.get_or("title", t.id);
    if (t.get("fit")) {
      const FitState& fit = fit_ref(t);
      const CalibrationResult& r = fit.result;
      const std::string curve = t.get_or("curve", "dynamic");
      if (curve == "dynamic") {
        curves = {{"observed", r.observed}, {"predicted", r.predicted}};
      } else if (curve == "cumulative") {
        curves = {{"observed (cumulative)", cumulative_sum(r.observed)},
                  {"predicted (cumulative)", cumulative_sum(r.predicted)}};
      } else if (curve == "residual") {
        curves = {{"residual", r.residual_dynamic}, {"cumulative residual", r.residual_cumulative}};
      } else {
        throw InvalidArgument("curve must be dynamic, cumulative or residual");
      }
    } else {
      const Frequency f = frequency_of(t);
      const int smoothing = parse_int_param(t.get_or("smooth", "1"));
      for (const auto& name : split_list(t.require("series"))) {
        Series s = rate_series(parse_source_role(name), f);
        if (smoothing > 1) s = moving_average(s, smoothing);
        curves.push_back({name == "labour_force" ? "labour_force growth" : name, s});
      }
    }
    Section s(t.id, t.kind);
    s.word("title", "title", title);
    s.word("file", "file", t.id + ".svg");
    s.integer("curves", "curves", static_cast<long long>(curves.size()));
    emit_svg(curves, title, out_ / (t.id + ".svg"));
    return s;
  }

  const RunConfig& config_;
  fs::path out_;
  std::map<std::pair<SourceRole, Frequency>, Series> loaded_;
  std::map<std::string, FitState> fits_;
};

}  // namespace

RunSummary run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  Runner runner(config, out_dir);
  RunSummary summary;
  std::string jsonl;
  for (const auto& task : config.tasks) {
    ++summary.tasks_run;
    std::optional<Section> section;
    try {
      section = runner.execute(task);
    } catch (const std::exception& e) {
      ++summary.tasks_failed;
      log << "task " << task.id << " (" << task.kind << ") failed: " << e.what() << '\n';
      section = error_section(task.id, task.kind, e.what());
    }
    summary.report += section->text();
    jsonl += section->json_line();
  }
  write_text_file(out_dir / "report.txt", summary.report);
  write_text_file(out_dir / "results.jsonl", jsonl);
  return summary;
}

}  // namespace lfcurve
