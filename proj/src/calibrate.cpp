#include "lfcurve/calibrate.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <vector>

namespace lfcurve {

namespace detail {

// Pivots below this fraction of the largest one count as zero when ranking the design.
constexpr double kRankThreshold = 1e-10;

LsqSolution solve_min_norm(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(design);
  LsqSolution out;
  out.rank = cod.rank();
  out.coefficients = out.rank == 0 ? Eigen::VectorXd::Zero(design.cols()) : Eigen::VectorXd(cod.solve(target));
  return out;
}

}  // namespace detail

namespace {

double rms(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : std::sqrt(v.squaredNorm() / double(v.size())); }
double mean_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().mean(); }

double r_squared_or_nan(const Series& observed, const Series& predicted) {
  try {
    return r_squared(observed, predicted);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

FitMetrics compute_metrics(const Series& observed, const Series& predicted, const Series& residual_dynamic,
                           const Series& residual_cumulative) {
  FitMetrics m;
  m.rms_cumulative = rms(residual_cumulative.values());
  m.rms_dynamic = rms(residual_dynamic.values());
  m.mean_abs_cumulative = mean_abs(residual_cumulative.values());
  m.mean_abs_dynamic = mean_abs(residual_dynamic.values());
  m.r2_dynamic = r_squared_or_nan(observed, predicted);
  m.r2_cumulative = r_squared_or_nan(cumulative_sum(observed), cumulative_sum(predicted));
  return m;
}

CalibrationResult assemble(std::variant<PiecewiseLinearModel, GeneralizedModel> model, std::optional<Period> brk,
                           int lag, Series observed, Series predicted) {
  Series residual_dynamic = observed - predicted;
  Series residual_cumulative = cumulative_sum(observed) - cumulative_sum(predicted);
  FitMetrics metrics = compute_metrics(observed, predicted, residual_dynamic, residual_cumulative);
  return CalibrationResult{std::move(model),         brk,
                           lag,                      metrics,
                           std::move(observed),      std::move(predicted),
                           std::move(residual_dynamic), std::move(residual_cumulative),
                           1};
}

constexpr Eigen::Index kMinSegmentLength = 3;

}  // namespace

void CalibrationConfig::validate() const {
  if (break_window < 0) throw InvalidArgument("break window must be non-negative");
  if (!lags.valid()) {
    throw InvalidArgument("lag range must be non-empty and non-negative, got " + std::to_string(lags.first) + ".." +
                          std::to_string(lags.last));
  }
  if (smoothing && *smoothing < 1) throw InvalidArgument("smoothing window must be >= 1");
}

CalibrationResult fit_cumulative_lsq(const GrowthRateSeries& driver, const Series& response,
                                     const std::optional<Period>& break_start, int lag, ResponseKind kind) {
  if (lag < 0) throw InvalidArgument("lag must be non-negative");
  auto [x, y] = align(lag_shift(driver.series(), lag), response);
  const Eigen::Index n = y.size();
  if (n < kMinSegmentLength) {
    throw InsufficientDataError("only " + std::to_string(n) + " periods after lagging the driver by " +
                                std::to_string(lag));
  }

  // Number of leading periods belonging to the first segment.
  Eigen::Index split = n;
  if (break_start) {
    const auto k = periods_between(y.start(), *break_start);
    if (k < kMinSegmentLength || n - k < kMinSegmentLength) {
      throw InsufficientDataError("break " + break_start->to_string() + " leaves a segment shorter than " +
                                  std::to_string(kMinSegmentLength) + " periods in " + y.span_string());
    }
    split = static_cast<Eigen::Index>(k);
  }
  const int segments = break_start ? 2 : 1;

  // Per segment: running sum of the lagged driver, and running period count. The
  // accumulators of a finished segment stay frozen, so one cumulative curve spans
  // the break.
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n, 2 * segments);
  Eigen::VectorXd driver_sum = Eigen::VectorXd::Zero(segments);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(segments);
  for (Eigen::Index t = 0; t < n; ++t) {
    const int s = t < split ? 0 : 1;
    driver_sum[s] += x[t];
    count[s] += 1.0;
    for (int j = 0; j < segments; ++j) {
      design(t, 2 * j) = driver_sum[j];
      design(t, 2 * j + 1) = count[j];
    }
  }
  const Eigen::VectorXd target = cumulative_sum(y).values();

  const auto sol = detail::solve_min_norm(design, target);
  if (sol.rank < design.cols()) {
    throw DegenerateFitError("cumulative design has rank " + std::to_string(sol.rank) + " < " +
                             std::to_string(design.cols()) +
                             " (slope not identifiable: driver has no variation within a segment)");
  }

  std::vector<Segment> segs{{std::nullopt, sol.coefficients[0], sol.coefficients[1]}};
  if (break_start) segs.push_back({*break_start, sol.coefficients[2], sol.coefficients[3]});
  PiecewiseLinearModel model(kind, lag, std::move(segs));

  Series predicted = predict_univariate(model, driver, y.start(), y.end());
  return assemble(std::move(model), break_start, lag, std::move(y), std::move(predicted));
}

CalibrationResult search(const CalibrationConfig& config, const GrowthRateSeries& driver, const Series& response) {
  config.validate();
  if (config.break_candidate.frequency() != response.frequency() || driver.frequency() != response.frequency()) {
    throw FrequencyMismatchError("break candidate, driver and response must share one frequency");
  }

  GrowthRateSeries l = driver;
  Series y = response;
  if (config.smoothing && *config.smoothing > 1) {
    l = GrowthRateSeries(moving_average(driver.series(), *config.smoothing));
    y = moving_average(response, *config.smoothing);
  }

  // Common span: every lag in the range must be able to reach back to the first period.
  if (y.empty() || l.size() == 0) throw CoverageError("empty driver or response");
  const Period first = std::max(y.start(), l.start().advanced(config.lags.last));
  const Period last = std::min(y.end(), l.end().advanced(config.lags.first));
  if (last < first) {
    throw CoverageError("driver " + l.series().span_string() + " cannot cover response " + y.span_string() +
                        " for lags " + std::to_string(config.lags.first) + ".." +
                        std::to_string(config.lags.last));
  }
  y = y.slice(first, last);

  std::vector<Period> breaks;
  for (int d = -config.break_window; d <= config.break_window; ++d) {
    const Period b = config.break_candidate.advanced(d);
    const auto lead = periods_between(first, b);
    const auto tail = periods_between(b, last) + 1;
    if (lead < kMinSegmentLength || tail < kMinSegmentLength) {
      throw CoverageError("break window " + config.break_candidate.advanced(-config.break_window).to_string() + ".." +
                          config.break_candidate.advanced(config.break_window).to_string() +
                          " exceeds the usable data span " + first.to_string() + ".." + last.to_string());
    }
    breaks.push_back(b);
  }

  const double cumulative_scale = rms(cumulative_sum(y).values());
  const double tie_tolerance = 1e-9 * cumulative_scale + std::numeric_limits<double>::min();

  // Candidates are visited in preference order (lag ascending; no-break first, then
  // breaks in time order), so a later candidate replaces the incumbent only when it
  // is strictly better beyond the tie tolerance.
  std::optional<CalibrationResult> best;
  int evaluated = 0;
  int degenerate = 0;
  std::string last_error;
  for (int lag = config.lags.first; lag <= config.lags.last; ++lag) {
    std::vector<std::optional<Period>> candidates{std::nullopt};
    candidates.insert(candidates.end(), breaks.begin(), breaks.end());
    for (const auto& b : candidates) {
      ++evaluated;
      try {
        CalibrationResult r = fit_cumulative_lsq(l, y, b, lag, config.response_kind);
        if (!best || r.metrics.rms_cumulative < best->metrics.rms_cumulative - tie_tolerance) {
          best = std::move(r);
        }
      } catch (const DegenerateFitError& e) {
        ++degenerate;
        last_error = e.what();
      }
    }
  }
  if (!best) throw DegenerateFitError("all " + std::to_string(degenerate) + " candidate fits degenerate: " + last_error);
  best->fits_evaluated = evaluated;
  return std::move(*best);
}

CalibrationResult fit_generalized(const GrowthRateSeries& l, const Series& u, const Series& pi, int driver_lag,
                                  int unemployment_lag) {
  // Validates the lags before any data work.
  GeneralizedModel shape(0.0, 0.0, 0.0, driver_lag, unemployment_lag);

  auto [lx, ux] = align(lag_shift(l.series(), driver_lag), lag_shift(u, unemployment_lag));
  auto [lxx, y] = align(lx, pi);
  if (y.size() < 5) {
    throw InsufficientDataError("generalized fit needs at least 5 jointly covered periods, got " +
                                std::to_string(y.size()));
  }
  const Series ul = ux.slice(y.start(), y.end());

  const Eigen::Index n = y.size();
  Eigen::MatrixXd design(n, 3);
  design.col(0) = cumulative_sum(lxx).values();
  design.col(1) = cumulative_sum(ul).values();
  design.col(2) = Eigen::VectorXd::LinSpaced(n, 1.0, double(n));
  const Eigen::VectorXd target = cumulative_sum(y).values();

  const auto sol = detail::solve_min_norm(design, target);
  if (sol.rank < 2) {
    throw DegenerateFitError("generalized cumulative design has rank " + std::to_string(sol.rank) +
                             "; driver and unemployment carry no usable variation");
  }
  GeneralizedModel model(sol.coefficients[0], sol.coefficients[1], sol.coefficients[2], driver_lag,
                         unemployment_lag);
  Series predicted = predict_generalized(model, l, u, y.start(), y.end());
  return assemble(model, std::nullopt, driver_lag, std::move(y), std::move(predicted));
}

double r_squared(const Series& observed, const Series& predicted) {
  require_same_span(observed, predicted);
  if (observed.empty()) throw InsufficientDataError("r_squared of empty series");
  const Eigen::VectorXd centered = observed.values().array() - observed.values().mean();
  const double sst = centered.squaredNorm();
  if (sst == 0.0) throw DomainError("r_squared undefined for a zero-variance observed series");
  const double ssr = (observed.values() - predicted.values()).squaredNorm();
  return 1.0 - ssr / sst;
}

double rmsfe(const Series& observed, const Series& predicted, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  auto [o, p] = align(observed, predicted);
  if (o.empty()) throw CoverageError("observed and predicted series do not overlap");
  return rms(o.values() - p.values());
}

Series naive_forecast(const Series& series, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  if (horizon >= series.size()) {
    throw InsufficientDataError("horizon " + std::to_string(horizon) + " leaves no forecast for a series of length " +
                                std::to_string(series.size()));
  }
  return Series(series.start().advanced(horizon), Series::Vector(series.values().head(series.size() - horizon)));
}

ForecastEvaluation evaluate_forecast(const Series& observed, const Series& predicted, int model_lag, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  if (model_lag < horizon) {
    throw InvalidArgument("model lag " + std::to_string(model_lag) + " is shorter than horizon " +
                          std::to_string(horizon) + "; the prediction would use future driver values");
  }
  const Series naive = naive_forecast(observed, horizon);
  auto [o1, p1] = align(observed, predicted);
  auto [o, n] = align(o1, naive);
  if (o.empty()) throw CoverageError("no common span for model and naive forecasts");
  const Series p = p1.slice(o.start(), o.end());
  return ForecastEvaluation{horizon, rmsfe(o, p, horizon), rmsfe(o, n, horizon), o.start(), o.end()};
}

double linear_trend_slope(const Series& y) {
  if (y.size() < 2) throw InsufficientDataError("trend slope needs at least 2 values");
  const Eigen::Index n = y.size();
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 0.0, double(n - 1));
  const Eigen::VectorXd tc = t.array() - t.mean();
  const Eigen::VectorXd yc = y.values().array() - y.values().mean();
  return tc.dot(yc) / tc.squaredNorm();
}

}  // namespace lfcurve
