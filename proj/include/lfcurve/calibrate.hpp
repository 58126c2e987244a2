#ifndef LFCURVE_CALIBRATE_HPP
#define LFCURVE_CALIBRATE_HPP

// Least-squares calibration on cumulative curves.
//
// Instead of regressing the response on the lagged driver period by period, the
// model is fitted so that the running sum of its predictions tracks the running
// sum of the observations. Uncorrelated noise largely cancels in the running sums
// while a change in coefficients accumulates linearly, which makes the residual
// norm sensitive to the break position.

#include <optional>
#include <variant>

#include <Eigen/Core>

#include "lfcurve/linmodel.hpp"
#include "lfcurve/series.hpp"

namespace lfcurve {

/// Inclusive range of non-negative lags.
struct LagRange {
  int first = 0;
  int last = 0;

  [[nodiscard]] bool valid() const noexcept { return first >= 0 && last >= first; }
  static LagRange single(int lag) { return {lag, lag}; }
  static LagRange default_for(Frequency f) { return f == Frequency::annual ? LagRange{0, 5} : LagRange{0, 12}; }
};

/// L2 drives fitting and reporting; L1 only changes which norm is reported.
enum class Metric { l2, l1 };

struct CalibrationConfig {
  Period break_candidate;
  int break_window = 4;
  LagRange lags{0, 5};
  Metric metric = Metric::l2;
  std::optional<int> smoothing;  // trailing MA window applied to driver and response before fitting
  ResponseKind response_kind = ResponseKind::inflation;

  void validate() const;
};

struct FitMetrics {
  double rms_cumulative = 0.0;
  double rms_dynamic = 0.0;
  double mean_abs_cumulative = 0.0;
  double mean_abs_dynamic = 0.0;
  double r2_dynamic = 0.0;
  double r2_cumulative = 0.0;
};

struct CalibrationResult {
  std::variant<PiecewiseLinearModel, GeneralizedModel> model;
  std::optional<Period> break_year;
  int lag = 0;
  FitMetrics metrics;
  Series observed;             // response over the fitted span
  Series predicted;            // model prediction over the fitted span
  Series residual_dynamic;     // observed - predicted
  Series residual_cumulative;  // cumsum(observed) - cumsum(predicted)
  int fits_evaluated = 1;

  [[nodiscard]] const PiecewiseLinearModel& piecewise() const { return std::get<PiecewiseLinearModel>(model); }
  [[nodiscard]] const GeneralizedModel& generalized() const { return std::get<GeneralizedModel>(model); }
};

/// Fits slope/intercept per segment (one or two segments) at a fixed lag so that the
/// cumulative prediction best matches the cumulative response in the L2 sense.
CalibrationResult fit_cumulative_lsq(const GrowthRateSeries& driver, const Series& response,
                                     const std::optional<Period>& break_start, int lag,
                                     ResponseKind kind = ResponseKind::inflation);

/// Grid search over break in candidate +/- window and lag in range, with a no-break
/// baseline per lag. Minimum cumulative RMS wins; exact ties go to the smaller lag,
/// then no break, then the earlier break. All fits share one span (the one
/// available at the largest lag) so their residual norms are comparable.
CalibrationResult search(const CalibrationConfig& config, const GrowthRateSeries& driver, const Series& response);

/// Fits pi_t = c1 l_{t-i} + c2 u_{t-k} + c3 on cumulative curves. Under exact
/// collinearity (e.g. u itself linear in l) the minimum-norm coefficient vector is
/// returned.
CalibrationResult fit_generalized(const GrowthRateSeries& l, const Series& u, const Series& pi, int driver_lag,
                                  int unemployment_lag);

/// 1 - SSR/SST about the observed mean; negative when worse than the mean.
double r_squared(const Series& observed, const Series& predicted);

/// Root-mean-square difference over the common span of the two series.
double rmsfe(const Series& observed, const Series& predicted, int horizon);

/// No-change forecast: the value at t is the observation at t - horizon.
Series naive_forecast(const Series& series, int horizon);

struct ForecastEvaluation {
  int horizon = 1;
  double model_rmsfe = 0.0;
  double naive_rmsfe = 0.0;
  Period from;
  Period to;
};

/// Compares a model prediction against the no-change forecast over their common span.
/// Requires the prediction to be a genuine forecast (model lag >= horizon).
ForecastEvaluation evaluate_forecast(const Series& observed, const Series& predicted, int model_lag, int horizon);

/// Plain least-squares slope of y against its period index; used to measure the
/// rate at which cumulative residuals diverge.
double linear_trend_slope(const Series& y);

namespace detail {

/// Minimum-norm least-squares solution and the numerical rank of the design.
struct LsqSolution {
  Eigen::VectorXd coefficients;
  Eigen::Index rank = 0;
};

LsqSolution solve_min_norm(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

}  // namespace detail

}  // namespace lfcurve

#endif  // LFCURVE_CALIBRATE_HPP
