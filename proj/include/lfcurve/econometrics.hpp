#ifndef LFCURVE_ECONOMETRICS_HPP
#define LFCURVE_ECONOMETRICS_HPP

// Unit-root and cointegration tests: ADF, DF-GLS, Phillips-Perron, residual-based
// (Engle-Granger style) cointegration, and the Johansen trace test.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lfcurve/series.hpp"

namespace lfcurve {

enum class TrendSpec { none, constant, constant_and_trend };

const char* to_string(TrendSpec t);
TrendSpec parse_trend(std::string_view text);

// ---------------------------------------------------------------------------
// OLS
// ---------------------------------------------------------------------------

struct OlsResult {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  Eigen::VectorXd standard_errors;
  double residual_variance = 0.0;  // SSR / (n - k)
  double ssr = 0.0;
  Eigen::Index dof = 0;
};

/// Classical least squares. Throws RankDeficiencyError naming the dependent
/// columns when X is not of full column rank.
OlsResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

// ---------------------------------------------------------------------------
// Test reports
// ---------------------------------------------------------------------------

/// Left-tail critical values at the 1%, 5% and 10% levels.
struct CriticalValues {
  double pct1 = 0.0;
  double pct5 = 0.0;
  double pct10 = 0.0;
};

/// Smallest tabulated level (0.01, 0.05, 0.10) at which statistic < critical value.
std::optional<double> reject_level(double statistic, const CriticalValues& cv);

struct TestStatistic {
  std::string name;  // "adf_t", "pp_z_rho", "pp_z_t", "dfgls_t"
  double value = 0.0;
  CriticalValues critical;
  std::optional<double> reject_at;
};

enum class TestOutcome {
  statistic,               // statistics are finite numbers
  degenerate_perfect_fit,  // the test regression fits exactly; the t-ratio is unbounded
};

struct TestReport {
  std::string test_name;
  TestOutcome outcome = TestOutcome::statistic;
  std::vector<TestStatistic> statistics;  // empty for a degenerate outcome
  int lag_or_bandwidth = 0;
  TrendSpec trend = TrendSpec::constant;
  Eigen::Index nobs = 0;

  [[nodiscard]] const TestStatistic& primary() const { return statistics.at(0); }
  [[nodiscard]] const TestStatistic& statistic(std::string_view name) const;
  /// Rejection level of the primary statistic; absent when degenerate or not rejected.
  [[nodiscard]] std::optional<double> reject_at() const {
    return statistics.empty() ? std::nullopt : statistics.front().reject_at;
  }
};

// ---------------------------------------------------------------------------
// Unit-root tests
// ---------------------------------------------------------------------------

/// Augmented Dickey-Fuller: t-ratio on rho in
///   dy_t = [mu] [+ beta t] + rho y_{t-1} + sum_k gamma_k dy_{t-k} + e_t.
TestReport adf_test(const Series& s, int lags, TrendSpec trend);

/// Phillips-Perron Z(rho) and Z(t) from the lag-0 Dickey-Fuller regression with a
/// Bartlett-kernel long-run variance. Default bandwidth floor(4 (n/100)^(2/9)).
TestReport pp_test(const Series& s, TrendSpec trend, std::optional<int> bandwidth = std::nullopt);

/// Elliott-Rothenberg-Stock DF-GLS. GLS demeaning with c = -7 (constant) or
/// detrending with c = -13.5 (constant_and_trend).
TestReport dfgls_test(const Series& s, int lags, TrendSpec trend = TrendSpec::constant);

/// ADF (and optionally PP) on a model residual with a constant and no trend.
/// Rejecting the unit root is read as cointegration of observed and predicted.
TestReport residual_cointegration_test(const Series& residual, int lags, bool include_pp = false);

// ---------------------------------------------------------------------------
// Johansen
// ---------------------------------------------------------------------------

/// 90/95/99% trace critical values, reported with the 10/5/1% naming.
struct RankReport {
  std::vector<double> eigenvalues;        // descending
  std::vector<double> trace_statistics;   // index r = rank hypothesis 0..n-1
  std::vector<CriticalValues> critical_values;
  int selected_rank = 0;                  // at the 5% level
  int maxlag = 0;                         // lagged differences in the VECM
  TrendSpec trend = TrendSpec::none;
  Eigen::Index nobs = 0;
};

/// Trace test for 2 or 3 series over their common span.
RankReport johansen_trace(const std::vector<Series>& series_list, int maxlag, TrendSpec trend);

// ---------------------------------------------------------------------------
// Critical-value tables
// ---------------------------------------------------------------------------

namespace critical {

/// Dickey-Fuller t-ratio quantiles, linear interpolation in 1/n.
CriticalValues df_tau(TrendSpec trend, double nobs);
/// Dickey-Fuller normalized-bias n(rho - 1) quantiles, linear interpolation in 1/n.
CriticalValues df_rho(TrendSpec trend, double nobs);
/// DF-GLS t-ratio quantiles (constant or constant_and_trend).
CriticalValues dfgls_tau(TrendSpec trend, double nobs);
/// Johansen trace quantiles for n - r common trends (1..3).
CriticalValues johansen_trace(TrendSpec trend, int stochastic_trends);

}  // namespace critical

}  // namespace lfcurve

#endif  // LFCURVE_ECONOMETRICS_HPP
