#include <cmath>

#include "lfcurve/econometrics.hpp"

namespace lfcurve {

namespace {

// Residual sum of squares below this fraction of the dependent variable's sum of
// squares marks an exact fit.
constexpr double kPerfectFitRatio = 1e-20;

int deterministic_columns(TrendSpec trend) {
  switch (trend) {
    case TrendSpec::none: return 0;
    case TrendSpec::constant: return 1;
    case TrendSpec::constant_and_trend: return 2;
  }
  return 0;
}

struct DfDesign {
  Eigen::VectorXd dy;
  Eigen::MatrixXd X;  // column 0 is y_{t-1}
};

// dy_t on [y_{t-1}, dy_{t-1..t-lags}, deterministic terms] for t = lags+1 .. T-1.
DfDesign df_design(const Eigen::VectorXd& y, int lags, TrendSpec trend) {
  const Eigen::Index T = y.size();
  const Eigen::Index nobs = T - 1 - lags;
  const int det = deterministic_columns(trend);
  DfDesign d{Eigen::VectorXd(nobs), Eigen::MatrixXd(nobs, 1 + lags + det)};
  for (Eigen::Index r = 0; r < nobs; ++r) {
    const Eigen::Index t = lags + 1 + r;
    d.dy[r] = y[t] - y[t - 1];
    d.X(r, 0) = y[t - 1];
    for (int k = 1; k <= lags; ++k) d.X(r, k) = y[t - k] - y[t - k - 1];
    if (det >= 1) d.X(r, 1 + lags) = 1.0;
    if (det >= 2) d.X(r, 2 + lags) = double(r + 1);
  }
  return d;
}

bool perfect_fit(const OlsResult& fit, const Eigen::VectorXd& dy) {
  const double scale = dy.squaredNorm();
  return scale == 0.0 || fit.ssr <= kPerfectFitRatio * scale;
}

void require_length(const Series& s, Eigen::Index needed, const char* test) {
  if (s.size() < needed) {
    throw InsufficientDataError(std::string(test) + " needs at least " + std::to_string(needed) +
                                " observations, got " + std::to_string(s.size()));
  }
}

TestStatistic make_stat(std::string name, double value, const CriticalValues& cv) {
  return TestStatistic{std::move(name), value, cv, reject_level(value, cv)};
}

}  // namespace

TestReport adf_test(const Series& s, int lags, TrendSpec trend) {
  if (lags < 0) throw InvalidArgument("ADF lags must be non-negative");
  require_length(s, lags + 10, "ADF");
  const DfDesign d = df_design(s.values(), lags, trend);
  const OlsResult fit = ols(d.dy, d.X);

  TestReport report{"adf", TestOutcome::statistic, {}, lags, trend, d.dy.size()};
  if (perfect_fit(fit, d.dy)) {
    report.outcome = TestOutcome::degenerate_perfect_fit;
    return report;
  }
  const double t = fit.coefficients[0] / fit.standard_errors[0];
  report.statistics.push_back(make_stat("adf_t", t, critical::df_tau(trend, double(d.dy.size()))));
  return report;
}

TestReport pp_test(const Series& s, TrendSpec trend, std::optional<int> bandwidth) {
  require_length(s, 15, "Phillips-Perron");
  const DfDesign d = df_design(s.values(), 0, trend);
  const OlsResult fit = ols(d.dy, d.X);
  const Eigen::Index n = d.dy.size();
  const int q = bandwidth ? *bandwidth : static_cast<int>(std::floor(4.0 * std::pow(double(n) / 100.0, 2.0 / 9.0)));
  if (q < 0 || q >= n) throw InvalidArgument("PP bandwidth must be in 0.." + std::to_string(n - 1));

  TestReport report{"pp", TestOutcome::statistic, {}, q, trend, n};
  if (perfect_fit(fit, d.dy)) {
    report.outcome = TestOutcome::degenerate_perfect_fit;
    return report;
  }

  const Eigen::VectorXd& u = fit.residuals;
  const double nn = double(n);
  const double gamma0 = u.squaredNorm() / nn;
  double lambda2 = gamma0;
  for (int j = 1; j <= q; ++j) {
    const double gamma_j = u.tail(n - j).dot(u.head(n - j)) / nn;
    lambda2 += 2.0 * (1.0 - double(j) / double(q + 1)) * gamma_j;
  }
  const double beta = fit.coefficients[0];  // rho - 1
  const double se = fit.standard_errors[0];
  const double s2 = fit.residual_variance;
  const double lambda = std::sqrt(lambda2);

  const double z_rho = nn * beta - 0.5 * (nn * nn * se * se / s2) * (lambda2 - gamma0);
  const double z_t =
      std::sqrt(gamma0 / lambda2) * (beta / se) - 0.5 * (lambda2 - gamma0) / lambda * (nn * se / std::sqrt(s2));

  report.statistics.push_back(make_stat("pp_z_t", z_t, critical::df_tau(trend, nn)));
  report.statistics.push_back(make_stat("pp_z_rho", z_rho, critical::df_rho(trend, nn)));
  return report;
}

TestReport dfgls_test(const Series& s, int lags, TrendSpec trend) {
  if (lags < 0) throw InvalidArgument("DF-GLS lags must be non-negative");
  if (trend == TrendSpec::none) throw InvalidArgument("DF-GLS requires a constant or constant_and_trend specification");
  require_length(s, lags + 15, "DF-GLS");

  const Eigen::VectorXd& y = s.values();
  const Eigen::Index T = y.size();
  const double cbar = trend == TrendSpec::constant ? -7.0 : -13.5;
  const double a = 1.0 + cbar / double(T);
  const int k = trend == TrendSpec::constant ? 1 : 2;

  // Quasi-differenced regression of y on the deterministic terms.
  Eigen::VectorXd yq(T);
  Eigen::MatrixXd zq(T, k);
  Eigen::MatrixXd z(T, k);
  for (Eigen::Index t = 0; t < T; ++t) {
    z(t, 0) = 1.0;
    if (k == 2) z(t, 1) = double(t + 1);
  }
  yq[0] = y[0];
  zq.row(0) = z.row(0);
  for (Eigen::Index t = 1; t < T; ++t) {
    yq[t] = y[t] - a * y[t - 1];
    zq.row(t) = z.row(t) - a * z.row(t - 1);
  }
  const Eigen::VectorXd beta = ols(yq, zq).coefficients;
  const Eigen::VectorXd detrended = y - z * beta;

  const DfDesign d = df_design(detrended, lags, TrendSpec::none);
  const OlsResult fit = ols(d.dy, d.X);
  TestReport report{"dfgls", TestOutcome::statistic, {}, lags, trend, d.dy.size()};
  if (perfect_fit(fit, d.dy)) {
    report.outcome = TestOutcome::degenerate_perfect_fit;
    return report;
  }
  const double t = fit.coefficients[0] / fit.standard_errors[0];
  report.statistics.push_back(make_stat("dfgls_t", t, critical::dfgls_tau(trend, double(d.dy.size()))));
  return report;
}

TestReport residual_cointegration_test(const Series& residual, int lags, bool include_pp) {
  if (lags < 0) throw InvalidArgument("lags must be non-negative");
  require_length(residual, lags + 10, "residual cointegration test");
  // An exactly zero residual has nothing to test.
  if (residual.values().squaredNorm() == 0.0) {
    return TestReport{"residual_cointegration", TestOutcome::degenerate_perfect_fit, {}, lags, TrendSpec::constant,
                      residual.size() - 1 - lags};
  }
  TestReport adf = adf_test(residual, lags, TrendSpec::constant);
  TestReport report{"residual_cointegration", adf.outcome, adf.statistics, lags, TrendSpec::constant, adf.nobs};
  if (include_pp && adf.outcome == TestOutcome::statistic) {
    const TestReport pp = pp_test(residual, TrendSpec::constant);
    if (pp.outcome == TestOutcome::statistic) {
      report.statistics.insert(report.statistics.end(), pp.statistics.begin(), pp.statistics.end());
    }
  }
  return report;
}

}  // namespace lfcurve
