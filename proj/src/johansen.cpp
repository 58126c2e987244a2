#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

#include "lfcurve/econometrics.hpp"

namespace lfcurve {

namespace {

// Residuals of the columns of Y after projecting out the columns of Z.
Eigen::MatrixXd partial_out(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z) {
  if (Z.cols() == 0) return Y;
  const Eigen::MatrixXd B = Z.colPivHouseholderQr().solve(Y);
  return Y - Z * B;
}

void require_positive_definite(const Eigen::MatrixXd& S, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().maxCoeff();
  const double lo = es.eigenvalues().minCoeff();
  if (!(hi > 0.0) || lo <= 1e-10 * hi) {
    throw CollinearityError(std::string("Johansen: ") + what +
                            " moment matrix is singular (inputs are collinear or constant)");
  }
}

}  // namespace

RankReport johansen_trace(const std::vector<Series>& series_list, int maxlag, TrendSpec trend) {
  const int n = static_cast<int>(series_list.size());
  if (n < 2 || n > 3) throw InvalidArgument("Johansen test supports 2 or 3 series, got " + std::to_string(n));
  if (maxlag < 0) throw InvalidArgument("Johansen maxlag must be non-negative");

  // Common span of all inputs.
  Period first = series_list.front().start();
  Period last = series_list.front().end();
  for (const auto& s : series_list) {
    if (s.frequency() != series_list.front().frequency()) throw FrequencyMismatchError("Johansen inputs differ in frequency");
    if (s.empty()) throw InsufficientDataError("Johansen input series is empty");
    first = std::max(first, s.start());
    last = std::min(last, s.end());
  }
  const Eigen::Index T = last < first ? 0 : periods_between(first, last) + 1;
  if (T < 10 * n) {
    throw InsufficientDataError("Johansen test needs a common span of at least " + std::to_string(10 * n) +
                                " periods, got " + std::to_string(T));
  }

  Eigen::MatrixXd X(T, n);
  for (int j = 0; j < n; ++j) X.col(j) = series_list[j].slice(first, last).values();

  const Eigen::Index nobs = T - 1 - maxlag;
  const int det = trend == TrendSpec::none ? 0 : trend == TrendSpec::constant ? 1 : 2;
  if (nobs <= n * (maxlag + 1) + det + 1) {
    throw InsufficientDataError("Johansen: too few observations for maxlag " + std::to_string(maxlag));
  }

  Eigen::MatrixXd Z0(nobs, n);                    // dX_t
  Eigen::MatrixXd Z1(nobs, n);                    // X_{t-1}
  Eigen::MatrixXd Z2(nobs, n * maxlag + det);     // dX_{t-1..t-maxlag}, deterministic terms
  for (Eigen::Index r = 0; r < nobs; ++r) {
    const Eigen::Index t = maxlag + 1 + r;
    Z0.row(r) = X.row(t) - X.row(t - 1);
    Z1.row(r) = X.row(t - 1);
    for (int k = 1; k <= maxlag; ++k) Z2.block(r, (k - 1) * n, 1, n) = X.row(t - k) - X.row(t - k - 1);
    if (det >= 1) Z2(r, n * maxlag) = 1.0;
    if (det >= 2) Z2(r, n * maxlag + 1) = double(r + 1);
  }

  const Eigen::MatrixXd R0 = partial_out(Z0, Z2);
  const Eigen::MatrixXd R1 = partial_out(Z1, Z2);
  const double m = double(nobs);
  const Eigen::MatrixXd S00 = R0.transpose() * R0 / m;
  const Eigen::MatrixXd S11 = R1.transpose() * R1 / m;
  const Eigen::MatrixXd S01 = R0.transpose() * R1 / m;
  require_positive_definite(S11, "levels");
  require_positive_definite(S00, "differences");

  // Canonical correlations: S10 S00^{-1} S01 v = lambda S11 v.
  const Eigen::MatrixXd A = S01.transpose() * S00.ldlt().solve(S01);
  const Eigen::MatrixXd A_sym = 0.5 * (A + A.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A_sym, S11, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw Error("Johansen: generalized eigenproblem failed");

  RankReport report;
  report.maxlag = maxlag;
  report.trend = trend;
  report.nobs = nobs;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    report.eigenvalues.push_back(std::clamp(ges.eigenvalues()[i], 0.0, 1.0 - 1e-15));
  }
  report.selected_rank = n;
  for (int r = 0; r < n; ++r) {
    double trace = 0.0;
    for (int i = r; i < n; ++i) trace -= m * std::log1p(-report.eigenvalues[i]);
    report.trace_statistics.push_back(trace);
    report.critical_values.push_back(critical::johansen_trace(trend, n - r));
  }
  for (int r = 0; r < n; ++r) {
    if (report.trace_statistics[r] <= report.critical_values[r].pct5) {
      report.selected_rank = r;
      break;
    }
  }
  return report;
}

}  // namespace lfcurve
