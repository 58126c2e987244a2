#include <Eigen/QR>

#include <sstream>

#include "lfcurve/econometrics.hpp"

namespace lfcurve {

const char* to_string(TrendSpec t) {
  switch (t) {
    case TrendSpec::none: return "none";
    case TrendSpec::constant: return "constant";
    case TrendSpec::constant_and_trend: return "constant_and_trend";
  }
  return "?";
}

TrendSpec parse_trend(std::string_view text) {
  if (text == "none" || text == "n") return TrendSpec::none;
  if (text == "constant" || text == "c") return TrendSpec::constant;
  if (text == "constant_and_trend" || text == "ct" || text == "trend") return TrendSpec::constant_and_trend;
  throw InvalidArgument("unknown trend specification '" + std::string(text) + "'");
}

OlsResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (y.size() != n) throw InvalidArgument("ols: y has " + std::to_string(y.size()) + " rows, X has " + std::to_string(n));
  if (n <= k) throw InsufficientDataError("ols: need more rows than columns");

  // Rank on unit-norm columns so the decision does not depend on column scale.
  Eigen::MatrixXd scaled = X;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double norm = X.col(j).norm();
    if (norm > 0) scaled.col(j) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(scaled);
  pivoted.setThreshold(1e-12);
  if (pivoted.rank() < k) {
    std::ostringstream msg;
    msg << "ols: design has rank " << pivoted.rank() << " < " << k << "; dependent columns {";
    const auto& perm = pivoted.colsPermutation().indices();
    for (Eigen::Index j = pivoted.rank(); j < k; ++j) msg << (j > pivoted.rank() ? "," : "") << perm[j];
    msg << "}";
    throw RankDeficiencyError(msg.str());
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  OlsResult out;
  out.coefficients = qr.solve(y);
  out.residuals = y - X * out.coefficients;
  out.ssr = out.residuals.squaredNorm();
  out.dof = n - k;
  out.residual_variance = out.ssr / double(out.dof);

  // (X'X)^{-1} = R^{-1} R^{-T}
  const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd R_inv = R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  out.standard_errors = (out.residual_variance * (R_inv * R_inv.transpose()).diagonal()).cwiseSqrt();
  return out;
}

std::optional<double> reject_level(double statistic, const CriticalValues& cv) {
  if (statistic < cv.pct1) return 0.01;
  if (statistic < cv.pct5) return 0.05;
  if (statistic < cv.pct10) return 0.10;
  return std::nullopt;
}

const TestStatistic& TestReport::statistic(std::string_view name) const {
  for (const auto& s : statistics) {
    if (s.name == name) return s;
  }
  throw InvalidArgument("report '" + test_name + "' has no statistic '" + std::string(name) + "'");
}

}  // namespace lfcurve
