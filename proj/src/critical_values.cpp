#include <array>
#include <cstddef>

#include "lfcurve/econometrics.hpp"

namespace lfcurve::critical {

namespace {

struct Row {
  double n;  // sample size; 0 marks the asymptotic row
  double pct1, pct5, pct10;
};

// Fuller's Dickey-Fuller tables (as reproduced in standard time-series texts),
// rows for n = 25, 50, 100, 250, 500, infinity.
constexpr std::array<Row, 6> kTauNone{{{25, -2.66, -1.95, -1.60},
                                       {50, -2.62, -1.95, -1.61},
                                       {100, -2.60, -1.95, -1.61},
                                       {250, -2.58, -1.95, -1.62},
                                       {500, -2.58, -1.95, -1.62},
                                       {0, -2.58, -1.95, -1.62}}};
constexpr std::array<Row, 6> kTauConstant{{{25, -3.75, -3.00, -2.63},
                                           {50, -3.58, -2.93, -2.60},
                                           {100, -3.51, -2.89, -2.58},
                                           {250, -3.46, -2.88, -2.57},
                                           {500, -3.44, -2.87, -2.57},
                                           {0, -3.43, -2.86, -2.57}}};
constexpr std::array<Row, 6> kTauTrend{{{25, -4.38, -3.60, -3.24},
                                        {50, -4.15, -3.50, -3.18},
                                        {100, -4.04, -3.45, -3.15},
                                        {250, -3.99, -3.43, -3.13},
                                        {500, -3.98, -3.42, -3.13},
                                        {0, -3.96, -3.41, -3.12}}};

constexpr std::array<Row, 6> kRhoNone{{{25, -11.9, -7.3, -5.3},
                                       {50, -12.9, -7.7, -5.5},
                                       {100, -13.3, -7.9, -5.6},
                                       {250, -13.6, -8.0, -5.7},
                                       {500, -13.7, -8.0, -5.7},
                                       {0, -13.8, -8.1, -5.7}}};
constexpr std::array<Row, 6> kRhoConstant{{{25, -17.2, -12.5, -10.2},
                                           {50, -18.9, -13.3, -10.7},
                                           {100, -19.8, -13.7, -11.0},
                                           {250, -20.3, -14.0, -11.2},
                                           {500, -20.5, -14.0, -11.2},
                                           {0, -20.7, -14.1, -11.3}}};
constexpr std::array<Row, 6> kRhoTrend{{{25, -22.5, -17.9, -15.6},
                                        {50, -25.7, -19.8, -16.8},
                                        {100, -27.4, -20.7, -17.5},
                                        {250, -28.4, -21.3, -18.0},
                                        {500, -28.9, -21.5, -18.1},
                                        {0, -29.5, -21.8, -18.3}}};

// DF-GLS quantiles as a response surface b0 + b1/n + b2/n^2 + b3/n^3 in the
// regression sample size n (MacKinnon-style fit to simulated GLS-demeaned and
// GLS-detrended statistics, as published with the arch package). Rows are 1%, 5%, 10%.
constexpr double kGlsConstant[3][4] = {{-2.56781793, -20.5575392, 182.727674, -1778.66664},
                                       {-1.94363325, -21.7272746, 260.815068, -2269.14916},
                                       {-1.61998241, -23.2734708, 306.474378, -2574.83557}};
constexpr double kGlsTrend[3][4] = {{-3.40689134, -21.69971242, 27.26295939, -816.84404772},
                                    {-2.84677178, -19.69109364, 84.7664136, -799.40722401},
                                    {-2.55890707, -19.42621991, 116.53759752, -840.31342847}};

CriticalValues response_surface(const double (&b)[3][4], double nobs) {
  const double x = 1.0 / nobs;
  const auto at = [x](const double(&c)[4]) { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); };
  return {at(b[0]), at(b[1]), at(b[2])};
}

// Linear interpolation in x = 1/n between table rows; clamped at the smallest n.
template <std::size_t N>
CriticalValues interpolate(const std::array<Row, N>& table, double nobs) {
  const auto x_of = [](const Row& r) { return r.n == 0 ? 0.0 : 1.0 / r.n; };
  const double x = nobs > 0 ? 1.0 / nobs : 0.0;
  if (x >= x_of(table.front())) return {table.front().pct1, table.front().pct5, table.front().pct10};
  for (std::size_t i = 1; i < N; ++i) {
    const double x_hi = x_of(table[i - 1]);
    const double x_lo = x_of(table[i]);
    if (x >= x_lo) {
      const double w = (x - x_lo) / (x_hi - x_lo);
      const auto mix = [w](double lo, double hi) { return lo + w * (hi - lo); };
      return {mix(table[i].pct1, table[i - 1].pct1), mix(table[i].pct5, table[i - 1].pct5),
              mix(table[i].pct10, table[i - 1].pct10)};
    }
  }
  return {table.back().pct1, table.back().pct5, table.back().pct10};
}

}  // namespace

CriticalValues df_tau(TrendSpec trend, double nobs) {
  switch (trend) {
    case TrendSpec::none: return interpolate(kTauNone, nobs);
    case TrendSpec::constant: return interpolate(kTauConstant, nobs);
    case TrendSpec::constant_and_trend: return interpolate(kTauTrend, nobs);
  }
  throw InvalidArgument("unknown trend specification");
}

CriticalValues df_rho(TrendSpec trend, double nobs) {
  switch (trend) {
    case TrendSpec::none: return interpolate(kRhoNone, nobs);
    case TrendSpec::constant: return interpolate(kRhoConstant, nobs);
    case TrendSpec::constant_and_trend: return interpolate(kRhoTrend, nobs);
  }
  throw InvalidArgument("unknown trend specification");
}

CriticalValues dfgls_tau(TrendSpec trend, double nobs) {
  switch (trend) {
    case TrendSpec::constant: return response_surface(kGlsConstant, nobs);
    case TrendSpec::constant_and_trend: return response_surface(kGlsTrend, nobs);
    case TrendSpec::none: break;
  }
  throw InvalidArgument("DF-GLS requires a constant or constant_and_trend specification");
}

CriticalValues johansen_trace(TrendSpec trend, int stochastic_trends) {
  // 90%, 95%, 99% quantiles of the trace statistic for n - r = 1, 2, 3.
  static constexpr double kNone[3][3] = {
      {2.9762, 4.1296, 6.9406}, {10.4741, 12.3212, 16.3640}, {21.7781, 24.2761, 29.5147}};
  static constexpr double kConstant[3][3] = {
      {2.7055, 3.8415, 6.6349}, {13.4294, 15.4943, 19.9349}, {27.0669, 29.7961, 35.4628}};
  static constexpr double kTrend[3][3] = {
      {2.7055, 3.8415, 6.6349}, {16.1619, 18.3985, 23.1485}, {32.0645, 35.0116, 41.0815}};
  if (stochastic_trends < 1 || stochastic_trends > 3) {
    throw InvalidArgument("Johansen tables cover 1..3 common trends, got " + std::to_string(stochastic_trends));
  }
  const double(*table)[3] = trend == TrendSpec::none       ? kNone
                            : trend == TrendSpec::constant ? kConstant
                                                           : kTrend;
  const auto& row = table[stochastic_trends - 1];
  return {row[2], row[1], row[0]};
}

}  // namespace lfcurve::critical
