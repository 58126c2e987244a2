// Seeded property checks: each test draws many random inputs and asserts an
// invariant that must hold for all of them.

#include <doctest.h>

#include <cmath>
#include <random>

#include "lfcurve/calibrate.hpp"
#include "lfcurve/csv.hpp"
#include "lfcurve/econometrics.hpp"
#include "lfcurve/synthetic.hpp"

using namespace lfcurve;

namespace {

Series random_series(std::mt19937_64& rng, Eigen::Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Series::Vector v(n);
  for (auto& x : v) x = u(rng);
  return Series(Period::annual(1900), v);
}

GrowthRateSeries random_driver(std::uint64_t seed) {
  return log_growth_rate(synthetic::labour_force_levels(Period::annual(1955), 56, seed));
}

}  // namespace

TEST_CASE("series transforms: round trips and identities") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 60);
    const Series s = random_series(rng, n);
    const Series c = cumulative_sum(s);

    const Series d = first_difference(c);
    for (Eigen::Index k = 0; k < d.size(); ++k) CHECK(d[k] == doctest::Approx(s[k + 1]).epsilon(1e-12).scale(1));
    CHECK(c[n - 1] == doctest::Approx(s.values().sum()).epsilon(1e-12));

    const Series levels = random_series(rng, n, 0.5, 2.0);
    const double scale = 0.1 + 10.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto g1 = log_growth_rate(levels).series();
    const auto g2 = log_growth_rate(scale * levels).series();
    for (Eigen::Index k = 0; k < g1.size(); ++k) CHECK(std::abs(g1[k] - g2[k]) < 1e-12);

    const int k = 1 + static_cast<int>(rng() % n);
    const Series flat(Period::annual(1900), Series::Vector::Constant(n, 0.37));
    const Series ma = moving_average(flat, k);
    for (Eigen::Index j = 0; j < ma.size(); ++j) CHECK(ma[j] == doctest::Approx(0.37).epsilon(1e-15));

    const int a = static_cast<int>(rng() % 10);
    const int b = static_cast<int>(rng() % 10);
    CHECK(lag_shift(lag_shift(s, a), b) == lag_shift(s, a + b));
  }
}

TEST_CASE("csv round trip is bit exact") {
  std::mt19937_64 rng(102);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    Series::Vector v(30);
    for (auto& x : v) x = n01(rng) * std::pow(10.0, double(static_cast<int>(rng() % 20)) - 10.0);
    const Series s(trial % 2 ? Period::annual(1950) : Period::quarterly(1960, 3), v);
    const Series back = parse_csv(series_to_csv(s), s.frequency());
    CHECK(back == s);
  }
}

TEST_CASE("segment membership is exhaustive and exclusive") {
  const PiecewiseLinearModel m(ResponseKind::inflation, 0,
                               {{std::nullopt, 1.0, 0.0}, {Period::annual(1970), 2.0, 0.0}, {Period::annual(1990), 3.0, 0.0}});
  for (int year = 1900; year <= 2050; ++year) {
    const auto idx = m.segment_index(Period::annual(year));
    const std::size_t expected = year < 1970 ? 0 : year < 1990 ? 1 : 2;
    CHECK(idx == expected);
  }
}

TEST_CASE("predictions are affine in the driver") {
  std::mt19937_64 rng(103);
  const auto m = synthetic::reference::unemployment();
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = random_driver(trial + 1);
    const double delta = std::uniform_real_distribution<double>(-0.05, 0.05)(rng);
    const GrowthRateSeries shifted(l.series() + delta);
    const auto p = predict_univariate(m, l);
    const auto q = predict_univariate(m, shifted);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      const double slope = m.segment_for(p.period_at(k)).slope;
      CHECK(std::abs((q[k] - p[k]) - slope * delta) < 1e-12);
    }
  }
}

TEST_CASE("calibration: exact recovery of random in-family models") {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> slope(-3.0, 3.0);
  std::uniform_real_distribution<double> intercept(-0.05, 0.15);
  for (int trial = 0; trial < 25; ++trial) {
    const auto l = random_driver(1000 + trial);
    const int lag = static_cast<int>(rng() % 4);
    const int year = 1985 + static_cast<int>(rng() % 11);
    PiecewiseLinearModel truth(ResponseKind::inflation, lag,
                               {{std::nullopt, slope(rng), intercept(rng)},
                                {Period::annual(year), slope(rng), intercept(rng)}});
    const auto y = predict_univariate(truth, l, Period::annual(1962), Period::annual(2010));
    const auto fit = fit_cumulative_lsq(l, y, Period::annual(year), lag);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(fit.piecewise().segments()[k].slope - truth.segments()[k].slope) < 1e-9);
      CHECK(std::abs(fit.piecewise().segments()[k].intercept - truth.segments()[k].intercept) < 1e-9);
    }
    const auto found = search(CalibrationConfig{Period::annual(1990), 5, {0, 4}}, l, y);
    CHECK(found.lag == lag);
    REQUIRE(found.break_year.has_value());
    CHECK(*found.break_year == Period::annual(year));
  }
}

TEST_CASE("calibration: affine equivariance") {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = random_driver(2000 + trial);
    const auto y = synthetic::add_noise(
        predict_univariate(synthetic::reference::dgdp(), l, Period::annual(1962), Period::annual(2010)), 0.005, rng);
    const auto base = fit_cumulative_lsq(l, y, Period::annual(1990), 1).piecewise();

    const double c = std::uniform_real_distribution<double>(-0.1, 0.1)(rng);
    const auto shifted = fit_cumulative_lsq(l, y + c, Period::annual(1990), 1).piecewise();
    double s = std::uniform_real_distribution<double>(0.2, 5.0)(rng);
    if (rng() % 2) s = -s;
    const auto scaled = fit_cumulative_lsq(GrowthRateSeries(s * l.series()), y, Period::annual(1990), 1).piecewise();
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& b = base.segments()[k];
      CHECK(std::abs(shifted.segments()[k].slope - b.slope) < 1e-9);
      CHECK(std::abs(shifted.segments()[k].intercept - (b.intercept + c)) < 1e-9);
      CHECK(std::abs(scaled.segments()[k].slope - b.slope / s) < 1e-9);
      CHECK(std::abs(scaled.segments()[k].intercept - b.intercept) < 1e-9);
    }
  }
}

TEST_CASE("calibration: noise accumulates like a random walk, a coefficient change linearly") {
  // Cumulative residual of the true model under noise: spread grows ~ sigma sqrt(T).
  // Cumulative residual of a model with an intercept error delta: grows as delta T.
  const auto l = random_driver(3000);
  const auto truth = synthetic::reference::dgdp().first_segment_only();
  const auto clean = predict_univariate(truth, l, Period::annual(1962), Period::annual(2010));
  const double sigma = 0.005;
  const double delta = 0.002;
  std::mt19937_64 rng(106);
  double noise_end_sq = 0.0;
  double noise_mid_sq = 0.0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    const auto r = cumulative_sum(synthetic::add_noise(clean, sigma, rng) - clean);
    noise_end_sq += r[r.size() - 1] * r[r.size() - 1];
    noise_mid_sq += r[r.size() / 4] * r[r.size() / 4];
  }
  const double T = double(clean.size());
  const double sd_end = std::sqrt(noise_end_sq / trials);
  const double sd_mid = std::sqrt(noise_mid_sq / trials);
  CHECK(sd_end == doctest::Approx(sigma * std::sqrt(T)).epsilon(0.1));
  CHECK(sd_end / sd_mid == doctest::Approx(std::sqrt(T / double(clean.size() / 4 + 1))).epsilon(0.1));

  const auto biased = cumulative_sum(clean - (clean + delta));
  CHECK(linear_trend_slope(biased) == doctest::Approx(-delta).epsilon(1e-9));
}

TEST_CASE("calibration: r2 on cumulative curves dominates r2 on dynamic curves") {
  std::mt19937_64 rng(107);
  int ordered = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const auto l = random_driver(4000 + i);
    const auto y = synthetic::add_noise(
        predict_univariate(synthetic::reference::cpi(), l, Period::annual(1962), Period::annual(2010)), 0.01, rng);
    const auto r = fit_cumulative_lsq(l, y, Period::annual(1991), 3);
    ordered += r.metrics.r2_cumulative >= r.metrics.r2_dynamic ? 1 : 0;
  }
  CHECK(ordered >= trials * 95 / 100);
}

TEST_CASE("unit-root tests: level accepts, first difference rejects") {
  std::mt19937_64 rng(108);
  const int trials = 300;
  int adf_ok = 0;
  int pp_ok = 0;
  for (int i = 0; i < trials; ++i) {
    const auto s = synthetic::random_walk(Period::annual(1800), 200, rng);
    const auto d = first_difference(s);
    const bool adf_level = adf_test(s, 1, TrendSpec::constant).reject_at().value_or(1.0) <= 0.05;
    const bool adf_diff = adf_test(d, 1, TrendSpec::constant).reject_at().value_or(1.0) <= 0.05;
    const bool pp_level = pp_test(s, TrendSpec::constant).reject_at().value_or(1.0) <= 0.05;
    const bool pp_diff = pp_test(d, TrendSpec::constant).reject_at().value_or(1.0) <= 0.05;
    adf_ok += (!adf_level && adf_diff) ? 1 : 0;
    pp_ok += (!pp_level && pp_diff) ? 1 : 0;
  }
  CHECK(adf_ok >= trials * 95 / 100);
  CHECK(pp_ok >= trials * 95 / 100);
}

TEST_CASE("johansen: trace statistics never increase with the rank hypothesis") {
  std::mt19937_64 rng(109);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 2;
    std::vector<Series> system;
    for (int j = 0; j < n; ++j) {
      system.push_back(i % 3 == 0 ? synthetic::ar1(Period::annual(1800), 120, 0.5, rng)
                                  : synthetic::random_walk(Period::annual(1800), 120, rng));
    }
    const auto trend = static_cast<TrendSpec>(i % 3);
    const auto r = johansen_trace(system, i % 3, trend);
    for (int k = 1; k < n; ++k) CHECK(r.trace_statistics[k] <= r.trace_statistics[k - 1]);
    for (double lambda : r.eigenvalues) {
      CHECK(lambda >= 0.0);
      CHECK(lambda < 1.0);
    }
    // The selected rank is the first hypothesis that is not rejected.
    int expected = n;
    for (int k = 0; k < n; ++k) {
      if (r.trace_statistics[k] <= r.critical_values[k].pct5) {
        expected = k;
        break;
      }
    }
    CHECK(r.selected_rank == expected);
  }
}
