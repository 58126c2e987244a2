#include <doctest.h>

#include <cmath>

#include "lfcurve/calibrate.hpp"
#include "lfcurve/synthetic.hpp"

using namespace lfcurve;
namespace ref = lfcurve::synthetic::reference;

namespace {

// Annual labour-force growth 1956..2010 from a fixed seed.
GrowthRateSeries driver(std::uint64_t seed = 7) {
  return log_growth_rate(synthetic::labour_force_levels(Period::annual(1955), 56, seed));
}

Series generate(const PiecewiseLinearModel& m, const GrowthRateSeries& l, int from = 1962, int to = 2010) {
  return predict_univariate(m, l, Period::annual(from), Period::annual(to));
}

}  // namespace

TEST_CASE("fit_cumulative_lsq recovers an exact linear response") {
  const auto l = driver();
  const auto truth = PiecewiseLinearModel::linear(ResponseKind::inflation, 0, 2.0, 0.01);
  const auto r = fit_cumulative_lsq(l, generate(truth, l), std::nullopt, 0);
  const auto& seg = r.piecewise().segments().at(0);
  CHECK(seg.slope == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(seg.intercept == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(r.metrics.rms_cumulative < 1e-12);
  CHECK(r.metrics.r2_dynamic == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_cumulative_lsq flags a zero-variance driver as degenerate") {
  const GrowthRateSeries zero(Series(Period::annual(1960), Series::Vector::Zero(40)));
  const Series response(Period::annual(1960), Series::Vector::Constant(40, 0.05));
  CHECK_THROWS_AS(fit_cumulative_lsq(zero, response, std::nullopt, 0), DegenerateFitError);
}

TEST_CASE("fit_cumulative_lsq recovers both published unemployment segments") {
  const auto l = driver();
  const auto r = fit_cumulative_lsq(l, generate(ref::unemployment(), l), Period::annual(1990), 0,
                                    ResponseKind::unemployment);
  const auto& segs = r.piecewise().segments();
  REQUIRE(segs.size() == 2);
  CHECK(std::abs(segs[0].slope - -2.574) < 1e-6);
  CHECK(std::abs(segs[0].intercept - 0.155) < 1e-6);
  CHECK(std::abs(segs[1].slope - -2.852) < 1e-6);
  CHECK(std::abs(segs[1].intercept - 0.122) < 1e-6);
  CHECK(segs[1].break_start == Period::annual(1990));
}

TEST_CASE("fit_cumulative_lsq segment length checks") {
  const auto l = driver();
  const auto y = generate(ref::dgdp(), l);
  CHECK_THROWS_AS(fit_cumulative_lsq(l, y, Period::annual(1963), 1), InsufficientDataError);
  CHECK_THROWS_AS(fit_cumulative_lsq(l, y, Period::annual(2009), 1), InsufficientDataError);
  CHECK_THROWS_AS(fit_cumulative_lsq(l, y, std::nullopt, -1), InvalidArgument);
}

TEST_CASE("cumulative residual is the difference of cumulative curves") {
  const auto l = driver(11);
  std::mt19937_64 rng(5);
  const auto y = synthetic::add_noise(generate(ref::dgdp(), l), 0.005, rng);
  const auto r = fit_cumulative_lsq(l, y, Period::annual(1990), 1);
  const auto co = cumulative_sum(r.observed);
  const auto cp = cumulative_sum(r.predicted);
  for (Eigen::Index k = 0; k < co.size(); ++k) {
    CHECK(r.residual_cumulative[k] == doctest::Approx(co[k] - cp[k]).epsilon(1e-12));
    CHECK(r.residual_dynamic[k] == doctest::Approx(r.observed[k] - r.predicted[k]).epsilon(1e-12));
  }
  CHECK(r.metrics.rms_cumulative >= 0.0);
  CHECK(r.metrics.r2_dynamic <= 1.0);
  CHECK(r.metrics.r2_cumulative <= 1.0);
}

TEST_CASE("search recovers the published deflator break and lag") {
  const auto l = driver();
  CalibrationConfig cfg{Period::annual(1991), 4, {0, 5}};
  const auto r = search(cfg, l, generate(ref::dgdp(), l));
  REQUIRE(r.break_year.has_value());
  CHECK(*r.break_year == Period::annual(1990));
  CHECK(r.lag == 1);
  CHECK(r.fits_evaluated == 6 * 10);
}

TEST_CASE("search prefers no break on break-free data") {
  const auto l = driver(3);
  const auto truth = PiecewiseLinearModel::linear(ResponseKind::inflation, 2, 1.7, -0.004);
  const auto y = generate(truth, l);
  CalibrationConfig cfg{Period::annual(1991), 4, {0, 5}};
  const auto r = search(cfg, l, y);
  CHECK_FALSE(r.break_year.has_value());
  CHECK(r.lag == 2);

  const auto split = fit_cumulative_lsq(l, y, Period::annual(1990), 2);
  const auto& segs = split.piecewise().segments();
  CHECK(std::abs(segs[0].slope - segs[1].slope) < 1e-6);
  CHECK(std::abs(segs[0].intercept - segs[1].intercept) < 1e-6);
}

TEST_CASE("search with a zero window and one lag evaluates one split plus the baseline") {
  const auto l = driver();
  CalibrationConfig cfg{Period::annual(1991), 0, {0, 0}};
  const auto r = search(cfg, l, generate(ref::unemployment(), l));
  CHECK(r.fits_evaluated == 2);
}

TEST_CASE("search errors") {
  const auto l = driver();
  const auto y = generate(ref::dgdp(), l);
  CHECK_THROWS_AS(search(CalibrationConfig{Period::annual(1966), 4, {0, 5}}, l, y), CoverageError);
  CHECK_THROWS_AS(search(CalibrationConfig{Period::annual(1991), -1, {0, 5}}, l, y), InvalidArgument);
  CHECK_THROWS_AS(search(CalibrationConfig{Period::annual(1991), 4, {3, 1}}, l, y), InvalidArgument);
  const GrowthRateSeries zero(Series(Period::annual(1956), Series::Vector::Zero(55)));
  CHECK_THROWS_AS(search(CalibrationConfig{Period::annual(1991), 2, {0, 1}}, zero, y), DegenerateFitError);
}

TEST_CASE("fit_generalized recovers the published deflator model") {
  const auto l = driver();
  std::mt19937_64 rng(17);
  const Series u = synthetic::add_noise(generate(ref::unemployment(), l), 0.004, rng);
  const auto truth = ref::generalized_dgdp();
  const Series pi = predict_generalized(truth, l, u, Period::annual(1964), Period::annual(2010));
  const auto r = fit_generalized(l, u, pi, 1, 1);
  const auto& g = r.generalized();
  CHECK(std::abs(g.c1 - 3.70) < 1e-6);
  CHECK(std::abs(g.c2 - 0.55) < 1e-6);
  CHECK(std::abs(g.c3 - -0.076) < 1e-6);
  CHECK(r.metrics.rms_dynamic <= 1e-9);
  CHECK(r.metrics.rms_cumulative <= 1e-9);
}

TEST_CASE("fit_generalized with u identically zero matches the univariate fit") {
  const auto l = driver(23);
  std::mt19937_64 rng(29);
  const auto y = synthetic::add_noise(generate(PiecewiseLinearModel::linear(ResponseKind::inflation, 1, 2.2, 0.003), l),
                                      0.004, rng);
  const Series u0(Period::annual(1950), Series::Vector::Zero(70));
  const auto g = fit_generalized(l, u0, y, 1, 1).generalized();
  const auto uni = fit_cumulative_lsq(l, y, std::nullopt, 1).piecewise().segments().at(0);
  CHECK(std::abs(g.c1 - uni.slope) < 1e-9);
  CHECK(std::abs(g.c3 - uni.intercept) < 1e-9);
  CHECK(g.c2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit_generalized reaches zero residual when pi and u share the driver") {
  // pi = a1 l + a2 and u = b1 l + b2 at the same lag: every (c1, c2, c3) on a line fits.
  const auto l = driver(31);
  const auto m_pi = PiecewiseLinearModel::linear(ResponseKind::inflation, 2, 2.682, -0.0035);
  const auto m_u = PiecewiseLinearModel::linear(ResponseKind::unemployment, 2, -2.574, 0.155);
  const auto pi = generate(m_pi, l);
  const auto u = generate(m_u, l, 1960, 2010);
  const auto r = fit_generalized(l, u, pi, 2, 0);
  CHECK(r.metrics.rms_dynamic <= 1e-9);
  CHECK(r.metrics.rms_cumulative <= 1e-9);
}

TEST_CASE("fit_generalized errors") {
  const auto l = driver();
  const Series u(Period::annual(2005), {0.1, 0.1, 0.1});
  const Series pi(Period::annual(2005), {0.02, 0.02, 0.02});
  CHECK_THROWS_AS(fit_generalized(l, u, pi, 1, 1), InsufficientDataError);
  CHECK_THROWS_AS(fit_generalized(l, u, pi, 1, -1), InvalidArgument);
}

TEST_CASE("r_squared examples") {
  const Series obs(Period::annual(2000), {1.0, 2.0, 3.0});
  CHECK(r_squared(obs, obs) == 1.0);
  CHECK(r_squared(obs, Series(Period::annual(2000), {2.0, 2.0, 2.0})) == doctest::Approx(0.0));
  CHECK(r_squared(obs, Series(Period::annual(2000), {1.0, 2.0, 4.0})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r_squared(obs, Series(Period::annual(2000), {3.0, 2.0, 1.0})) < 0.0);
  CHECK_THROWS_AS(r_squared(Series(Period::annual(2000), {1.0, 1.0}), Series(Period::annual(2000), {1.0, 2.0})),
                  DomainError);
}

TEST_CASE("rmsfe examples") {
  const Series obs(Period::annual(2000), {0.02, 0.04});
  CHECK(rmsfe(obs, obs, 1) == 0.0);
  CHECK(rmsfe(obs, obs + 0.01, 1) == doctest::Approx(0.01).epsilon(1e-12));
  const double expected = std::sqrt((0.0001 + 0.0004) / 2.0);
  CHECK(rmsfe(obs, Series(Period::annual(2000), {0.03, 0.02}), 1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(expected - 0.01581) < 1e-5);
  CHECK_THROWS_AS(rmsfe(obs, Series(Period::annual(2010), {0.0}), 1), CoverageError);
}

TEST_CASE("naive_forecast examples") {
  const Series flat(Period::annual(2000), {0.03, 0.03, 0.03, 0.03});
  for (int h = 1; h <= 3; ++h) CHECK(rmsfe(flat, naive_forecast(flat, h), h) == 0.0);
  const auto f = naive_forecast(Series(Period::annual(2000), {1.0, 2.0, 3.0}), 1);
  CHECK(f.start() == Period::annual(2001));
  CHECK(f.size() == 2);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == 2.0);
  CHECK_THROWS_AS(naive_forecast(flat, 4), InsufficientDataError);
  CHECK_THROWS_AS(naive_forecast(flat, 0), InvalidArgument);
}

TEST_CASE("evaluate_forecast requires a genuine forecast") {
  const Series obs(Period::annual(2000), {1.0, 2.0, 3.0, 4.0, 5.0});
  CHECK_THROWS_AS(evaluate_forecast(obs, obs, 1, 3), InvalidArgument);
  const auto e = evaluate_forecast(obs, obs, 3, 3);
  CHECK(e.model_rmsfe == 0.0);
  CHECK(e.naive_rmsfe == doctest::Approx(3.0));
  CHECK(e.from == Period::annual(2003));
  CHECK(e.to == Period::annual(2004));
}

TEST_CASE("smoothing is applied before fitting") {
  const auto l = driver();
  CalibrationConfig cfg{Period::annual(1991), 2, {0, 2}};
  cfg.smoothing = 3;
  const auto r = search(cfg, l, generate(ref::dgdp(), l));
  CHECK(r.observed.start() >= Period::annual(1964));
  CHECK_THROWS_AS((CalibrationConfig{Period::annual(1991), 2, {0, 2}, Metric::l2, 0}.validate()), InvalidArgument);
}

TEST_CASE("linear_trend_slope") {
  Series::Vector v(10);
  for (Eigen::Index k = 0; k < 10; ++k) v[k] = 3.0 - 0.25 * double(k);
  CHECK(linear_trend_slope(Series(Period::annual(2000), v)) == doctest::Approx(-0.25).epsilon(1e-12));
}
