#include <doctest.h>

#include <cmath>

#include "lfcurve/series.hpp"

using namespace lfcurve;

namespace {

Series annual(int year, std::initializer_list<double> v) { return Series(Period::annual(year), v); }

void check_values(const Series& s, std::initializer_list<double> expected, double tol = 1e-12) {
  REQUIRE(s.size() == static_cast<Eigen::Index>(expected.size()));
  Eigen::Index k = 0;
  for (double e : expected) {
    CHECK(s[k] == doctest::Approx(e).epsilon(tol));
    ++k;
  }
}

}  // namespace

TEST_CASE("period parsing, ordering and arithmetic") {
  CHECK(Period::parse("1962") == Period::annual(1962));
  CHECK(Period::parse("1970Q3") == Period::quarterly(1970, 3));
  CHECK(Period::quarterly(1970, 4).advanced(1) == Period::quarterly(1971, 1));
  CHECK(Period::quarterly(1970, 1).advanced(-1) == Period::quarterly(1969, 4));
  CHECK(periods_between(Period::annual(1962), Period::annual(2010)) == 48);
  CHECK(Period::annual(1990) < Period::annual(1991));
  CHECK(Period::quarterly(1989, 1).to_string() == "1989Q1");
  CHECK_THROWS_AS((void)(Period::annual(1990) < Period::quarterly(1990, 1)), FrequencyMismatchError);
  CHECK_THROWS_AS(Period::parse("1970Q5"), ParseError);
  CHECK_THROWS_AS(Period::parse("19x0"), ParseError);
}

TEST_CASE("series rejects non-finite values") {
  CHECK_THROWS_AS(annual(1962, {1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(annual(1962, {1.0, INFINITY}), DomainError);
}

TEST_CASE("log_growth_rate examples") {
  SUBCASE("constant levels give zero growth") { check_values(log_growth_rate(annual(1962, {100, 100, 100})).series(), {0, 0}); }
  SUBCASE("exact exponential growth") {
    const auto g = log_growth_rate(annual(1962, {100, 100 * std::exp(0.01), 100 * std::exp(0.02)}));
    check_values(g.series(), {0.01, 0.01});
    CHECK(g.start() == Period::annual(1963));
  }
  SUBCASE("ln(1.02)") {
    // 50-digit reference value of ln(1.02).
    const double ln_102 = 0.019802627296179713026029066885658336499076739007;
    CHECK(log_growth_rate(annual(1962, {100, 102})).series()[0] == doctest::Approx(ln_102).epsilon(1e-15));
  }
  SUBCASE("quarterly rates are annualized") {
    const Series q(Period::quarterly(1970, 1), {100.0, 100.0 * std::exp(0.005)});
    CHECK(log_growth_rate(q).series()[0] == doctest::Approx(0.02).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(log_growth_rate(annual(1962, {100})), InsufficientDataError);
    try {
      (void)log_growth_rate(annual(1962, {100, 0, 3}));
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("1963") != std::string::npos);
    }
  }
}

TEST_CASE("cumulative_sum examples") {
  check_values(cumulative_sum(annual(1962, {1, 2, 3})), {1, 3, 6});
  CHECK(cumulative_sum(Series(Period::annual(1962), Series::Vector())).empty());
  check_values(cumulative_sum(annual(1962, {0.02, -0.01, 0.03})), {0.02, 0.01, 0.04}, 1e-15);
}

TEST_CASE("moving_average examples") {
  const auto ma = moving_average(annual(1962, {1, 2, 3, 4}), 2);
  check_values(ma, {1.5, 2.5, 3.5});
  CHECK(ma.start() == Period::annual(1963));
  const auto s = annual(1962, {0.3, -0.2, 0.7});
  CHECK(moving_average(s, 1) == s);
  const auto ma8 = moving_average(annual(1962, {1, 1, 1, 1, 1, 1, 1, 1, 2}), 8);
  check_values(ma8, {1, 1.125});
  CHECK(ma8.start() == Period::annual(1969));
  CHECK_THROWS_AS(moving_average(s, 4), InsufficientDataError);
  CHECK_THROWS_AS(moving_average(s, 0), InvalidArgument);
}

TEST_CASE("lag_shift examples") {
  const auto s = annual(1962, {1, 2, 3});
  CHECK(lag_shift(s, 0) == s);
  const auto s1 = lag_shift(s, 1);
  CHECK(s1.start() == Period::annual(1963));
  CHECK(s1.values() == s.values());
  const Series q(Period::quarterly(1970, 1), {1.0, 2.0});
  CHECK(lag_shift(q, 8).start() == Period::quarterly(1972, 1));
  CHECK_THROWS_AS(lag_shift(s, -1), InvalidArgument);
}

TEST_CASE("align examples") {
  Series::Vector va = Series::Vector::LinSpaced(48, 0.0, 47.0);  // 1962..2009
  Series::Vector vb = Series::Vector::LinSpaced(47, 100.0, 146.0);  // 1964..2010
  const Series a(Period::annual(1962), va);
  const Series b(Period::annual(1964), vb);
  const auto [x, y] = align(a, b);
  CHECK(x.start() == Period::annual(1964));
  CHECK(x.end() == Period::annual(2009));
  CHECK(y.start() == Period::annual(1964));
  CHECK(y.end() == Period::annual(2009));
  CHECK(x[0] == 2.0);
  CHECK(y[0] == 100.0);

  const auto [p, q] = align(a, a);
  CHECK(p == a);
  CHECK(q == a);

  const auto [e1, e2] = align(annual(1962, {1, 2}), annual(1980, {3, 4}));
  CHECK(e1.empty());
  CHECK(e2.empty());

  CHECK_THROWS_AS(align(a, Series(Period::quarterly(1970, 1), {1.0})), FrequencyMismatchError);
}

TEST_CASE("first_difference examples") {
  const auto d = first_difference(annual(1962, {1, 3, 6}));
  check_values(d, {2, 3});
  CHECK(d.start() == Period::annual(1963));
  check_values(first_difference(annual(1962, {4, 4, 4, 4})), {0, 0, 0});
  const auto s = annual(1962, {0.5, -1.25, 2.0, 0.125});
  check_values(first_difference(cumulative_sum(s)), {-1.25, 2.0, 0.125});
  CHECK_THROWS_AS(first_difference(annual(1962, {1})), InsufficientDataError);
}

TEST_CASE("slice and index helpers") {
  const auto s = annual(1962, {1, 2, 3, 4, 5});
  const auto t = s.slice(Period::annual(1963), Period::annual(1965));
  check_values(t, {2, 3, 4});
  CHECK(s.at(Period::annual(1966)) == 5.0);
  CHECK_THROWS_AS((void)s.slice(Period::annual(1960), Period::annual(1963)), CoverageError);
  CHECK_THROWS_AS((void)s.at(Period::annual(1970)), CoverageError);
}
