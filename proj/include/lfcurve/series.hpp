#ifndef LFCURVE_SERIES_HPP
#define LFCURVE_SERIES_HPP

// Frequency-aware time series and the deterministic transforms built on it.
//
// A series is a start period plus a contiguous vector of finite values; value k
// belongs to start advanced by k periods. Every transform here is a pure free
// function returning a new series.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfcurve/errors.hpp"

namespace lfcurve {

enum class Frequency { annual, quarterly };

inline const char* to_string(Frequency f) {
  return f == Frequency::annual ? "annual" : "quarterly";
}

/// Periods per year: 1 for annual data, 4 for quarterly.
inline int periods_per_year(Frequency f) { return f == Frequency::annual ? 1 : 4; }

Frequency parse_frequency(std::string_view text);

/// A year, or a year and quarter. Ordered only against periods of the same frequency.
class Period {
 public:
  static Period annual(int year) { return Period(year, 0); }
  static Period quarterly(int year, int quarter) {
    if (quarter < 1 || quarter > 4) {
      throw InvalidArgument("quarter must be in 1..4, got " + std::to_string(quarter));
    }
    return Period(year, quarter);
  }
  /// Inverse of ordinal().
  static Period from_ordinal(std::int64_t ordinal, Frequency f) {
    if (f == Frequency::annual) return annual(static_cast<int>(ordinal));
    const auto year = static_cast<int>(ordinal >= 0 ? ordinal / 4 : (ordinal - 3) / 4);
    return quarterly(year, static_cast<int>(ordinal - std::int64_t{year} * 4) + 1);
  }
  /// Parses "1962" (annual) or "1962Q1" (quarterly).
  static Period parse(std::string_view text);

  [[nodiscard]] int year() const noexcept { return year_; }
  [[nodiscard]] std::optional<int> quarter() const noexcept {
    return quarter_ == 0 ? std::nullopt : std::optional<int>(quarter_);
  }
  [[nodiscard]] Frequency frequency() const noexcept {
    return quarter_ == 0 ? Frequency::annual : Frequency::quarterly;
  }
  /// Position on the frequency's integer time line (year, or 4*year + quarter - 1).
  [[nodiscard]] std::int64_t ordinal() const noexcept {
    return quarter_ == 0 ? std::int64_t{year_} : std::int64_t{year_} * 4 + (quarter_ - 1);
  }
  [[nodiscard]] Period advanced(std::int64_t k) const { return from_ordinal(ordinal() + k, frequency()); }
  /// Mid-period position in fractional years; used for chart axes.
  [[nodiscard]] double as_year_fraction() const noexcept {
    return quarter_ == 0 ? static_cast<double>(year_) : year_ + (quarter_ - 1) / 4.0;
  }
  [[nodiscard]] std::string to_string() const {
    return quarter_ == 0 ? std::to_string(year_)
                         : std::to_string(year_) + "Q" + std::to_string(quarter_);
  }

  friend bool operator==(const Period&, const Period&) = default;
  friend std::strong_ordering operator<=>(const Period& a, const Period& b) {
    require_same_frequency(a, b);
    return a.ordinal() <=> b.ordinal();
  }

  static void require_same_frequency(const Period& a, const Period& b) {
    if (a.frequency() != b.frequency()) {
      throw FrequencyMismatchError("cannot compare " + a.to_string() + " with " + b.to_string());
    }
  }

 private:
  Period(int year, int quarter) : year_(year), quarter_(quarter) {}

  int year_;
  int quarter_;  // 0 for annual
};

/// Signed number of periods from a to b.
inline std::int64_t periods_between(const Period& a, const Period& b) {
  Period::require_same_frequency(a, b);
  return b.ordinal() - a.ordinal();
}

/// Contiguous, finite-valued time series.
template <typename Scalar>
class BasicSeries {
 public:
  using Scalar_t = Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicSeries(Period start, Vector values) : start_(start), values_(std::move(values)) {
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(static_cast<double>(values_[k]))) {
        throw DomainError("non-finite value at " + start_.advanced(k).to_string());
      }
    }
  }
  BasicSeries(Period start, const std::vector<Scalar>& values)
      : BasicSeries(start, Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()))) {}
  BasicSeries(Period start, std::initializer_list<Scalar> values)
      : BasicSeries(start, std::vector<Scalar>(values)) {}

  [[nodiscard]] Frequency frequency() const noexcept { return start_.frequency(); }
  [[nodiscard]] const Period& start() const noexcept { return start_; }
  /// Last covered period. For an empty series this is the period before start.
  [[nodiscard]] Period end() const { return start_.advanced(size() - 1); }
  [[nodiscard]] Eigen::Index size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.size() == 0; }
  [[nodiscard]] const Vector& values() const noexcept { return values_; }
  [[nodiscard]] Scalar operator[](Eigen::Index k) const { return values_[k]; }
  [[nodiscard]] Period period_at(Eigen::Index k) const { return start_.advanced(k); }

  [[nodiscard]] bool covers(const Period& p) const {
    if (p.frequency() != frequency() || empty()) return false;
    const auto k = periods_between(start_, p);
    return k >= 0 && k < size();
  }
  [[nodiscard]] Eigen::Index index_of(const Period& p) const {
    if (!covers(p)) throw CoverageError("period " + p.to_string() + " not covered by series " + span_string());
    return static_cast<Eigen::Index>(periods_between(start_, p));
  }
  [[nodiscard]] Scalar at(const Period& p) const { return values_[index_of(p)]; }

  /// Inclusive sub-range; throws CoverageError when [from, to] is not inside the series.
  [[nodiscard]] BasicSeries slice(const Period& from, const Period& to) const {
    if (to < from) return BasicSeries(from, Vector());
    const auto first = index_of(from);
    const auto last = index_of(to);
    return BasicSeries(from, Vector(values_.segment(first, last - first + 1)));
  }

  [[nodiscard]] std::string span_string() const {
    if (empty()) return "[empty from " + start_.to_string() + "]";
    return "[" + start_.to_string() + ".." + end().to_string() + "]";
  }

  friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
    return a.start_ == b.start_ && a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  Period start_;
  Vector values_;
};

using Series = BasicSeries<double>;

/// Series of log growth rates of a level series (per year). Kept distinct from a
/// plain series so that model drivers cannot be confused with responses.
template <typename Scalar>
class BasicGrowthRateSeries {
 public:
  explicit BasicGrowthRateSeries(BasicSeries<Scalar> rates) : rates_(std::move(rates)) {}

  [[nodiscard]] const BasicSeries<Scalar>& series() const noexcept { return rates_; }
  [[nodiscard]] Frequency frequency() const noexcept { return rates_.frequency(); }
  [[nodiscard]] const Period& start() const noexcept { return rates_.start(); }
  [[nodiscard]] Period end() const { return rates_.end(); }
  [[nodiscard]] Eigen::Index size() const noexcept { return rates_.size(); }

 private:
  BasicSeries<Scalar> rates_;
};

using GrowthRateSeries = BasicGrowthRateSeries<double>;

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// Backward log difference ln(X_t) - ln(X_{t-1}); quarterly rates are annualized (x4).
template <typename Scalar>
BasicGrowthRateSeries<Scalar> log_growth_rate(const BasicSeries<Scalar>& levels) {
  if (levels.size() < 2) {
    throw InsufficientDataError("log growth rate needs at least 2 levels, got " +
                                std::to_string(levels.size()));
  }
  for (Eigen::Index k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > Scalar(0))) {
      throw DomainError("non-positive level at " + levels.period_at(k).to_string());
    }
  }
  const auto n = levels.size();
  const Scalar annualize = Scalar(periods_per_year(levels.frequency()));
  typename BasicSeries<Scalar>::Vector logs = levels.values().array().log();
  typename BasicSeries<Scalar>::Vector rates = annualize * (logs.tail(n - 1) - logs.head(n - 1));
  return BasicGrowthRateSeries<Scalar>(BasicSeries<Scalar>(levels.start().advanced(1), std::move(rates)));
}

/// Running sum anchored at the first element.
template <typename Scalar>
BasicSeries<Scalar> cumulative_sum(const BasicSeries<Scalar>& s) {
  typename BasicSeries<Scalar>::Vector out(s.size());
  Scalar acc(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    acc += s[k];
    out[k] = acc;
  }
  return BasicSeries<Scalar>(s.start(), std::move(out));
}

/// Trailing k-period mean; the first output belongs to the k-th input period.
template <typename Scalar>
BasicSeries<Scalar> moving_average(const BasicSeries<Scalar>& s, int k) {
  if (k < 1) throw InvalidArgument("moving average window must be >= 1");
  if (s.size() < k) {
    throw InsufficientDataError("moving average window " + std::to_string(k) + " exceeds series length " +
                                std::to_string(s.size()));
  }
  if (k == 1) return s;
  const auto n = s.size() - k + 1;
  typename BasicSeries<Scalar>::Vector out(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    out[t] = s.values().segment(t, k).sum() / Scalar(k);
  }
  return BasicSeries<Scalar>(s.start().advanced(k - 1), std::move(out));
}

/// Same values, start moved k periods later: after alignment, response at t pairs with driver at t-k.
template <typename Scalar>
BasicSeries<Scalar> lag_shift(const BasicSeries<Scalar>& s, int k) {
  if (k < 0) throw InvalidArgument("lag must be non-negative");
  return BasicSeries<Scalar>(s.start().advanced(k), s.values());
}

/// Trims both series to their common span; two empty series when they do not overlap.
template <typename Scalar>
std::pair<BasicSeries<Scalar>, BasicSeries<Scalar>> align(const BasicSeries<Scalar>& a, const BasicSeries<Scalar>& b) {
  if (a.frequency() != b.frequency()) {
    throw FrequencyMismatchError(std::string("cannot align ") + to_string(a.frequency()) + " with " +
                                 to_string(b.frequency()) + " series");
  }
  const Period first = std::max(a.start(), b.start());
  if (a.empty() || b.empty()) {
    return {BasicSeries<Scalar>(first, typename BasicSeries<Scalar>::Vector()),
            BasicSeries<Scalar>(first, typename BasicSeries<Scalar>::Vector())};
  }
  const Period last = std::min(a.end(), b.end());
  if (last < first) {
    return {BasicSeries<Scalar>(first, typename BasicSeries<Scalar>::Vector()),
            BasicSeries<Scalar>(first, typename BasicSeries<Scalar>::Vector())};
  }
  return {a.slice(first, last), b.slice(first, last)};
}

template <typename Scalar>
BasicSeries<Scalar> first_difference(const BasicSeries<Scalar>& s) {
  if (s.size() < 2) {
    throw InsufficientDataError("first difference needs at least 2 values, got " + std::to_string(s.size()));
  }
  const auto n = s.size();
  typename BasicSeries<Scalar>::Vector out = s.values().tail(n - 1) - s.values().head(n - 1);
  return BasicSeries<Scalar>(s.start().advanced(1), std::move(out));
}

// Elementwise arithmetic over identical spans.

template <typename Scalar>
void require_same_span(const BasicSeries<Scalar>& a, const BasicSeries<Scalar>& b) {
  if (a.frequency() != b.frequency()) throw FrequencyMismatchError("series frequencies differ");
  if (a.size() != b.size() || (a.size() > 0 && a.start() != b.start())) {
    throw CoverageError("series spans differ: " + a.span_string() + " vs " + b.span_string());
  }
}

template <typename Scalar>
BasicSeries<Scalar> operator+(const BasicSeries<Scalar>& a, const BasicSeries<Scalar>& b) {
  require_same_span(a, b);
  return BasicSeries<Scalar>(a.start(), typename BasicSeries<Scalar>::Vector(a.values() + b.values()));
}

template <typename Scalar>
BasicSeries<Scalar> operator-(const BasicSeries<Scalar>& a, const BasicSeries<Scalar>& b) {
  require_same_span(a, b);
  return BasicSeries<Scalar>(a.start(), typename BasicSeries<Scalar>::Vector(a.values() - b.values()));
}

template <typename Scalar>
BasicSeries<Scalar> operator*(Scalar c, const BasicSeries<Scalar>& s) {
  return BasicSeries<Scalar>(s.start(), typename BasicSeries<Scalar>::Vector(c * s.values()));
}

template <typename Scalar>
BasicSeries<Scalar> operator+(const BasicSeries<Scalar>& s, Scalar c) {
  return BasicSeries<Scalar>(s.start(), typename BasicSeries<Scalar>::Vector(s.values().array() + c));
}

}  // namespace lfcurve

#endif  // LFCURVE_SERIES_HPP
