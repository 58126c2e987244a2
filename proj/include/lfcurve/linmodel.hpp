#ifndef LFCURVE_LINMODEL_HPP
#define LFCURVE_LINMODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfcurve/series.hpp"

namespace lfcurve {

enum class ResponseKind { inflation, unemployment };

const char* to_string(ResponseKind kind);
ResponseKind parse_response_kind(std::string_view text);

/// One regime of a piecewise model. The first segment has no break_start.
struct Segment {
  std::optional<Period> break_start;
  double slope = 0.0;
  double intercept = 0.0;
};

/// response_t = slope(t) * l_{t-lag} + intercept(t), where the segment for t is the
/// last one whose break_start <= t.
class PiecewiseLinearModel {
 public:
  PiecewiseLinearModel(ResponseKind kind, int lag, std::vector<Segment> segments);

  /// Single-regime model.
  static PiecewiseLinearModel linear(ResponseKind kind, int lag, double slope, double intercept) {
    return PiecewiseLinearModel(kind, lag, {Segment{std::nullopt, slope, intercept}});
  }

  [[nodiscard]] ResponseKind response_kind() const noexcept { return kind_; }
  [[nodiscard]] int lag() const noexcept { return lag_; }
  [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }
  [[nodiscard]] std::vector<Period> breaks() const;

  [[nodiscard]] const Segment& segment_for(const Period& t) const;
  [[nodiscard]] std::size_t segment_index(const Period& t) const;

  /// The first regime extended over all time (the counterfactual "no policy change" model).
  [[nodiscard]] PiecewiseLinearModel first_segment_only() const;

 private:
  ResponseKind kind_;
  int lag_;
  std::vector<Segment> segments_;
};

/// pi_t = c1 * l_{t - driver_lag} + c2 * u_{t - unemployment_lag} + c3.
///
/// unemployment_lag is the backward shift applied to u, i.e. i - j in the
/// u_{t+j-i} form. Forward shifts (j > i) are not representable.
struct GeneralizedModel {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  int driver_lag = 0;
  int unemployment_lag = 0;

  GeneralizedModel() = default;
  GeneralizedModel(double c1_, double c2_, double c3_, int driver_lag_, int unemployment_lag_);
};

/// Observed minus counterfactual prediction, with its mean over a reporting window.
struct GapSeries {
  Series gap;
  double window_mean;
  Period window_from;
  Period window_to;
};

/// Predicts over every period t for which l_{t-lag} exists.
Series predict_univariate(const PiecewiseLinearModel& m, const GrowthRateSeries& l);
/// Predicts over [from, to]; throws CoverageError if l does not reach back far enough.
Series predict_univariate(const PiecewiseLinearModel& m, const GrowthRateSeries& l, const Period& from,
                          const Period& to);

/// Predicts over the span where both lagged l and lagged u exist.
Series predict_generalized(const GeneralizedModel& g, const GrowthRateSeries& l, const Series& u);
Series predict_generalized(const GeneralizedModel& g, const GrowthRateSeries& l, const Series& u,
                           const Period& from, const Period& to);

/// pi_t + u_t from two univariate models sharing the same driver.
Series balance_sum(const PiecewiseLinearModel& m_pi, const PiecewiseLinearModel& m_u, const GrowthRateSeries& l);

/// The model is evaluated exactly as given; pass first_segment_only() for the
/// pre-break counterfactual.
GapSeries counterfactual_gap(const Series& observed, const PiecewiseLinearModel& counterfactual_model,
                             const GrowthRateSeries& l, const Period& window_from, const Period& window_to);

// Plain-text key/value form:
//   response_kind = inflation
//   lag = 1
//   segment = ,2.453,0.0052
//   segment = 1990,0.842,-0.0085
std::string to_text(const PiecewiseLinearModel& m);
PiecewiseLinearModel parse_model_text(std::string_view text);

}  // namespace lfcurve

#endif  // LFCURVE_LINMODEL_HPP
