#include "lfcurve/linmodel.hpp"

#include <sstream>

#include "lfcurve/format.hpp"

namespace lfcurve {

const char* to_string(ResponseKind kind) {
  return kind == ResponseKind::inflation ? "inflation" : "unemployment";
}

ResponseKind parse_response_kind(std::string_view text) {
  if (text == "inflation") return ResponseKind::inflation;
  if (text == "unemployment") return ResponseKind::unemployment;
  throw InvalidArgument("unknown response kind '" + std::string(text) + "'");
}

PiecewiseLinearModel::PiecewiseLinearModel(ResponseKind kind, int lag, std::vector<Segment> segments)
    : kind_(kind), lag_(lag), segments_(std::move(segments)) {
  if (lag_ < 0) throw InvalidArgument("model lag must be non-negative");
  if (segments_.empty()) throw InvalidArgument("model needs at least one segment");
  if (segments_.front().break_start) throw InvalidArgument("first segment must not carry a break period");
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    if (!segments_[k].break_start) throw InvalidArgument("segment " + std::to_string(k) + " lacks a break period");
    if (k >= 2 && !(*segments_[k - 1].break_start < *segments_[k].break_start)) {
      throw InvalidArgument("break periods must be strictly increasing");
    }
  }
  for (const auto& s : segments_) {
    if (!std::isfinite(s.slope) || !std::isfinite(s.intercept)) throw DomainError("non-finite model coefficient");
  }
}

std::vector<Period> PiecewiseLinearModel::breaks() const {
  std::vector<Period> out;
  for (std::size_t k = 1; k < segments_.size(); ++k) out.push_back(*segments_[k].break_start);
  return out;
}

std::size_t PiecewiseLinearModel::segment_index(const Period& t) const {
  std::size_t idx = 0;
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    if (*segments_[k].break_start <= t) idx = k;
  }
  return idx;
}

const Segment& PiecewiseLinearModel::segment_for(const Period& t) const { return segments_[segment_index(t)]; }

PiecewiseLinearModel PiecewiseLinearModel::first_segment_only() const {
  return PiecewiseLinearModel(kind_, lag_, {segments_.front()});
}

GeneralizedModel::GeneralizedModel(double c1_, double c2_, double c3_, int driver_lag_, int unemployment_lag_)
    : c1(c1_), c2(c2_), c3(c3_), driver_lag(driver_lag_), unemployment_lag(unemployment_lag_) {
  if (driver_lag < 0) throw InvalidArgument("driver lag must be non-negative");
  if (unemployment_lag < 0) {
    throw InvalidArgument("unemployment shift must be a backward lag (forward shifts are not supported)");
  }
}

Series predict_univariate(const PiecewiseLinearModel& m, const GrowthRateSeries& l, const Period& from,
                          const Period& to) {
  const Series lagged = lag_shift(l.series(), m.lag());
  if (to < from) return Series(from, Series::Vector());
  if (!lagged.covers(from) || !lagged.covers(to)) {
    throw CoverageError("driver " + l.series().span_string() + " with lag " + std::to_string(m.lag()) +
                        " does not cover " + from.to_string() + ".." + to.to_string());
  }
  const auto n = periods_between(from, to) + 1;
  const auto offset = lagged.index_of(from);
  Series::Vector out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& seg = m.segment_for(from.advanced(k));
    out[k] = seg.slope * lagged[offset + k] + seg.intercept;
  }
  return Series(from, std::move(out));
}

Series predict_univariate(const PiecewiseLinearModel& m, const GrowthRateSeries& l) {
  if (l.size() == 0) throw CoverageError("empty driver series");
  const Series lagged = lag_shift(l.series(), m.lag());
  return predict_univariate(m, l, lagged.start(), lagged.end());
}

Series predict_generalized(const GeneralizedModel& g, const GrowthRateSeries& l, const Series& u,
                           const Period& from, const Period& to) {
  const Series l_lagged = lag_shift(l.series(), g.driver_lag);
  const Series u_lagged = lag_shift(u, g.unemployment_lag);
  if (to < from) return Series(from, Series::Vector());
  if (!l_lagged.covers(from) || !l_lagged.covers(to) || !u_lagged.covers(from) || !u_lagged.covers(to)) {
    throw CoverageError("lagged driver/unemployment do not cover " + from.to_string() + ".." + to.to_string());
  }
  const auto n = periods_between(from, to) + 1;
  const auto li = l_lagged.index_of(from);
  const auto ui = u_lagged.index_of(from);
  Series::Vector out =
      g.c1 * l_lagged.values().segment(li, n) + g.c2 * u_lagged.values().segment(ui, n);
  out.array() += g.c3;
  return Series(from, std::move(out));
}

Series predict_generalized(const GeneralizedModel& g, const GrowthRateSeries& l, const Series& u) {
  auto [lp, up] = align(lag_shift(l.series(), g.driver_lag), lag_shift(u, g.unemployment_lag));
  if (lp.empty()) throw CoverageError("lagged driver and unemployment series do not overlap");
  return predict_generalized(g, l, u, lp.start(), lp.end());
}

Series balance_sum(const PiecewiseLinearModel& m_pi, const PiecewiseLinearModel& m_u, const GrowthRateSeries& l) {
  auto [pi, u] = align(predict_univariate(m_pi, l), predict_univariate(m_u, l));
  if (pi.empty()) throw CoverageError("no shared coverage for the two model lags");
  return pi + u;
}

GapSeries counterfactual_gap(const Series& observed, const PiecewiseLinearModel& counterfactual_model,
                             const GrowthRateSeries& l, const Period& window_from, const Period& window_to) {
  auto [obs, pred] = align(observed, predict_univariate(counterfactual_model, l));
  if (obs.empty()) throw CoverageError("observed series and counterfactual prediction do not overlap");
  Series gap = obs - pred;

  const Period from = std::max(window_from, gap.start());
  const Period to = std::min(window_to, gap.end());
  if (to < from) {
    throw CoverageError("reporting window " + window_from.to_string() + ".." + window_to.to_string() +
                        " is empty after alignment with " + gap.span_string());
  }
  const double mean = gap.slice(from, to).values().mean();
  return GapSeries{std::move(gap), mean, from, to};
}

std::string to_text(const PiecewiseLinearModel& m) {
  std::ostringstream out;
  out << "response_kind = " << to_string(m.response_kind()) << "\n";
  out << "lag = " << m.lag() << "\n";
  for (const auto& s : m.segments()) {
    out << "segment = " << (s.break_start ? s.break_start->to_string() : "") << ","
        << format_shortest(s.slope) << "," << format_shortest(s.intercept) << "\n";
  }
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

PiecewiseLinearModel parse_model_text(std::string_view text) {
  std::optional<ResponseKind> kind;
  std::optional<int> lag;
  std::vector<Segment> segments;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "response_kind") {
        kind = parse_response_kind(value);
      } else if (key == "lag") {
        lag = static_cast<int>(parse_double(value));
        if (*lag != parse_double(value)) throw ParseError("lag must be an integer");
      } else if (key == "segment") {
        const auto c1 = value.find(',');
        const auto c2 = value.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw ParseError("segment needs break,slope,intercept");
        const std::string brk = trim(std::string_view(value).substr(0, c1));
        Segment seg;
        if (!brk.empty()) seg.break_start = Period::parse(brk);
        seg.slope = parse_double(trim(std::string_view(value).substr(c1 + 1, c2 - c1 - 1)));
        seg.intercept = parse_double(trim(std::string_view(value).substr(c2 + 1)));
        segments.push_back(seg);
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!kind) throw ParseError("missing response_kind");
  if (!lag) throw ParseError("missing lag");
  return PiecewiseLinearModel(*kind, *lag, std::move(segments));
}

}  // namespace lfcurve
