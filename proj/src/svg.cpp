#include "lfcurve/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

#include "lfcurve/csv.hpp"
#include "lfcurve/format.hpp"

namespace lfcurve {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) { return format_fixed(v, 2); }

// Expands [lo, hi] by 5% on each side; a zero-width range gets a unit-scaled pad.
std::pair<double, double> padded(double lo, double hi) {
  double range = hi - lo;
  if (range <= 0.0) {
    const double pad = std::max(std::abs(lo) * 0.1, 1e-3);
    return {lo - pad, hi + pad};
  }
  return {lo - 0.05 * range, hi + 0.05 * range};
}

std::string tick_label(double v, double step) {
  const int decimals = std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
  return format_fixed(v, decimals);
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int max_ticks) {
  std::vector<double> ticks;
  if (!(hi > lo) || max_ticks < 2) return ticks;
  const double raw = (hi - lo) / (max_ticks - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const double first = std::ceil(lo / step - 1e-9);
  for (double k = first; k * step <= hi + 1e-9 * step; k += 1.0) {
    const double v = k * step;
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    if (static_cast<int>(ticks.size()) == max_ticks) break;
  }
  return ticks;
}

std::string render_svg(const std::vector<Curve>& curves, const std::string& title) {
  if (curves.empty()) throw InvalidArgument("cannot render a chart without curves");
  const Frequency freq = curves.front().series.frequency();
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& c : curves) {
    if (c.series.frequency() != freq) throw FrequencyMismatchError("all chart curves must share one frequency");
    for (Eigen::Index k = 0; k < c.series.size(); ++k) {
      const double x = c.series.period_at(k).as_year_fraction();
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, c.series[k]);
      y_hi = std::max(y_hi, c.series[k]);
    }
  }
  if (!std::isfinite(x_lo)) throw InvalidArgument("cannot render a chart of empty curves");
  std::tie(x_lo, x_hi) = padded(x_lo, x_hi);
  std::tie(y_lo, y_hi) = padded(y_lo, y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
         "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + px(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape_xml(title) + "</text>\n";
  out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(plot_w) + "\" height=\"" + px(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  const auto x_ticks = nice_ticks(x_lo, x_hi);
  const double x_step = x_ticks.size() > 1 ? x_ticks[1] - x_ticks[0] : 1.0;
  for (double t : x_ticks) {
    out += "<line x1=\"" + px(sx(t)) + "\" y1=\"" + px(kTop + plot_h) + "\" x2=\"" + px(sx(t)) + "\" y2=\"" +
           px(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + px(sx(t)) + "\" y=\"" + px(kTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(t, x_step) +
           "</text>\n";
  }
  const auto y_ticks = nice_ticks(y_lo, y_hi);
  const double y_step = y_ticks.size() > 1 ? y_ticks[1] - y_ticks[0] : 1.0;
  for (double t : y_ticks) {
    out += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(sy(t)) + "\" x2=\"" + px(kLeft) + "\" y2=\"" + px(sy(t)) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(sy(t) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(t, y_step) + "</text>\n";
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& s = curves[i].series;
    std::string points;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (k > 0) points += ' ';
      points += px(sx(s.period_at(k).as_year_fraction())) + "," + px(sy(s[k]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[i % kPalette.size()]) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  // Legend, top-left inside the plot area.
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const double y = kTop + 16 + 16 * double(i);
    out += "<line x1=\"" + px(kLeft + 10) + "\" y1=\"" + px(y - 4) + "\" x2=\"" + px(kLeft + 30) + "\" y2=\"" +
           px(y - 4) + "\" stroke=\"" + kPalette[i % kPalette.size()] + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(kLeft + 36) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(curves[i].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const std::vector<Curve>& curves, const std::string& title, const std::filesystem::path& path) {
  write_text_file(path, render_svg(curves, title));
}

}  // namespace lfcurve
