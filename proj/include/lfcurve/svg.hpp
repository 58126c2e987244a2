#ifndef LFCURVE_SVG_HPP
#define LFCURVE_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lfcurve/series.hpp"

namespace lfcurve {

struct Curve {
  std::string label;
  Series series;
};

/// Self-contained single-panel line chart. Output depends only on the inputs.
std::string render_svg(const std::vector<Curve>& curves, const std::string& title);

void emit_svg(const std::vector<Curve>& curves, const std::string& title, const std::filesystem::path& path);

/// At most `max_ticks` round-number positions (1, 2 or 5 times a power of ten) inside [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int max_ticks = 10);

}  // namespace lfcurve

#endif  // LFCURVE_SVG_HPP
