#include "lfcurve/series.hpp"

#include <charconv>

namespace lfcurve {

Frequency parse_frequency(std::string_view text) {
  if (text == "annual") return Frequency::annual;
  if (text == "quarterly") return Frequency::quarterly;
  throw InvalidArgument("unknown frequency '" + std::string(text) + "' (expected annual|quarterly)");
}

Period Period::parse(std::string_view text) {
  const auto q = text.find_first_of("Qq");
  const auto year_text = text.substr(0, q);
  int year = 0;
  auto [ptr, ec] = std::from_chars(year_text.data(), year_text.data() + year_text.size(), year);
  if (ec != std::errc() || ptr != year_text.data() + year_text.size() || year_text.empty()) {
    throw ParseError("invalid period '" + std::string(text) + "'");
  }
  if (q == std::string_view::npos) return annual(year);

  const auto quarter_text = text.substr(q + 1);
  int quarter = 0;
  auto [qptr, qec] = std::from_chars(quarter_text.data(), quarter_text.data() + quarter_text.size(), quarter);
  if (qec != std::errc() || qptr != quarter_text.data() + quarter_text.size() || quarter < 1 || quarter > 4) {
    throw ParseError("invalid quarter in period '" + std::string(text) + "'");
  }
  return quarterly(year, quarter);
}

}  // namespace lfcurve
