#include "lfcurve/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "lfcurve/format.hpp"

namespace lfcurve {

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

Series parse_csv(std::string_view text, Frequency frequency, const std::string& source) {
  const auto fail = [&](const std::string& what, int line) -> ParseError {
    return ParseError(source + ": " + what, line);
  };

  // UTF-8 byte-order mark
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<double> values;
  std::optional<Period> start;
  std::optional<Period> previous;
  int line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        strip_cr(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    if (!header_seen) {
      if (line != "period,value") throw fail("expected header 'period,value'", line_no);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw fail("expected 'period,value'", line_no);
    }
    Period period = Period::annual(0);
    double value = 0.0;
    try {
      period = Period::parse(line.substr(0, comma));
      value = parse_double(std::string(line.substr(comma + 1)));
    } catch (const ParseError& e) {
      throw fail(e.what(), line_no);
    }
    if (period.frequency() != frequency) {
      throw fail("period " + period.to_string() + " does not match " + to_string(frequency) + " frequency", line_no);
    }
    if (!std::isfinite(value)) throw fail("non-finite value", line_no);
    if (previous) {
      const auto step = periods_between(*previous, period);
      if (step == 0) throw fail("duplicate period " + period.to_string(), line_no);
      if (step < 0) throw fail("period " + period.to_string() + " out of order", line_no);
      if (step > 1) {
        throw fail("gap: expected " + previous->advanced(1).to_string() + ", got " + period.to_string(), line_no);
      }
    } else {
      start = period;
    }
    previous = period;
    values.push_back(value);
  }
  if (!header_seen) throw fail("empty file", 0);
  if (values.empty()) throw fail("no data rows", line_no);
  return Series(*start, values);
}

Series load_csv(const std::filesystem::path& path, Frequency frequency) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), frequency, path.string());
}

std::string series_to_csv(const Series& s) {
  std::string out = "period,value\n";
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    out += s.period_at(k).to_string() + "," + format_shortest(s[k]) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write output file '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing output file '" + path.string() + "'");
}

void write_csv(const Series& s, const std::filesystem::path& path) { write_text_file(path, series_to_csv(s)); }

std::string curves_to_csv(const Series& observed, const Series& predicted, CurveKind kind) {
  require_same_span(observed, predicted);
  const Series obs = kind == CurveKind::cumulative ? cumulative_sum(observed) : observed;
  const Series pred = kind == CurveKind::cumulative ? cumulative_sum(predicted) : predicted;
  std::string out = "period,observed,predicted,residual\n";
  for (Eigen::Index k = 0; k < obs.size(); ++k) {
    out += obs.period_at(k).to_string() + "," + format_shortest(obs[k]) + "," + format_shortest(pred[k]) + "," +
           format_shortest(obs[k] - pred[k]) + "\n";
  }
  return out;
}

void emit_curves(const Series& observed, const Series& predicted, CurveKind kind, const std::filesystem::path& path) {
  write_text_file(path, curves_to_csv(observed, predicted, kind));
}

}  // namespace lfcurve
