#ifndef LFCURVE_CSV_HPP
#define LFCURVE_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lfcurve/series.hpp"

namespace lfcurve {

/// Parses "period,value" CSV text. Annual periods look like "1962", quarterly like
/// "1962Q1". Rows must be contiguous and ascending; errors carry the line number.
Series parse_csv(std::string_view text, Frequency frequency, const std::string& source = "<memory>");

Series load_csv(const std::filesystem::path& path, Frequency frequency);

/// Writes values in shortest round-trip form, so parse_csv(series_to_csv(s)) == s.
std::string series_to_csv(const Series& s);
void write_csv(const Series& s, const std::filesystem::path& path);

enum class CurveKind { dynamic, cumulative };

/// "period,observed,predicted,residual". Cumulative kind cumulates both inputs first.
std::string curves_to_csv(const Series& observed, const Series& predicted, CurveKind kind);
void emit_curves(const Series& observed, const Series& predicted, CurveKind kind, const std::filesystem::path& path);

/// Writes text to a file, throwing Error if the path is not writable.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lfcurve

#endif  // LFCURVE_CSV_HPP
