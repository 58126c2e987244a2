#ifndef LFCURVE_FORMAT_HPP
#define LFCURVE_FORMAT_HPP

#include <string>

namespace lfcurve {

/// Shortest decimal that parses back to the identical double.
std::string format_shortest(double value);

/// Fixed-point with the given number of decimals; never prints "-0.00".
std::string format_fixed(double value, int decimals);

/// Parses a whole-string decimal number; throws ParseError on trailing junk.
double parse_double(const std::string& text);

}  // namespace lfcurve

#endif  // LFCURVE_FORMAT_HPP
