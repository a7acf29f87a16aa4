#pragma once

#include <string>
#include <string_view>

namespace dilatox {

/// Shortest decimal that round-trips to the same double; non-finite values
/// print as lowercase "inf", "-inf", "nan".
std::string format_double(double v);

/// Inverse of format_double; throws ParseError on trailing junk.
double parse_double(std::string_view text);

}  // namespace dilatox
