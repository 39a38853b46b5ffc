#pragma once

#include <string>

namespace ddstream {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars, plain or scientific notation, whichever is shorter).
std::string format_double(double value);

/// C99 hexadecimal float, e.g. "0x1.999999999999ap-4". Lossless.
std::string format_hex_double(double value);
double parse_double(const std::string& text);

}  // namespace ddstream
