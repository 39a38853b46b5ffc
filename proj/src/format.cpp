#include "ddstream/format.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace ddstream {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return {buf.data(), ptr};
}

std::string format_hex_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::hex);
    if (ec != std::errc{}) throw std::runtime_error("format_hex_double failed");
    std::string body(buf.data(), ptr);
    if (!body.empty() && body.front() == '-') return "-0x" + body.substr(1);
    return "0x" + body;
}

double parse_double(const std::string& text) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

}  // namespace ddstream
