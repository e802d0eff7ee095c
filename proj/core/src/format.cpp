#include "rieszwave/format.hpp"

#include <charconv>
#include <cmath>

namespace rieszwave {
namespace {

std::string scientific(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto res =
        std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::scientific, digits - 1);
    return std::string(buffer, res.ptr);
}

}  // namespace

std::string format_real(double value) { return scientific(value, 15); }

std::string format_short(double value, int digits) { return scientific(value, digits); }

}  // namespace rieszwave
