#pragma once

#include <string>

namespace rieszwave {

/// Scientific notation with 15 significant digits, independent of locale
/// ("-1.23456789012345e-05"). Non-finite values print as "nan", "inf", "-inf".
std::string format_real(double value);

/// Compact form for table cells: `digits` significant digits, scientific.
std::string format_short(double value, int digits = 5);

}  // namespace rieszwave
