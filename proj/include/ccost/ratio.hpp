#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ccost {

/// Exact rational used for implementation effort and every sum derived from it.
using Ratio = boost::multiprecision::cpp_rational;

/// Renders a non-negative ratio with exactly two decimals, rounding half away
/// from zero. Throws std::domain_error for negative input.
std::string format_fixed2(const Ratio& value);

/// "num/den", or just "num" when the denominator is 1.
std::string format_exact(const Ratio& value);

/// Parses the output of format_exact. Throws std::invalid_argument.
Ratio parse_exact(const std::string& text);

}  // namespace ccost
