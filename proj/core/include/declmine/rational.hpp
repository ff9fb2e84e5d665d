#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace declmine {

/// Exact rational arithmetic for mining metrics. Counts fit comfortably in
/// 64 bits; boost::rational keeps values normalized so products of two
/// metric ratios never overflow at the log sizes this engine targets.
using Rational = boost::rational<std::int64_t>;

/// Parses a plain decimal literal ("0.7", "1", ".5625", "-0.25") into an
/// exact rational. Throws std::invalid_argument on anything else
/// (exponents, hex, empty string).
Rational parse_decimal(std::string_view text);

/// Renders a rational as a decimal string with `significant_digits`
/// significant digits (round half up), trimming trailing zeros.
/// Terminating expansions shorter than the budget are emitted exactly:
/// 3/4 -> "0.75", 1/3 -> "0.333333333".
std::string to_decimal_string(const Rational& value, int significant_digits = 9);

inline double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

} // namespace declmine
