#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace parampac {

using Rational = mpq_class;

// Parses a decimal literal (digits, optional fraction, optional exponent) exactly:
// "0.05" -> 1/20, "2.5e-3" -> 1/400. Throws Error(InvalidArgument) on malformed text.
Rational rational_from_decimal(std::string_view text);

/// Integers print as "a", everything else as "a/b".
std::string to_string(const Rational& r);

// Exact decimal expansion when the denominator is of the form 2^i 5^j, "a/b" otherwise.
std::string to_decimal_string(const Rational& r);

// Nearest double, ties to even. (mpq_class::get_d truncates toward zero.)
double to_double(const Rational& r);

/// Shortest decimal text that round-trips to the same double ("inf", "-inf", "nan" otherwise).
std::string format_double(double x);

}  // namespace parampac
