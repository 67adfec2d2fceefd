#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace bethemix {

/// Exact rational scalar. All message arithmetic in rational mode runs on
/// these with no rounding anywhere.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// 50-decimal-digit float, used to compare exact quantities against bounds
/// that are irrational (fractional powers in the contraction formulas).
using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Canonical "num/den" form, always with an explicit denominator ("0/1", "1/3").
std::string rational_to_string(const Rational& r);

/// Parses "num/den" or a bare integer "num". Throws ParseError on malformed input.
Rational rational_from_string(const std::string& text);

/// Exact conversion of a finite double (all doubles are dyadic rationals).
Rational rational_from_double(double value);

double rational_to_double(const Rational& r);

Float50 rational_to_float50(const Rational& r);

/// base^exponent for integer exponents (exponent may be negative; base != 0).
Rational rational_pow(const Rational& base, long exponent);

}  // namespace bethemix
