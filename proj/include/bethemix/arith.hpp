#pragma once

#include <cmath>
#include <cstdint>

#include "bethemix/exact.hpp"

namespace bethemix {

/// Default comparison tolerance for float-mode bound and normalization checks.
inline constexpr double kDefaultEpsTol = 1e-12;

enum class ArithMode { Rational, Float };

const char* arith_mode_name(ArithMode mode);
ArithMode arith_mode_from_string(const std::string& name);

/// Per-scalar-type policy: exact comparisons for Rational, tolerance-widened
/// comparisons for double. Bounds are widened outward by tol, never inward.
template <typename T>
struct arith_traits;

template <>
struct arith_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr ArithMode mode = ArithMode::Rational;
  static bool leq(const Rational& a, const Rational& b, double /*tol*/) { return a <= b; }
  static bool geq(const Rational& a, const Rational& b, double /*tol*/) { return a >= b; }
  static bool eq(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }
  static Rational ratio(long num, long den) { return Rational(num, den); }
  static double to_double(const Rational& v) { return rational_to_double(v); }
  /// Dyadic point of [0,1]: bits/2^grain_bits.
  static Rational unit_from_bits(std::uint64_t bits, int grain_bits) {
    return Rational(BigInt(bits), BigInt(1) << grain_bits);
  }
};

template <>
struct arith_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr ArithMode mode = ArithMode::Float;
  static bool leq(double a, double b, double tol) { return a <= b + tol; }
  static bool geq(double a, double b, double tol) { return a >= b - tol; }
  static bool eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
  static double to_double(double v) { return v; }
  static double unit_from_bits(std::uint64_t bits, int grain_bits) {
    return static_cast<double>(bits) / std::ldexp(1.0, grain_bits);
  }
};

}  // namespace bethemix
