#include "bethemix/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "bethemix/errors.hpp"

namespace bethemix {

std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational literal: " + text);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ParseError("malformed rational literal: " + text);
  }
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
  return Rational(value);
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

Float50 rational_to_float50(const Rational& r) {
  return Float50(numerator(r)) / Float50(denominator(r));
}

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0 && exponent < 0) throw DomainError("0 cannot be raised to a negative power");
  const unsigned long mag = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Rational out = 1;
  Rational acc = base;
  for (unsigned long k = mag; k != 0; k >>= 1) {
    if (k & 1u) out *= acc;
    if (k > 1) acc *= acc;
  }
  if (exponent < 0) out = 1 / out;
  return out;
}

}  // namespace bethemix
