#include "bethemix/contraction.hpp"

#include <cmath>

#include "bethemix/errors.hpp"

namespace bethemix {

namespace {

void check_kappa_domain(int q, int b) {
  if (b < 1) throw DomainError("kappa needs b >= 1");
  if (q <= b + 1)
    throw DomainError("kappa needs q >= b+2 (base 1-1/(q-b) must lie in (0,1))");
}

/// Integer exponent of (1-1/(q-b))^(e_num/e_den) when e_den | e_num.
std::optional<long> integral_exponent(long e_num, long e_den) {
  if (e_num % e_den != 0) return std::nullopt;
  return e_num / e_den;
}

}  // namespace

double kappa(int q, int b) {
  check_kappa_domain(q, b);
  const double base = 1.0 - 1.0 / static_cast<double>(q - b);
  const double expo = -static_cast<double>(b) +
                      static_cast<double>(b) * static_cast<double>(b) / static_cast<double>(q);
  return (static_cast<double>(b) / q) * std::pow(base, expo);
}

std::optional<Rational> kappa_exact(int q, int b) {
  check_kappa_domain(q, b);
  // exponent = (-b*q + b^2)/q
  const auto e = integral_exponent(static_cast<long>(b) * b - static_cast<long>(b) * q, q);
  if (!e) return std::nullopt;
  const Rational base(q - b - 1, q - b);
  return Rational(b, q) * rational_pow(base, *e);
}

Float50 kappa_float50(int q, int b) {
  check_kappa_domain(q, b);
  const Float50 base = Float50(1) - Float50(1) / (q - b);
  const Float50 expo = Float50(-b) + Float50(b) * b / q;
  return (Float50(b) / q) * pow(base, expo);
}

Rational kappa_q4b2() { return Rational(48, 49); }

Rational lemma14_secondary_bound() { return Rational(49, 216); }

double solve_c(double tolerance) {
  if (!(tolerance > 0)) throw DomainError("solve_c needs a positive tolerance");
  double lo = 1.5, hi = 2.0;
  // h(c) = c - exp(1/c) is increasing on the bracket and changes sign.
  auto h = [](double c) { return c - std::exp(1.0 / c); };
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

int threshold_q(int b, double guard) {
  if (b < 2) throw DomainError("threshold_q needs b >= 2");
  const double c = solve_c(1e-12);
  const double x = c * static_cast<double>(b);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < guard)
    throw CeilingAmbiguousError("c*b = " + std::to_string(x) + " is within " +
                                std::to_string(guard) + " of an integer at b=" + std::to_string(b));
  return 1 + static_cast<int>(std::ceil(x));
}

double g_curve(double b) {
  if (b < 2) throw DomainError("g is studied for b >= 2");
  const double c = solve_c(1e-12);
  const double q = c * b + 1.0;
  const double base = 1.0 - 1.0 / (q - b);
  const double expo = -b + b * b / q;
  return (b / q) * std::pow(base, expo);
}

int min_contracting_q(int b) {
  if (b < 1) throw DomainError("min_contracting_q needs b >= 1");
  for (int q = b + 2; q <= 64 * (b + 2); ++q)
    if (kappa(q, b) < 1.0) return q;
  throw DomainError("no contracting q found in scan range");  // unreachable for b >= 1
}

double bound_lemma_prod(int q, int b) {
  return rational_to_double(bound_lemma_prod_exact(q, b));
}

Rational bound_lemma_prod_exact(int q, int b) {
  if (b < 1 || q <= b) throw DomainError("product bound needs q > b >= 1");
  return Rational(q - b) / rational_pow(Rational(q - 1), b);
}

double bound_lemma_prodnew(int q, int b) { return bound_lemma_bb(q, b, 0); }

Float50 bound_lemma_prodnew_float50(int q, int b) { return bound_lemma_bb_float50(q, b, 0); }

std::optional<Rational> bound_lemma_prodnew_exact(int q, int b) {
  return bound_lemma_bb_exact(q, b, 0);
}

namespace {

void check_bb_domain(int q, int b, int s) {
  if (s < 0 || s > b || b >= q) throw DomainError("bound needs 0 <= s <= b < q");
  if (s < b && q < b + 2) throw DomainError("bound needs q >= b+2 when s < b");
}

}  // namespace

double bound_lemma_bb(int q, int b, int s) {
  check_bb_domain(q, b, s);
  if (s == b) return bound_lemma_prod(q, b);
  const double base = 1.0 - 1.0 / static_cast<double>(q - b);
  const double bs = static_cast<double>(b - s);
  const double expo = bs - bs * bs / static_cast<double>(q - s);
  return (static_cast<double>(q - s) / std::pow(static_cast<double>(q - 1), b)) *
         std::pow(base, expo);
}

Float50 bound_lemma_bb_float50(int q, int b, int s) {
  check_bb_domain(q, b, s);
  if (s == b) return rational_to_float50(bound_lemma_prod_exact(q, b));
  const Float50 base = Float50(1) - Float50(1) / (q - b);
  const Float50 bs = Float50(b - s);
  const Float50 expo = bs - bs * bs / Float50(q - s);
  return (Float50(q - s) / pow(Float50(q - 1), b)) * pow(base, expo);
}

std::optional<Rational> bound_lemma_bb_exact(int q, int b, int s) {
  check_bb_domain(q, b, s);
  if (s == b) return bound_lemma_prod_exact(q, b);
  const long bs = b - s;
  // exponent = (bs*(q-s) - bs^2)/(q-s)
  const auto e = integral_exponent(bs * (q - s) - bs * bs, q - s);
  if (!e) return std::nullopt;
  const Rational base(q - b - 1, q - b);
  return Rational(q - s) / rational_pow(Rational(q - 1), b) * rational_pow(base, *e);
}

std::vector<ContractionRecord> contraction_table(int b_min, int b_max) {
  if (b_min < 2 || b_max < b_min || b_max > 10000)
    throw DomainError("contraction table needs 2 <= b_min <= b_max <= 10000");
  std::vector<ContractionRecord> rows;
  for (int b = b_min; b <= b_max; ++b) {
    const int thr = threshold_q(b);
    for (int q = thr - 1; q <= thr + 1; ++q) {
      if (q < b + 2) continue;
      const double k = kappa(q, b);
      rows.push_back(ContractionRecord{q, b, k, thr, k < 1.0});
    }
  }
  return rows;
}

}  // namespace bethemix
