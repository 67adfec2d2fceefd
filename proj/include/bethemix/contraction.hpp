#pragma once

#include <optional>
#include <vector>

#include "bethemix/exact.hpp"

namespace bethemix {

/// Contraction factor (b/q) * (1 - 1/(q-b))^(-b + b^2/q). Needs q >= b+2.
double kappa(int q, int b);

/// Exact value of kappa when the exponent -b + b^2/q is an integer
/// (i.e. q divides b^2); nullopt otherwise.
std::optional<Rational> kappa_exact(int q, int b);

/// High-precision kappa, for margin checks against exact sample values.
Float50 kappa_float50(int q, int b);

/// The q=4, b=2 contraction factor: exactly 48/49.
Rational kappa_q4b2();

/// The coupled-route secondary product bound for q=4, b=2: exactly 49/216.
Rational lemma14_secondary_bound();

/// Root of c = exp(1/c), found by bisection on [1.5, 2.0].
double solve_c(double tolerance);

/// 1 + ceil(c*b) with c at tolerance 1e-12. Throws CeilingAmbiguousError
/// when c*b lies within `guard` of an integer.
int threshold_q(int b, double guard = 1e-9);

/// kappa evaluated along the threshold line q = 1 + c*b (real-valued b >= 2).
double g_curve(double b);

/// Smallest integer q >= b+2 with kappa(q, b) < 1. Empirical, no tightness claim.
int min_contracting_q(int b);

/// (q-b)/(q-1)^b, valid for q > b >= 1.
double bound_lemma_prod(int q, int b);
Rational bound_lemma_prod_exact(int q, int b);

/// (q/(q-1)^b) * (1 - 1/(q-b))^(b - b^2/q), valid for q >= b+2.
double bound_lemma_prodnew(int q, int b);
Float50 bound_lemma_prodnew_float50(int q, int b);
std::optional<Rational> bound_lemma_prodnew_exact(int q, int b);

/// ((q-s)/(q-1)^b) * (1 - 1/(q-b))^((b-s) - (b-s)^2/(q-s)), 0 <= s <= b < q.
double bound_lemma_bb(int q, int b, int s);
Float50 bound_lemma_bb_float50(int q, int b, int s);
std::optional<Rational> bound_lemma_bb_exact(int q, int b, int s);

struct ContractionRecord {
  int q = 0;
  int b = 0;
  double kappa = 0.0;
  int threshold_q = 0;
  bool contracts = false;
};

/// One record per (b, q) with q in {threshold-1, threshold, threshold+1},
/// clamped to q >= b+2.
std::vector<ContractionRecord> contraction_table(int b_min, int b_max);

}  // namespace bethemix
