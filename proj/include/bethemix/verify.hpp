#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bethemix/arith.hpp"
#include "bethemix/sampler.hpp"

namespace bethemix {

/// The randomized lemma-verification registry. Keys follow the statement
/// numbering; names follow the statement labels.
enum class LemmaId {
  Prod4,        // "4"  product lower bound over S1
  ClaimSp,      // "clm:sp"  at most b maximal entries in S1'
  Closure6,     // "6"  update maps (S1' u S2)^b into S1'
  Ineqb7,       // "7"  per-child contraction with factor 1/((q-1)^b A)
  Bb8,          // "8"  product bound with s pinned children
  Prodnew9,     // "9"  strengthened product bound over S1'
  ClaimProdbd,  // "clm:prodbd"  q=4 pair products at most 1/3
  Closure11,    // "11" q=4,b=2 closure
  Ineqb12,      // "12" q=4,b=2 per-child contraction (coupled pair)
  Sineq13,      // "13" q=4,b=2 per-child factor 24/49
  Prodlb14,     // "14" q=4,b=2 product dichotomy 2/9 vs 49/216
  Contractb5,   // "5"  one-step contraction with factor kappa(q,b)
  Contract1_10, // "10" q=4,b=2 one-step contraction with factor 48/49
};

struct LemmaInfo {
  LemmaId id;
  const char* key;   // "4", "clm:sp", ...
  const char* name;  // "prod", "sp", ...
  bool q4b2_only;
};

const std::vector<LemmaInfo>& lemma_registry();
const LemmaInfo& lemma_info(LemmaId id);
std::optional<LemmaId> parse_lemma_token(const std::string& token);
bool lemma_supports(LemmaId id, int q, int b);
std::string lemma_regime_description(LemmaId id);

struct VerifyConfig {
  LemmaId lemma = LemmaId::Prod4;
  int q = 4;
  int b = 2;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  double p_edge = 0.25;
  ArithMode mode = ArithMode::Rational;
  int workers = 0;  // 0: BETHEMIX_WORKERS env, then hardware
  int witness_cap = 8;
};

struct EqualityWitness {
  std::int64_t sample_index = 0;
  int shape = 0;  // lemma-specific; Prodlb14: 1..3 per the listed cases
  std::vector<std::string> inputs;  // serialized messages
};

struct VerificationReport {
  std::string lemma_key;
  std::string lemma_name;
  int q = 0;
  int b = 0;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double worst_margin = 0.0;  // smallest slack seen; negative = violation
  std::int64_t equality_count = 0;
  std::array<std::int64_t, 3> shape_counts{0, 0, 0};  // Prodlb14 equality shapes
  std::vector<EqualityWitness> witnesses;             // capped
  std::int64_t rechecked = 0;  // float-mode suspects re-evaluated exactly
  std::uint64_t seed = 0;
  double p_edge = 0.25;
  std::string mode;
};

/// Draws hypothesis-satisfying inputs, checks the lemma's inequality on each,
/// and aggregates. Rational mode decides violations exactly (margins against
/// irrational bounds use 50-digit interval evaluation); float mode re-checks
/// suspects exactly by replaying the per-sample RNG stream.
/// Throws UnsupportedRegimeError outside the lemma's (q, b) hypotheses.
VerificationReport verify_lemma(const VerifyConfig& cfg);

struct VerifySuiteConfig {
  std::vector<LemmaId> lemmas;  // empty + all=true means the whole registry
  bool all = false;
  std::vector<int> qs{4, 5, 6, 8};
  std::vector<int> bs{2, 3};
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  double p_edge = 0.25;
  ArithMode mode = ArithMode::Rational;
  int workers = 0;
};

/// Runs every requested lemma over the (q, b) grid restricted to its regime.
/// An explicitly requested lemma with no admissible grid point is an
/// UnsupportedRegimeError; with all=true incompatible points are skipped.
std::vector<VerificationReport> run_verify_suite(const VerifySuiteConfig& cfg);

}  // namespace bethemix
