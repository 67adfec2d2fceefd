#include "doctest.h"

#include <algorithm>

#include "bethemix/report_io.hpp"
#include "bethemix/verify.hpp"

using namespace bethemix;

namespace {

VerificationReport quick(LemmaId id, int q, int b, std::int64_t samples = 2000,
                         std::uint64_t seed = 7) {
  VerifyConfig cfg;
  cfg.lemma = id;
  cfg.q = q;
  cfg.b = b;
  cfg.samples = samples;
  cfg.seed = seed;
  return verify_lemma(cfg);
}

}  // namespace

TEST_CASE("lemma registry and token parsing") {
  CHECK(lemma_registry().size() == 13);
  CHECK(*parse_lemma_token("4") == LemmaId::Prod4);
  CHECK(*parse_lemma_token("clm:sp") == LemmaId::ClaimSp);
  CHECK(*parse_lemma_token("contract1") == LemmaId::Contract1_10);
  CHECK(*parse_lemma_token("10") == LemmaId::Contract1_10);
  CHECK(*parse_lemma_token("prodlb4") == LemmaId::Prodlb14);
  CHECK_FALSE(parse_lemma_token("nope").has_value());
}

TEST_CASE("regime guards") {
  CHECK(lemma_supports(LemmaId::Prod4, 4, 3));
  CHECK_FALSE(lemma_supports(LemmaId::ClaimSp, 4, 3));
  CHECK(lemma_supports(LemmaId::ClaimSp, 5, 3));
  CHECK_FALSE(lemma_supports(LemmaId::Contract1_10, 5, 2));
  CHECK_THROWS_AS(quick(LemmaId::Contract1_10, 5, 2), UnsupportedRegimeError);
}

TEST_CASE("every lemma verifies clean on a small run") {
  struct Combo {
    LemmaId id;
    int q, b;
  };
  const Combo combos[] = {
      {LemmaId::Prod4, 5, 2},        {LemmaId::Prod4, 4, 3},
      {LemmaId::ClaimSp, 5, 2},      {LemmaId::ClaimSp, 6, 3},
      {LemmaId::Closure6, 5, 2},     {LemmaId::Closure6, 8, 3},
      {LemmaId::Ineqb7, 5, 2},       {LemmaId::Ineqb7, 6, 3},
      {LemmaId::Bb8, 5, 2},          {LemmaId::Bb8, 6, 3},
      {LemmaId::Prodnew9, 5, 2},     {LemmaId::Prodnew9, 8, 3},
      {LemmaId::ClaimProdbd, 4, 2},  {LemmaId::Closure11, 4, 2},
      {LemmaId::Ineqb12, 4, 2},      {LemmaId::Sineq13, 4, 2},
      {LemmaId::Prodlb14, 4, 2},     {LemmaId::Contractb5, 5, 2},
      {LemmaId::Contractb5, 6, 3},   {LemmaId::Contract1_10, 4, 2},
      {LemmaId::Prod4, 6, 5},        {LemmaId::ClaimSp, 8, 5},
      {LemmaId::Closure6, 8, 5},     {LemmaId::Ineqb7, 8, 5},
      {LemmaId::Bb8, 8, 5},          {LemmaId::Prodnew9, 8, 5},
      {LemmaId::Contractb5, 8, 5},
  };
  for (const auto& c : combos) {
    const auto report = quick(c.id, c.q, c.b);
    CAPTURE(report.lemma_key);
    CAPTURE(c.q);
    CAPTURE(c.b);
    CHECK(report.violations == 0);
    CHECK(report.worst_margin >= 0.0);
    CHECK(report.samples == 2000);
  }
}

TEST_CASE("lemma 4 equality witnesses appear at crossed pinned corners") {
  const auto report = quick(LemmaId::Prod4, 4, 2, 20000);
  CHECK(report.violations == 0);
  CHECK(report.equality_count > 0);
  CHECK(!report.witnesses.empty());
}

TEST_CASE("lemma 14 finds all three equality shapes") {
  const auto report = quick(LemmaId::Prodlb14, 4, 2, 30000);
  CHECK(report.violations == 0);
  CHECK(report.equality_count > 0);
  CHECK(report.shape_counts[0] > 0);
  CHECK(report.shape_counts[1] > 0);
  CHECK(report.shape_counts[2] > 0);
  CHECK(report.equality_count ==
        report.shape_counts[0] + report.shape_counts[1] + report.shape_counts[2]);
}

TEST_CASE("lemma 12 attains equality against an S2 fixed child") {
  const auto report = quick(LemmaId::Ineqb12, 4, 2, 20000);
  CHECK(report.violations == 0);
  CHECK(report.equality_count > 0);
}

TEST_CASE("reports are deterministic and worker-count independent") {
  VerifyConfig cfg;
  cfg.lemma = LemmaId::Prodlb14;
  cfg.samples = 3000;
  cfg.seed = 99;
  cfg.workers = 1;
  const auto a = to_json(verify_lemma(cfg));
  cfg.workers = 4;
  const auto b = to_json(verify_lemma(cfg));
  CHECK(a == b);
  cfg.seed = 100;
  const auto c = to_json(verify_lemma(cfg));
  CHECK(a != c);
}

TEST_CASE("float mode agrees with rational mode after rechecks") {
  for (const LemmaId id : {LemmaId::Prod4, LemmaId::Prodlb14, LemmaId::Contract1_10}) {
    VerifyConfig cfg;
    cfg.lemma = id;
    cfg.q = 4;
    cfg.b = 2;
    cfg.samples = 2000;
    cfg.seed = 123;
    cfg.mode = ArithMode::Float;
    const auto report = verify_lemma(cfg);
    CAPTURE(report.lemma_key);
    CHECK(report.violations == 0);
    CHECK(report.worst_margin >= -kDefaultEpsTol);
    CHECK(report.mode == "float");
  }
}

TEST_CASE("per-child 24/49 factors compose to the one-step 48/49") {
  // On coupled quadruples whose members carry at most one entry of 1/3, the
  // midpoint route bounds the one-step distance by 24/49 per child.
  Rng rng = make_rng(555);
  const Rational third(1, 3), factor(24, 49);
  int checked = 0;
  while (checked < 400) {
    const auto [a, b] = sample_coupled_pair<Rational>(rng, {}, false);
    const auto [a2, b2] = sample_coupled_pair<Rational>(rng, {}, false);
    const auto thirds = [&](const Message<Rational>& m) {
      return std::count(m.entries().begin(), m.entries().end(), third);
    };
    if (thirds(a) > 1 || thirds(b) > 1 || thirds(a2) > 1 || thirds(b2) > 1) continue;
    ++checked;
    const Rational lhs = l1_distance(update<Rational>({a, a2}, 4), update<Rational>({b, b2}, 4));
    const Rational d1 = l1_distance(a, b);
    const Rational d2 = l1_distance(a2, b2);
    CHECK(lhs <= factor * d1 + factor * d2);
    CHECK(factor * d1 + factor * d2 <= Rational(48, 49) * std::max(d1, d2));
  }
}

TEST_CASE("suite runner filters regimes") {
  VerifySuiteConfig cfg;
  cfg.all = true;
  cfg.qs = {4, 5};
  cfg.bs = {2, 3};
  cfg.samples = 200;
  const auto reports = run_verify_suite(cfg);
  // per lemma: Prod4 4 combos; q>=b+2 lemmas: (4,2),(5,2),(5,3) = 3 each;
  // q4b2 lemmas: 1 each
  std::int64_t violations = 0;
  int prod4_runs = 0, q4b2_runs = 0;
  for (const auto& r : reports) {
    violations += r.violations;
    if (r.lemma_key == "4") ++prod4_runs;
    if (r.lemma_key == "10") ++q4b2_runs;
  }
  CHECK(violations == 0);
  CHECK(prod4_runs == 4);
  CHECK(q4b2_runs == 1);

  VerifySuiteConfig bad;
  bad.lemmas = {LemmaId::Contract1_10};
  bad.qs = {5};
  bad.bs = {2};
  CHECK_THROWS_AS(run_verify_suite(bad), UnsupportedRegimeError);
}
