#include "doctest.h"

#include <algorithm>

#include "bethemix/sampler.hpp"

using namespace bethemix;

namespace {

const Rational kThird(1, 3);
const Rational kSixth(1, 6);

}  // namespace

TEST_CASE("S2 samples are permutations of the pinned vector") {
  Rng rng = make_rng(1);
  const SetSpec s2 = SetSpec::make(SetVariant::S2, 4, 2);
  bool zero_seen[4] = {false, false, false, false};
  for (int i = 0; i < 100; ++i) {
    const auto m = sample_message<Rational>(s2, rng);
    CHECK(in_set(m, s2));
    for (int k = 0; k < 4; ++k)
      if (m[static_cast<std::size_t>(k)] == 0) zero_seen[k] = true;
  }
  CHECK(std::all_of(std::begin(zero_seen), std::end(zero_seen), [](bool v) { return v; }));
}

TEST_CASE("S1prime samples stay in the set (10^4 draws)") {
  Rng rng = make_rng(2);
  const SetSpec spec = SetSpec::make(SetVariant::S1prime, 6, 3);
  for (int i = 0; i < 10000; ++i) {
    const auto m = sample_message<Rational>(spec, rng);
    CHECK(in_set(m, spec));
  }
}

TEST_CASE("S1 samples stay in the set") {
  Rng rng = make_rng(3);
  for (int q : {4, 5, 8}) {
    const SetSpec spec = SetSpec::make(SetVariant::S1, q, 2);
    for (int i = 0; i < 2000; ++i) CHECK(in_set(sample_message<Rational>(spec, rng), spec));
  }
}

TEST_CASE("q=4 b=2 samples satisfy all three membership properties") {
  Rng rng = make_rng(4);
  const SetSpec spec = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  int with_third = 0, two_thirds = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto m = sample_message<Rational>(spec, rng);
    CHECK(in_set(m, spec));
    const int thirds = static_cast<int>(std::count(m.entries().begin(), m.entries().end(), kThird));
    with_third += thirds >= 1;
    two_thirds += thirds == 2;
  }
  CHECK(with_third > 100);  // p_edge drives boundary-attaining draws
  CHECK(two_thirds > 10);
}

TEST_CASE("p_edge = 1 emits the (1/6,1/6,1/3,1/3) pattern") {
  Rng rng = make_rng(5);
  SamplerOptions opt;
  opt.p_edge = 1.0;
  bool seen = false;
  for (int i = 0; i < 200 && !seen; ++i) {
    const auto m = sample_q4b2_message<Rational>(rng, opt, 2);
    std::vector<Rational> sorted(m.entries().begin(), m.entries().end());
    std::sort(sorted.begin(), sorted.end());
    seen = sorted == std::vector<Rational>{kSixth, kSixth, kThird, kThird};
  }
  CHECK(seen);
}

TEST_CASE("p_edge = 0 keeps draws off the boundary construction path") {
  Rng rng = make_rng(6);
  SamplerOptions opt;
  opt.p_edge = 0.0;
  const SetSpec spec = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  for (int i = 0; i < 500; ++i) {
    const auto m = sample_q4b2_message<Rational>(rng, opt, 2);
    CHECK(in_set(m, spec));
    CHECK(std::count(m.entries().begin(), m.entries().end(), kThird) == 0);
  }
}

TEST_CASE("coupled pairs share the 1/3 pattern and stay in S1'") {
  Rng rng = make_rng(7);
  const SetSpec spec = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  const SetSpec s2 = SetSpec::make(SetVariant::S2, 4, 2);
  int nontrivial = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto [a, b] = sample_coupled_pair<Rational>(rng, {}, /*allow_s2_equal=*/true);
    CHECK(coupled(a, b));
    const bool a_prime = in_set(a, spec);
    CHECK((a_prime || in_set(a, s2)));
    if (!a_prime) CHECK(a == b);  // S2 members only appear as identical pairs
    if (!(a == b)) ++nontrivial;
  }
  CHECK(nontrivial > 1500);
}

TEST_CASE("max_thirds=1 restricts the gamma sampler") {
  Rng rng = make_rng(8);
  for (int i = 0; i < 2000; ++i) {
    const auto g = sample_q4b2_message<Rational>(rng, {}, 1);
    CHECK(std::count(g.entries().begin(), g.entries().end(), kThird) <= 1);
  }
}

TEST_CASE("float sampler produces members under the tolerance") {
  Rng rng = make_rng(9);
  const SetSpec spec = SetSpec::make(SetVariant::S1prime, 5, 2);
  for (int i = 0; i < 2000; ++i) {
    const auto m = sample_message<double>(spec, rng);
    CHECK(in_set(m, spec));
  }
}
