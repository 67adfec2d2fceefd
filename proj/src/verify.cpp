#include "bethemix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "bethemix/contraction.hpp"
#include "bethemix/errors.hpp"

namespace bethemix {

namespace {

/// Probability that a draw from S1' u S2 picks the S2 component.
constexpr double kS2MixProb = 0.25;

/// Violation band for margins evaluated at 50-digit precision (irrational
/// bounds): genuine violations of a false inequality sit far above this.
constexpr double kFloat50Band = 1e-30;

/// Float-mode relative slack floor; anything below is re-checked exactly.
constexpr double kFloatSuspectFloor = 1e-10;

struct SampleOutcome {
  double margin = 0.0;
  bool violation = false;
  bool suspect = false;  // float mode only: send to the exact recheck
  bool equality = false;
  int shape = 0;
  std::vector<std::string> witness;
};

template <typename T>
std::string serialize_message(const Message<T>& m) {
  return message_to_json(m);
}

template <typename T>
std::vector<std::string> serialize_all(std::initializer_list<const Message<T>*> msgs) {
  std::vector<std::string> out;
  out.reserve(msgs.size());
  for (const auto* m : msgs) out.push_back(serialize_message(*m));
  return out;
}

/// Outcome of "lhs <= rhs", decided exactly in rational mode.
SampleOutcome compare_leq(const Rational& lhs, const Rational& rhs) {
  SampleOutcome out;
  const Rational diff = rhs - lhs;
  out.margin = rational_to_double(diff);
  out.violation = diff < 0;
  out.equality = diff == 0;
  return out;
}

SampleOutcome compare_leq(double lhs, double rhs) {
  SampleOutcome out;
  out.margin = rhs - lhs;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  out.violation = out.margin < -kDefaultEpsTol * scale;
  out.suspect = out.margin < kFloatSuspectFloor * scale;
  return out;
}

/// Outcome of "value >= bound" where the bound may be irrational; rational
/// mode compares at 50 digits with a band no true inequality can enter.
SampleOutcome compare_geq_f50(const Rational& value, const Float50& bound) {
  SampleOutcome out;
  const Float50 margin = rational_to_float50(value) - bound;
  out.margin = margin.convert_to<double>();
  const double scale = std::max(1.0, std::abs(bound.convert_to<double>()));
  out.violation = margin < -Float50(kFloat50Band) * scale;
  return out;
}

SampleOutcome compare_geq_f50(double value, const Float50& bound) {
  return compare_leq(bound.convert_to<double>(), value);
}

template <typename T>
std::vector<Message<T>> draw_union_list(int n, const SetSpec& prime_spec, Rng& rng,
                                        const SamplerOptions& opt) {
  std::vector<Message<T>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(sample_union_member<T>(prime_spec, rng, opt, kS2MixProb));
  return out;
}

// ---- per-lemma evaluators ------------------------------------------------

template <typename T>
SampleOutcome eval_prod4(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const SetSpec s1 = SetSpec::make(SetVariant::S1, q, b);
  std::vector<Message<T>> ms;
  ms.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) ms.push_back(sample_message<T>(s1, rng, opt));
  const T p = product_sum<T>(std::span<const Message<T>>(ms));

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    out = compare_leq(bound_lemma_prod_exact(q, b), p);
    if (out.equality || out.violation) {
      std::vector<std::string> w;
      for (const auto& m : ms) w.push_back(serialize_message(m));
      out.witness = std::move(w);
    }
  } else {
    out = compare_leq(bound_lemma_prod(q, b), p);
  }
  return out;
}

template <typename T>
SampleOutcome eval_claim_sp(int q, int b, Rng& rng, const SamplerOptions& opt) {
  using tr = arith_traits<T>;
  const SetSpec s1p = SetSpec::make(SetVariant::S1prime, q, b);
  const Message<T> g = sample_message<T>(s1p, rng, opt);
  const T hi = tr::ratio(1, q - 1);

  T lo_t;
  if constexpr (tr::is_exact)
    lo_t = SetSpec::s1prime_lower_bound(q, b);
  else
    lo_t = rational_to_double(SetSpec::s1prime_lower_bound(q, b));

  int hi_count = 0;
  for (int i = 0; i < q; ++i)
    if (tr::eq(g[static_cast<std::size_t>(i)], hi, kDefaultEpsTol)) ++hi_count;

  SampleOutcome out;
  out.margin = static_cast<double>(b - hi_count);
  out.violation = hi_count > b;
  if (hi_count == b) {
    for (int i = 0; i < q; ++i) {
      const T& e = g[static_cast<std::size_t>(i)];
      if (!tr::eq(e, hi, kDefaultEpsTol) && !tr::eq(e, lo_t, kDefaultEpsTol)) {
        out.violation = true;
        out.margin = -1.0;
      }
    }
    if (!out.violation) out.equality = true;
  }
  if constexpr (tr::is_exact) {
    if (out.equality || out.violation) out.witness = {serialize_message(g)};
  } else {
    out.suspect = out.violation || hi_count == b;
  }
  return out;
}

template <typename T>
SampleOutcome eval_closure(int q, int b, SetVariant target, Rng& rng, const SamplerOptions& opt) {
  const SetSpec prime = SetSpec::make(target, q, b);
  const auto ms = draw_union_list<T>(b, prime, rng, opt);
  const Message<T> f = update<T>(std::span<const Message<T>>(ms), q);

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    const Rational margin = in_set_margin(f, prime);
    out.margin = rational_to_double(margin);
    out.violation = margin < 0;
    out.equality = margin == 0;
    if (out.equality || out.violation) {
      for (const auto& m : ms) out.witness.push_back(serialize_message(m));
      out.witness.push_back(serialize_message(f));
    }
  } else {
    out.violation = !in_set(f, prime);
    out.margin = out.violation ? -1.0 : 1.0;
    out.suspect = out.violation;
  }
  return out;
}

template <typename T>
SampleOutcome eval_ineqb7(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const SetSpec s1p = SetSpec::make(SetVariant::S1prime, q, b);
  auto fixed = draw_union_list<T>(b - 1, s1p, rng, opt);
  const Message<T> a = sample_message<T>(s1p, rng, opt);
  const Message<T> bb = sample_message<T>(s1p, rng, opt);

  std::vector<Message<T>> with_a = fixed;
  with_a.push_back(a);
  std::vector<Message<T>> with_b = fixed;
  with_b.push_back(bb);

  const T big_a = product_sum<T>(std::span<const Message<T>>(with_a));
  const Message<T> fa = update<T>(std::span<const Message<T>>(with_a), q);
  const Message<T> fb = update<T>(std::span<const Message<T>>(with_b), q);

  T pow_qm1(1);
  for (int i = 0; i < b; ++i) pow_qm1 *= T(q - 1);
  const T lhs = l1_distance(fa, fb) * pow_qm1 * big_a;
  const T rhs = l1_distance(a, bb);

  SampleOutcome out = compare_leq(lhs, rhs);
  if constexpr (arith_traits<T>::is_exact) {
    if (out.equality || out.violation) {
      for (const auto& m : fixed) out.witness.push_back(serialize_message(m));
      out.witness.push_back(serialize_message(a));
      out.witness.push_back(serialize_message(bb));
    }
  }
  return out;
}

template <typename T>
SampleOutcome eval_bb8(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const int s = uniform_int(rng, 0, b);
  const SetSpec s1p = SetSpec::make(SetVariant::S1prime, q, b);
  const SetSpec s2 = SetSpec::make(SetVariant::S2, q, b);
  std::vector<Message<T>> ms;
  ms.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < b - s; ++i) ms.push_back(sample_message<T>(s1p, rng, opt));
  for (int i = 0; i < s; ++i) ms.push_back(sample_message<T>(s2, rng, opt));
  const T p = product_sum<T>(std::span<const Message<T>>(ms));

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    if (const auto exact = bound_lemma_bb_exact(q, b, s)) {
      out = compare_leq(*exact, p);
      if (out.equality || out.violation)
        for (const auto& m : ms) out.witness.push_back(serialize_message(m));
    } else {
      out = compare_geq_f50(p, bound_lemma_bb_float50(q, b, s));
    }
  } else {
    out = compare_geq_f50(p, bound_lemma_bb_float50(q, b, s));
  }
  return out;
}

template <typename T>
SampleOutcome eval_prodnew9(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const SetSpec s1p = SetSpec::make(SetVariant::S1prime, q, b);
  std::vector<Message<T>> ms;
  ms.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) ms.push_back(sample_message<T>(s1p, rng, opt));
  const T p = product_sum<T>(std::span<const Message<T>>(ms));

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    if (const auto exact = bound_lemma_prodnew_exact(q, b)) {
      out = compare_leq(*exact, p);
      if (out.equality || out.violation)
        for (const auto& m : ms) out.witness.push_back(serialize_message(m));
    } else {
      out = compare_geq_f50(p, bound_lemma_prodnew_float50(q, b));
    }
  } else {
    out = compare_geq_f50(p, bound_lemma_prodnew_float50(q, b));
  }
  return out;
}

template <typename T>
SampleOutcome eval_claim_prodbd(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const SetSpec s1 = SetSpec::make(SetVariant::S1, q, b);
  const Message<T> g = sample_message<T>(s1, rng, opt);
  const Message<T> x = sample_message<T>(s1, rng, opt);
  T p{};
  for (std::size_t i = 0; i < 4; ++i) p += g[i] * x[i];

  SampleOutcome out = compare_leq(p, arith_traits<T>::ratio(1, 3));
  if constexpr (arith_traits<T>::is_exact) {
    if (out.equality || out.violation) out.witness = serialize_all<T>({&g, &x});
  }
  return out;
}

template <typename T>
SampleOutcome eval_ineqb12(Rng& rng, const SamplerOptions& opt) {
  const SetSpec prime = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  const auto [a, bb] = sample_coupled_pair<T>(rng, opt, /*allow_s2_equal=*/false);
  const Message<T> g = sample_union_member<T>(prime, rng, opt, kS2MixProb);

  // Per-child contraction factor 1/(9A) with A = sum_i gamma_i alpha_i, the
  // q=4,b=2 instance of the general bound (the fixed child supplies z).
  T big_a{};
  for (std::size_t i = 0; i < 4; ++i) big_a += g[i] * a[i];
  const Message<T> fa = update<T>({a, g}, 4);
  const Message<T> fb = update<T>({bb, g}, 4);
  const T lhs = l1_distance(fa, fb) * T(9) * big_a;
  const T rhs = l1_distance(a, bb);

  SampleOutcome out = compare_leq(lhs, rhs);
  if constexpr (arith_traits<T>::is_exact) {
    if (out.equality || out.violation) out.witness = serialize_all<T>({&a, &bb, &g});
  }
  return out;
}

template <typename T>
SampleOutcome eval_sineq13(Rng& rng, const SamplerOptions& opt) {
  const auto [a, bb] = sample_coupled_pair<T>(rng, opt, /*allow_s2_equal=*/false);
  const Message<T> g = sample_q4b2_message<T>(rng, opt, /*max_thirds=*/1);

  const Message<T> fa = update<T>({a, g}, 4);
  const Message<T> fb = update<T>({bb, g}, 4);
  const T lhs = arith_traits<T>::ratio(49, 24) * l1_distance(fa, fb);
  const T rhs = l1_distance(a, bb);

  SampleOutcome out = compare_leq(lhs, rhs);
  if constexpr (arith_traits<T>::is_exact) {
    if (out.equality || out.violation) out.witness = serialize_all<T>({&a, &bb, &g});
  }
  return out;
}

int classify_l14_shape(const Message<Rational>& g, const Message<Rational>& x) {
  const Rational third(1, 3), sixth(1, 6);
  const SetSpec s2 = SetSpec::make(SetVariant::S2, 4, 2);
  const auto s2_cross = [&](const Message<Rational>& u, const Message<Rational>& v) {
    if (!in_set(u, s2)) return false;
    for (std::size_t i = 0; i < 4; ++i)
      if (u[i] == 0) return v[i] == third;
    return false;
  };
  if (s2_cross(g, x)) return 1;
  if (s2_cross(x, g)) return 2;
  // complementary permutations of (1/6,1/6,1/3,1/3)
  bool complementary = true;
  int thirds_g = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (g[i] == third)
      ++thirds_g;
    else if (g[i] != sixth)
      complementary = false;
    if (!((g[i] == third && x[i] == sixth) || (g[i] == sixth && x[i] == third)))
      complementary = false;
  }
  if (complementary && thirds_g == 2) return 3;
  return 0;
}

template <typename T>
SampleOutcome eval_prodlb14(Rng& rng, const SamplerOptions& opt) {
  const SetSpec prime = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  const Message<T> g = sample_union_member<T>(prime, rng, opt, kS2MixProb);
  const Message<T> x = sample_union_member<T>(prime, rng, opt, kS2MixProb);
  T p{};
  for (std::size_t i = 0; i < 4; ++i) p += g[i] * x[i];

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    const Rational secondary = lemma14_secondary_bound();
    if (p >= secondary) {
      out.margin = rational_to_double(p - secondary);
      return out;
    }
    const int shape = (p == Rational(2, 9)) ? classify_l14_shape(g, x) : 0;
    if (shape != 0) {
      out.equality = true;
      out.shape = shape;
      out.witness = serialize_all<T>({&g, &x});
    } else {
      out.violation = true;
      out.margin = rational_to_double(p - secondary);
      out.witness = serialize_all<T>({&g, &x});
    }
  } else {
    const double secondary = 49.0 / 216.0;
    out.margin = arith_traits<T>::to_double(p) - secondary;
    out.suspect = out.margin < 0;  // both the 2/9 branch and any violation
    out.violation = false;         // decided by the exact recheck
  }
  return out;
}

template <typename T>
SampleOutcome eval_contractb5(int q, int b, Rng& rng, const SamplerOptions& opt) {
  const SetSpec s1p = SetSpec::make(SetVariant::S1prime, q, b);
  const SetSpec s2 = SetSpec::make(SetVariant::S2, q, b);
  const int s = uniform_int(rng, 0, b);

  std::vector<Message<T>> as, bs;
  as.reserve(static_cast<std::size_t>(b));
  bs.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < s; ++i) {
    Message<T> shared = sample_message<T>(s2, rng, opt);
    as.push_back(shared);
    bs.push_back(std::move(shared));
  }
  for (int i = s; i < b; ++i) {
    as.push_back(sample_message<T>(s1p, rng, opt));
    bs.push_back(sample_message<T>(s1p, rng, opt));
  }

  const Message<T> zeta = update<T>(std::span<const Message<T>>(as), q);
  const Message<T> eta = update<T>(std::span<const Message<T>>(bs), q);
  const T lhs = l1_distance(zeta, eta);
  T maxdist{};
  for (int i = 0; i < b; ++i) {
    const T d = l1_distance(as[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(i)]);
    if (d > maxdist) maxdist = d;
  }

  SampleOutcome out;
  if constexpr (arith_traits<T>::is_exact) {
    if (const auto exact = kappa_exact(q, b)) {
      out = compare_leq(lhs, *exact * maxdist);
      if (out.equality && lhs == T{}) out.equality = false;  // all-shared trivial case
      if (out.equality || out.violation) {
        for (const auto& m : as) out.witness.push_back(serialize_message(m));
        for (const auto& m : bs) out.witness.push_back(serialize_message(m));
      }
    } else {
      const Float50 rhs = kappa_float50(q, b) * rational_to_float50(maxdist);
      const Float50 margin = rhs - rational_to_float50(lhs);
      out.margin = margin.convert_to<double>();
      out.violation = margin < -Float50(kFloat50Band);
    }
  } else {
    out = compare_leq(lhs, kappa(q, b) * maxdist);
  }
  return out;
}

template <typename T>
SampleOutcome eval_contract1_10(Rng& rng, const SamplerOptions& opt) {
  const auto [a, bb] = sample_coupled_pair<T>(rng, opt, /*allow_s2_equal=*/true);
  const auto [a2, b2] = sample_coupled_pair<T>(rng, opt, /*allow_s2_equal=*/true);

  const Message<T> za = update<T>({a, a2}, 4);
  const Message<T> zb = update<T>({bb, b2}, 4);
  const T lhs = l1_distance(za, zb);
  const T d1 = l1_distance(a, bb);
  const T d2 = l1_distance(a2, b2);
  const T rhs = arith_traits<T>::ratio(48, 49) * (d1 > d2 ? d1 : d2);

  SampleOutcome out = compare_leq(lhs, rhs);
  if (out.equality && lhs == T{}) out.equality = false;  // trivial 0 <= 0 pairs
  if constexpr (arith_traits<T>::is_exact) {
    if (out.violation || out.equality) out.witness = serialize_all<T>({&a, &bb, &a2, &b2});
  }
  return out;
}

template <typename T>
SampleOutcome eval_sample(LemmaId id, int q, int b, Rng& rng, const SamplerOptions& opt) {
  switch (id) {
    case LemmaId::Prod4: return eval_prod4<T>(q, b, rng, opt);
    case LemmaId::ClaimSp: return eval_claim_sp<T>(q, b, rng, opt);
    case LemmaId::Closure6: return eval_closure<T>(q, b, SetVariant::S1prime, rng, opt);
    case LemmaId::Ineqb7: return eval_ineqb7<T>(q, b, rng, opt);
    case LemmaId::Bb8: return eval_bb8<T>(q, b, rng, opt);
    case LemmaId::Prodnew9: return eval_prodnew9<T>(q, b, rng, opt);
    case LemmaId::ClaimProdbd: return eval_claim_prodbd<T>(q, b, rng, opt);
    case LemmaId::Closure11: return eval_closure<T>(q, b, SetVariant::S1prime_q4b2, rng, opt);
    case LemmaId::Ineqb12: return eval_ineqb12<T>(rng, opt);
    case LemmaId::Sineq13: return eval_sineq13<T>(rng, opt);
    case LemmaId::Prodlb14: return eval_prodlb14<T>(rng, opt);
    case LemmaId::Contractb5: return eval_contractb5<T>(q, b, rng, opt);
    case LemmaId::Contract1_10: return eval_contract1_10<T>(rng, opt);
  }
  throw DomainError("unknown lemma id");
}

}  // namespace

const std::vector<LemmaInfo>& lemma_registry() {
  static const std::vector<LemmaInfo> registry{
      {LemmaId::Prod4, "4", "prod", false},
      {LemmaId::ClaimSp, "clm:sp", "sp", false},
      {LemmaId::Closure6, "6", "closure", false},
      {LemmaId::Ineqb7, "7", "ineqb", false},
      {LemmaId::Bb8, "8", "bb", false},
      {LemmaId::Prodnew9, "9", "prodnew", false},
      {LemmaId::ClaimProdbd, "clm:prodbd", "prodbd", true},
      {LemmaId::Closure11, "11", "closure4", true},
      {LemmaId::Ineqb12, "12", "ineqb4", true},
      {LemmaId::Sineq13, "13", "sineq3", true},
      {LemmaId::Prodlb14, "14", "prodlb4", true},
      {LemmaId::Contractb5, "5", "contractb", false},
      {LemmaId::Contract1_10, "10", "contract1", true},
  };
  return registry;
}

const LemmaInfo& lemma_info(LemmaId id) {
  for (const auto& info : lemma_registry())
    if (info.id == id) return info;
  throw DomainError("unknown lemma id");
}

std::optional<LemmaId> parse_lemma_token(const std::string& token) {
  for (const auto& info : lemma_registry())
    if (token == info.key || token == info.name) return info.id;
  // tolerate a "lemma" prefix ("lemma5" -> "5")
  if (token.rfind("lemma", 0) == 0 && token.size() > 5) return parse_lemma_token(token.substr(5));
  return std::nullopt;
}

bool lemma_supports(LemmaId id, int q, int b) {
  if (b < 1 || q < 3) return false;
  switch (id) {
    case LemmaId::Prod4:
      return q > b;
    case LemmaId::ClaimSp:
    case LemmaId::Closure6:
    case LemmaId::Ineqb7:
    case LemmaId::Bb8:
    case LemmaId::Prodnew9:
    case LemmaId::Contractb5:
      return q >= b + 2;
    case LemmaId::ClaimProdbd:
    case LemmaId::Closure11:
    case LemmaId::Ineqb12:
    case LemmaId::Sineq13:
    case LemmaId::Prodlb14:
    case LemmaId::Contract1_10:
      return q == 4 && b == 2;
  }
  return false;
}

std::string lemma_regime_description(LemmaId id) {
  if (lemma_info(id).q4b2_only) return "q=4, b=2";
  if (id == LemmaId::Prod4) return "q > b >= 1";
  return "q >= b+2";
}

namespace {

struct PartialResult {
  std::int64_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::int64_t equality_count = 0;
  std::array<std::int64_t, 3> shape_counts{0, 0, 0};
  std::vector<EqualityWitness> witnesses;
  std::int64_t rechecked = 0;
};

}  // namespace

VerificationReport verify_lemma(const VerifyConfig& cfg) {
  if (!lemma_supports(cfg.lemma, cfg.q, cfg.b))
    throw UnsupportedRegimeError("lemma " + std::string(lemma_info(cfg.lemma).key) +
                                 " needs " + lemma_regime_description(cfg.lemma) + ", got q=" +
                                 std::to_string(cfg.q) + ", b=" + std::to_string(cfg.b));
  if (cfg.samples < 1) throw DomainError("verify needs at least one sample");
  if (cfg.p_edge < 0 || cfg.p_edge > 1) throw DomainError("p_edge must lie in [0,1]");

  const int workers = std::max(1, std::min<int>(resolve_workers(cfg.workers),
                                                static_cast<int>(cfg.samples)));
  const std::int64_t chunk = (cfg.samples + workers - 1) / workers;
  SamplerOptions opt;
  opt.p_edge = cfg.p_edge;

  const auto lemma_tag = static_cast<std::uint64_t>(cfg.lemma);
  const std::uint64_t qb_tag = (static_cast<std::uint64_t>(cfg.q) << 32) |
                               static_cast<std::uint64_t>(cfg.b);

  std::vector<PartialResult> partials(static_cast<std::size_t>(workers));
  auto run_chunk = [&](int w) {
    PartialResult& part = partials[static_cast<std::size_t>(w)];
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(cfg.samples, lo + chunk);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      const std::uint64_t sample_seed =
          derive_seed(cfg.seed, lemma_tag, qb_tag, static_cast<std::uint64_t>(idx));
      SampleOutcome out;
      if (cfg.mode == ArithMode::Rational) {
        Rng rng = make_rng(sample_seed);
        out = eval_sample<Rational>(cfg.lemma, cfg.q, cfg.b, rng, opt);
      } else {
        Rng rng = make_rng(sample_seed);
        out = eval_sample<double>(cfg.lemma, cfg.q, cfg.b, rng, opt);
        if (out.suspect || out.violation) {
          Rng exact_rng = make_rng(sample_seed);
          out = eval_sample<Rational>(cfg.lemma, cfg.q, cfg.b, exact_rng, opt);
          ++part.rechecked;
        }
      }
      if (out.violation) ++part.violations;
      if (out.equality) {
        ++part.equality_count;
        if (out.shape >= 1 && out.shape <= 3)
          ++part.shape_counts[static_cast<std::size_t>(out.shape - 1)];
      }
      if ((out.equality || out.violation) && !out.witness.empty())
        part.witnesses.push_back(EqualityWitness{idx, out.shape, std::move(out.witness)});
      part.worst_margin = std::min(part.worst_margin, out.margin);
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
    for (auto& t : threads) t.join();
  }

  const LemmaInfo& info = lemma_info(cfg.lemma);
  VerificationReport report;
  report.lemma_key = info.key;
  report.lemma_name = info.name;
  report.q = cfg.q;
  report.b = cfg.b;
  report.samples = cfg.samples;
  report.seed = cfg.seed;
  report.p_edge = cfg.p_edge;
  report.mode = arith_mode_name(cfg.mode);
  for (const auto& part : partials) {
    report.violations += part.violations;
    report.equality_count += part.equality_count;
    report.rechecked += part.rechecked;
    for (std::size_t i = 0; i < 3; ++i) report.shape_counts[i] += part.shape_counts[i];
    report.worst_margin = std::min(report.worst_margin, part.worst_margin);
    for (const auto& w : part.witnesses)
      if (static_cast<int>(report.witnesses.size()) < cfg.witness_cap)
        report.witnesses.push_back(w);
  }
  if (!std::isfinite(report.worst_margin)) report.worst_margin = 0.0;
  return report;
}

std::vector<VerificationReport> run_verify_suite(const VerifySuiteConfig& cfg) {
  std::vector<LemmaId> lemmas = cfg.lemmas;
  if (cfg.all || lemmas.empty()) {
    lemmas.clear();
    for (const auto& info : lemma_registry()) lemmas.push_back(info.id);
  }
  if (cfg.qs.empty() || cfg.bs.empty()) throw DomainError("verify needs nonempty q and b lists");

  std::vector<VerificationReport> reports;
  for (const LemmaId id : lemmas) {
    bool ran_any = false;
    for (const int b : cfg.bs) {
      for (const int q : cfg.qs) {
        if (!lemma_supports(id, q, b)) continue;
        VerifyConfig one;
        one.lemma = id;
        one.q = q;
        one.b = b;
        one.samples = cfg.samples;
        one.seed = cfg.seed;
        one.p_edge = cfg.p_edge;
        one.mode = cfg.mode;
        one.workers = cfg.workers;
        reports.push_back(verify_lemma(one));
        ran_any = true;
      }
    }
    if (!ran_any && !cfg.all)
      throw UnsupportedRegimeError("lemma " + std::string(lemma_info(id).key) +
                                   " supports no requested (q, b); it needs " +
                                   lemma_regime_description(id));
  }
  return reports;
}

}  // namespace bethemix
