#include "bethemix/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace bethemix {

namespace {

/// P(a uniform simplex point fits coordinate cap t), by inclusion-exclusion:
/// sum_k (-1)^k C(q,k) (1 - k t)_+^(q-1). Used only to decide whether
/// rejection sampling is worth attempting before the repair fallback.
double box_acceptance_probability(int q, double t) {
  double p = 0.0, binom = 1.0;
  for (int k = 0; k <= q; ++k) {
    const double base = 1.0 - k * t;
    if (base <= 0.0) break;
    p += (k % 2 ? -1.0 : 1.0) * binom * std::pow(base, q - 1);
    binom = binom * (q - k) / (k + 1);
  }
  return p;
}

template <typename T>
T repair_eps() {
  if constexpr (arith_traits<T>::is_exact)
    return T{};
  else
    return 1e-14;
}

template <typename T>
bool close_enough(const T& a, const T& b) {
  const T eps = repair_eps<T>();
  return a >= b - eps && a <= b + eps;
}

template <typename T>
T draw_on_grid(const T& lo, const T& width, Rng& rng, int grain_bits) {
  const std::uint64_t mask = (std::uint64_t(1) << grain_bits) - 1;
  const std::uint64_t k = rng() & mask;
  return lo + width * arith_traits<T>::unit_from_bits(k, grain_bits);
}

/// Uniform simplex point as integer spacings of the dyadic grid: q values
/// summing to exactly 2^grain_bits.
void simplex_spacings(int q, Rng& rng, int grain_bits, std::vector<std::uint64_t>& out) {
  const std::uint64_t mask = (std::uint64_t(1) << grain_bits) - 1;
  std::vector<std::uint64_t> cuts(static_cast<std::size_t>(q) + 1);
  cuts[0] = 0;
  cuts[static_cast<std::size_t>(q)] = mask + 1;
  for (int i = 1; i < q; ++i) cuts[static_cast<std::size_t>(i)] = rng() & mask;
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  out.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    out[static_cast<std::size_t>(i)] =
        cuts[static_cast<std::size_t>(i) + 1] - cuts[static_cast<std::size_t>(i)];
}

template <typename T>
void shuffle_order(std::vector<int>& order, Rng& rng) {
  for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
    const int j = uniform_int(rng, 0, i);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
}

/// Entries in [lo, hi] with pinned coordinates honored where possible and the
/// total repaired to `target` by walking coordinates in random order (free
/// coordinates first, pinned last so pins survive whenever slack allows).
template <typename T>
std::optional<std::vector<T>> box_fill(int q, const T& lo, const T& hi, const T& target,
                                       const std::vector<std::optional<T>>& pins, Rng& rng,
                                       int grain_bits) {
  std::vector<T> x(static_cast<std::size_t>(q));
  std::vector<int> free_idx, pinned_idx;
  T pinned_sum{};
  for (int i = 0; i < q; ++i) {
    if (pins[static_cast<std::size_t>(i)].has_value()) {
      x[static_cast<std::size_t>(i)] = *pins[static_cast<std::size_t>(i)];
      pinned_sum += x[static_cast<std::size_t>(i)];
      pinned_idx.push_back(i);
    } else {
      free_idx.push_back(i);
    }
  }
  const T nfree(static_cast<int>(free_idx.size()));
  if (pinned_sum + nfree * lo > target + repair_eps<T>()) return std::nullopt;
  if (pinned_sum + nfree * hi < target - repair_eps<T>()) return std::nullopt;

  const T width = hi - lo;
  for (int i : free_idx) x[static_cast<std::size_t>(i)] = draw_on_grid(lo, width, rng, grain_bits);

  shuffle_order<T>(free_idx, rng);
  std::vector<int> order = free_idx;
  order.insert(order.end(), pinned_idx.begin(), pinned_idx.end());

  T sum{};
  for (const T& v : x) sum += v;
  for (int i : order) {
    if (close_enough(sum, target)) break;
    T& v = x[static_cast<std::size_t>(i)];
    if (sum > target) {
      const T d = std::min(sum - target, v - lo);
      v -= d;
      sum -= d;
    } else {
      const T d = std::min(target - sum, hi - v);
      v += d;
      sum += d;
    }
  }
  if (!close_enough(sum, target)) return std::nullopt;
  return x;
}

/// Box-set sampler over [lo, hi]^q intersected with the simplex. Rejection
/// draws come from the shifted simplex x = lo + (1 - q*lo) * y, so only the
/// upper bound can fail; the accept test runs on the integer spacings before
/// any scalar is materialized. When the acceptance odds are hopeless the
/// draw goes straight to the repair fallback.
template <typename T>
Message<T> sample_box_set(const SetSpec& spec, const Rational& lo_rat, const Rational& hi_rat,
                          Rng& rng, const SamplerOptions& opt) {
  using tr = arith_traits<T>;
  const int q = spec.q;
  T lo, hi;
  if constexpr (tr::is_exact) {
    lo = lo_rat;
    hi = hi_rat;
  } else {
    lo = rational_to_double(lo_rat);
    hi = rational_to_double(hi_rat);
  }
  const bool edge_draw = uniform_unit(rng) < opt.p_edge;

  const Rational span = 1 - q * lo_rat;
  if (!edge_draw && span > 0) {
    // spacing_i / 2^g <= (hi-lo)/span  <=>  spacing_i <= floor(t * 2^g)
    const Rational t = (hi_rat - lo_rat) / span;
    if (box_acceptance_probability(q, rational_to_double(t)) >= 0.02) {
      const std::uint64_t cap_scaled =
          static_cast<std::uint64_t>(BigInt((numerator(t) << opt.grain_bits) / denominator(t)));
      std::vector<std::uint64_t> spacings;
      const T span_t = tr::is_exact ? T(span) : T(rational_to_double(span));
      for (int attempt = 0; attempt < opt.max_rejections; ++attempt) {
        simplex_spacings(q, rng, opt.grain_bits, spacings);
        if (std::any_of(spacings.begin(), spacings.end(),
                        [&](std::uint64_t s) { return s > cap_scaled; }))
          continue;
        std::vector<T> x(static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i)
          x[static_cast<std::size_t>(i)] =
              lo + span_t * tr::unit_from_bits(spacings[static_cast<std::size_t>(i)], opt.grain_bits);
        Message<T> m = Message<T>::unchecked(q, std::move(x));
        if (in_set(m, spec)) return m;
      }
    }
  }

  const std::vector<std::optional<T>> no_pins(static_cast<std::size_t>(q));
  for (int attempt = 0; attempt < opt.repair_attempts; ++attempt) {
    std::vector<std::optional<T>> pins(static_cast<std::size_t>(q));
    if (edge_draw) {
      const int npins = uniform_int(rng, 1, q - 1);
      for (int k = 0; k < npins; ++k) {
        const int i = uniform_int(rng, 0, q - 1);
        pins[static_cast<std::size_t>(i)] = (rng() & 1) ? hi : lo;
      }
    }
    auto x = box_fill<T>(q, lo, hi, T(1), edge_draw ? pins : no_pins, rng, opt.grain_bits);
    if (!x) continue;
    Message<T> m = Message<T>::unchecked(q, std::move(*x));
    if (in_set(m, spec)) return m;
  }
  throw SamplerStuckError("box sampler failed for " + std::string(set_variant_name(spec.variant)));
}

/// Fill `positions` of a length-4 vector with values in [1/6, 11/36] summing
/// to `target`; occasional exact-bound pins at rate p_edge.
template <typename T>
std::optional<std::vector<T>> q4_gap_fill(const std::vector<int>& positions, const T& target,
                                          Rng& rng, const SamplerOptions& opt) {
  using tr = arith_traits<T>;
  const T lo = tr::ratio(1, 6), hi = tr::ratio(11, 36);
  const int n = static_cast<int>(positions.size());
  std::vector<std::optional<T>> pins(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (uniform_unit(rng) < opt.p_edge / 2) pins[static_cast<std::size_t>(i)] = (rng() & 1) ? hi : lo;
  auto filled = box_fill<T>(n, lo, hi, target, pins, rng, opt.grain_bits);
  if (!filled) return std::nullopt;
  std::vector<T> out(4);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] =
      (*filled)[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace

template <typename T>
Message<T> sample_q4b2_message(Rng& rng, const SamplerOptions& opt, int max_thirds) {
  using tr = arith_traits<T>;
  const SetSpec spec = SetSpec::make(SetVariant::S1prime_q4b2, 4, 2);
  const T third = tr::ratio(1, 3), sixth = tr::ratio(1, 6);

  for (int attempt = 0; attempt < opt.repair_attempts; ++attempt) {
    const double r = uniform_unit(rng);
    std::optional<std::vector<T>> x;
    if (max_thirds >= 2 && r < opt.p_edge * 0.3) {
      // the unique two-thirds pattern: a permutation of (1/6,1/6,1/3,1/3)
      std::vector<int> idx{0, 1, 2, 3};
      shuffle_order<T>(idx, rng);
      x = std::vector<T>(4);
      (*x)[static_cast<std::size_t>(idx[0])] = third;
      (*x)[static_cast<std::size_t>(idx[1])] = third;
      (*x)[static_cast<std::size_t>(idx[2])] = sixth;
      (*x)[static_cast<std::size_t>(idx[3])] = sixth;
    } else if (max_thirds >= 1 && r < opt.p_edge) {
      const int p = uniform_int(rng, 0, 3);
      std::vector<int> rest;
      for (int i = 0; i < 4; ++i)
        if (i != p) rest.push_back(i);
      x = q4_gap_fill<T>(rest, tr::ratio(2, 3), rng, opt);
      if (x) (*x)[static_cast<std::size_t>(p)] = third;
    } else {
      x = q4_gap_fill<T>({0, 1, 2, 3}, T(1), rng, opt);
    }
    if (!x) continue;
    Message<T> m = Message<T>::unchecked(4, std::move(*x));
    if (in_set(m, spec)) return m;
  }
  throw SamplerStuckError("q=4,b=2 sampler failed");
}

template <typename T>
Message<T> sample_message(const SetSpec& spec, Rng& rng, const SamplerOptions& opt) {
  switch (spec.variant) {
    case SetVariant::S2: {
      const int zero_at = uniform_int(rng, 1, spec.q);
      return pinned_message<T>(spec.q, zero_at);
    }
    case SetVariant::S1:
      return sample_box_set<T>(spec, Rational(0), Rational(1, spec.q - 1), rng, opt);
    case SetVariant::S1prime:
      return sample_box_set<T>(spec, SetSpec::s1prime_lower_bound(spec.q, spec.b),
                               Rational(1, spec.q - 1), rng, opt);
    case SetVariant::S1prime_q4b2:
      return sample_q4b2_message<T>(rng, opt, 2);
  }
  throw DomainError("unknown set variant");
}

template <typename T>
Message<T> sample_union_member(const SetSpec& prime_spec, Rng& rng, const SamplerOptions& opt,
                               double s2_prob) {
  if (uniform_unit(rng) < s2_prob)
    return sample_message<T>(SetSpec::make(SetVariant::S2, prime_spec.q, prime_spec.b), rng, opt);
  return sample_message<T>(prime_spec, rng, opt);
}

template <typename T>
std::pair<Message<T>, Message<T>> sample_coupled_pair(Rng& rng, const SamplerOptions& opt,
                                                      bool allow_s2_equal) {
  using tr = arith_traits<T>;
  const T third = tr::ratio(1, 3);

  if (uniform_unit(rng) < 0.15) {
    Message<T> m = (allow_s2_equal && uniform_unit(rng) < 0.3)
                       ? sample_message<T>(SetSpec::make(SetVariant::S2, 4, 2), rng, opt)
                       : sample_q4b2_message<T>(rng, opt, 2);
    return {m, m};
  }

  const Message<T> a = sample_q4b2_message<T>(rng, opt, 1);
  int third_at = -1;
  for (int i = 0; i < 4; ++i)
    if (arith_traits<T>::eq(a[static_cast<std::size_t>(i)], third, kDefaultEpsTol)) third_at = i;

  for (int attempt = 0; attempt < opt.repair_attempts; ++attempt) {
    std::optional<std::vector<T>> x;
    if (third_at < 0) {
      x = q4_gap_fill<T>({0, 1, 2, 3}, T(1), rng, opt);
    } else {
      std::vector<int> rest;
      for (int i = 0; i < 4; ++i)
        if (i != third_at) rest.push_back(i);
      x = q4_gap_fill<T>(rest, tr::ratio(2, 3), rng, opt);
      if (x) (*x)[static_cast<std::size_t>(third_at)] = third;
    }
    if (!x) continue;
    Message<T> b = Message<T>::unchecked(4, std::move(*x));
    if (in_set(b, SetSpec::make(SetVariant::S1prime_q4b2, 4, 2)) && coupled(a, b)) return {a, b};
  }
  throw SamplerStuckError("coupled pair sampler failed");
}

template Message<Rational> sample_message<Rational>(const SetSpec&, Rng&, const SamplerOptions&);
template Message<double> sample_message<double>(const SetSpec&, Rng&, const SamplerOptions&);
template Message<Rational> sample_q4b2_message<Rational>(Rng&, const SamplerOptions&, int);
template Message<double> sample_q4b2_message<double>(Rng&, const SamplerOptions&, int);
template std::pair<Message<Rational>, Message<Rational>> sample_coupled_pair<Rational>(
    Rng&, const SamplerOptions&, bool);
template std::pair<Message<double>, Message<double>> sample_coupled_pair<double>(
    Rng&, const SamplerOptions&, bool);
template Message<Rational> sample_union_member<Rational>(const SetSpec&, Rng&,
                                                         const SamplerOptions&, double);
template Message<double> sample_union_member<double>(const SetSpec&, Rng&, const SamplerOptions&,
                                                     double);

}  // namespace bethemix
