#pragma once

#include <utility>

#include "bethemix/message.hpp"
#include "bethemix/rng.hpp"

namespace bethemix {

struct SamplerOptions {
  /// Probability of constructing a boundary-attaining sample (entries pinned
  /// exactly at set bounds). Equality cases live on the boundary.
  double p_edge = 0.25;
  /// Uniform-simplex rejection attempts before the repair fallback.
  int max_rejections = 64;
  /// Dyadic grid resolution: draws land on multiples of 2^-grain_bits.
  int grain_bits = 16;
  /// Repair-scheme retries before SamplerStuckError.
  int repair_attempts = 64;
};

/// Draws a member of the given set. S2: a random permutation of the pinned
/// vector. Box sets: uniform simplex rejection first, then a clip-and-repair
/// fallback; with probability p_edge the draw pins entries at exact bounds.
/// Every sample is re-verified with in_set before it is returned.
template <typename T>
Message<T> sample_message(const SetSpec& spec, Rng& rng, const SamplerOptions& opt = {});

/// S1prime_q4b2 member with at most `max_thirds` entries equal to 1/3.
template <typename T>
Message<T> sample_q4b2_message(Rng& rng, const SamplerOptions& opt, int max_thirds);

/// Coupled pair for the q=4, b=2 analysis. Nontrivial pairs come from
/// S1prime_q4b2 sharing the same 1/3-positions; with `allow_s2_equal`,
/// occasionally an identical pair (possibly from S2) — the only way S2
/// members appear in coupled pairs.
template <typename T>
std::pair<Message<T>, Message<T>> sample_coupled_pair(Rng& rng, const SamplerOptions& opt,
                                                      bool allow_s2_equal);

/// Member of S1prime ∪ S2 (S2 with probability s2_prob).
template <typename T>
Message<T> sample_union_member(const SetSpec& prime_spec, Rng& rng, const SamplerOptions& opt,
                               double s2_prob);

extern template Message<Rational> sample_message<Rational>(const SetSpec&, Rng&,
                                                           const SamplerOptions&);
extern template Message<double> sample_message<double>(const SetSpec&, Rng&, const SamplerOptions&);

}  // namespace bethemix
