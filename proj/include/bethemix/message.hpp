#pragma once

#include <span>
#include <string>
#include <vector>

#include "bethemix/arith.hpp"
#include "bethemix/errors.hpp"
#include "bethemix/exact.hpp"

namespace bethemix {

/// A message of the coloring recursion: a probability vector over [q] whose
/// entries never exceed 1/(q-1). Immutable after construction. Colors are
/// 1-indexed at the API surface; storage is a plain 0-indexed vector.
template <typename T>
class Message {
 public:
  Message(int q, std::vector<T> entries, double eps_tol = kDefaultEpsTol);

  /// Skips invariant validation. Only for construction sites where the
  /// invariants hold algebraically (update outputs, pinned/uniform vectors)
  /// or a membership check follows immediately.
  static Message unchecked(int q, std::vector<T> entries) {
    return Message(q, std::move(entries), UncheckedTag{});
  }

  int q() const noexcept { return q_; }
  std::span<const T> entries() const noexcept { return entries_; }

  /// 1-indexed color accessor; throws DomainError outside [1, q].
  const T& entry(int color) const;

  /// 0-indexed raw accessor (no bounds check).
  const T& operator[](std::size_t i) const noexcept { return entries_[i]; }

  bool operator==(const Message&) const = default;

 private:
  struct UncheckedTag {};
  Message(int q, std::vector<T> entries, UncheckedTag) : q_(q), entries_(std::move(entries)) {}

  int q_;
  std::vector<T> entries_;
};

/// Message of a vertex pinned to `color`: 0 there, 1/(q-1) elsewhere.
template <typename T>
Message<T> pinned_message(int q, int color);

/// Message of a free leaf: all entries 1/q.
template <typename T>
Message<T> uniform_message(int q);

/// One step of the recursion: out_i = sum_{j != i} prod_l child_l[j],
/// normalized by (q-1) * sum_j prod_l child_l[j].
/// Throws ZeroDenominatorError when the normalizer vanishes.
template <typename T>
Message<T> update(std::span<const Message<T>> children, int q, double eps_tol = kDefaultEpsTol);

template <typename T>
Message<T> update(std::initializer_list<Message<T>> children, int q) {
  const std::vector<Message<T>> tmp(children);
  return update<T>(std::span<const Message<T>>(tmp), q);
}

/// sum_i |a_i - b_i|.
template <typename T>
T l1_distance(const Message<T>& a, const Message<T>& b);

/// sum_{j in [q]} prod_i messages[i][j]. Accepts any list length >= 1.
template <typename T>
T product_sum(std::span<const Message<T>> messages);

template <typename T>
T product_sum(std::initializer_list<Message<T>> messages) {
  const std::vector<Message<T>> tmp(messages);
  return product_sum<T>(std::span<const Message<T>>(tmp));
}

/// q=4 only: true iff a and b carry the value 1/3 in exactly the same positions.
template <typename T>
bool coupled(const Message<T>& a, const Message<T>& b, double eps_tol = kDefaultEpsTol);

enum class SetVariant { S1, S1prime, S2, S1prime_q4b2 };

const char* set_variant_name(SetVariant v);

/// Identifies one of the message sets. Use make() so the regime checks run.
struct SetSpec {
  SetVariant variant;
  int q;
  int b;

  static SetSpec make(SetVariant variant, int q, int b);

  /// Lower bound of the S1' box: (1 - 1/(q-b)) / (q-1).
  static Rational s1prime_lower_bound(int q, int b);
};

/// Membership test. Closed inequalities; in float mode every bound is widened
/// outward by eps_tol.
template <typename T>
bool in_set(const Message<T>& m, const SetSpec& spec, double eps_tol = kDefaultEpsTol);

/// Signed distance-to-boundary for box-style sets (S1, S1prime, S1prime_q4b2):
/// the minimum slack over all constraints, negative when violated. Exact.
Rational in_set_margin(const Message<Rational>& m, const SetSpec& spec);

/// {"q": q, "entries": ["num/den", ...]} for Rational; numbers for double.
std::string message_to_json(const Message<Rational>& m);
std::string message_to_json(const Message<double>& m);
Message<Rational> message_from_json(const std::string& text);

extern template class Message<Rational>;
extern template class Message<double>;

}  // namespace bethemix
