#include "bethemix/message.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

namespace bethemix {

namespace {

template <typename T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else {
    return rational_to_double(r);
  }
}

}  // namespace

const char* arith_mode_name(ArithMode mode) {
  return mode == ArithMode::Rational ? "rational" : "float";
}

ArithMode arith_mode_from_string(const std::string& name) {
  if (name == "rational") return ArithMode::Rational;
  if (name == "float") return ArithMode::Float;
  throw DomainError("unknown arithmetic mode: " + name);
}

template <typename T>
Message<T>::Message(int q, std::vector<T> entries, double eps_tol) : q_(q), entries_(std::move(entries)) {
  using tr = arith_traits<T>;
  if (q_ < 2) throw DomainError("message needs q >= 2, got q=" + std::to_string(q_));
  if (entries_.size() != static_cast<std::size_t>(q_))
    throw DomainError("message needs exactly q entries");
  const T hi = tr::ratio(1, q_ - 1);
  T sum{};
  for (const T& e : entries_) {
    if (!tr::geq(e, T{}, eps_tol) || !tr::leq(e, hi, eps_tol))
      throw DomainError("message entry outside [0, 1/(q-1)]");
    sum += e;
  }
  if (!tr::eq(sum, T(1), eps_tol)) throw DomainError("message entries must sum to 1");
}

template <typename T>
const T& Message<T>::entry(int color) const {
  if (color < 1 || color > q_) throw DomainError("color outside [q]: " + std::to_string(color));
  return entries_[static_cast<std::size_t>(color - 1)];
}

template <typename T>
Message<T> pinned_message(int q, int color) {
  if (q < 2) throw DomainError("pinned_message needs q >= 2");
  if (color < 1 || color > q) throw DomainError("pinned color outside [q]: " + std::to_string(color));
  std::vector<T> e(static_cast<std::size_t>(q), arith_traits<T>::ratio(1, q - 1));
  e[static_cast<std::size_t>(color - 1)] = T{};
  return Message<T>::unchecked(q, std::move(e));
}

template <typename T>
Message<T> uniform_message(int q) {
  if (q < 2) throw DomainError("uniform_message needs q >= 2");
  return Message<T>::unchecked(q, std::vector<T>(static_cast<std::size_t>(q), arith_traits<T>::ratio(1, q)));
}

template <typename T>
Message<T> update(std::span<const Message<T>> children, int q, double eps_tol) {
  if (children.empty()) throw DomainError("update needs at least one child message");
  for (const auto& c : children)
    if (c.q() != q) throw DomainError("update: child message q does not match");

  std::vector<T> z(static_cast<std::size_t>(q), T(1));
  for (const auto& c : children)
    for (int j = 0; j < q; ++j) z[static_cast<std::size_t>(j)] *= c[static_cast<std::size_t>(j)];

  T denom{};
  for (const T& zj : z) denom += zj;
  if (denom == T{})
    throw ZeroDenominatorError("update denominator is zero: unsatisfiable sub-instance");

  // out_i = (S - z_i)/((q-1)S) with 0 <= z_i <= S: entries lie in
  // [0, 1/(q-1)] and sum to 1 identically, so validation is skipped.
  const T scale = T(q - 1) * denom;
  std::vector<T> out(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    out[static_cast<std::size_t>(i)] = (denom - z[static_cast<std::size_t>(i)]) / scale;
  (void)eps_tol;
  return Message<T>::unchecked(q, std::move(out));
}

template <typename T>
T l1_distance(const Message<T>& a, const Message<T>& b) {
  if (a.q() != b.q()) throw DomainError("l1_distance: q mismatch");
  T acc{};
  for (int i = 0; i < a.q(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    acc += a[k] >= b[k] ? a[k] - b[k] : b[k] - a[k];
  }
  return acc;
}

template <typename T>
T product_sum(std::span<const Message<T>> messages) {
  if (messages.empty()) throw DomainError("product_sum needs at least one message");
  const int q = messages.front().q();
  for (const auto& m : messages)
    if (m.q() != q) throw DomainError("product_sum: q mismatch");
  T acc{};
  for (int j = 0; j < q; ++j) {
    T prod(1);
    for (const auto& m : messages) prod *= m[static_cast<std::size_t>(j)];
    acc += prod;
  }
  return acc;
}

template <typename T>
bool coupled(const Message<T>& a, const Message<T>& b, double eps_tol) {
  using tr = arith_traits<T>;
  if (a.q() != 4 || b.q() != 4) throw DomainError("coupled is defined for q=4 messages only");
  const T third = tr::ratio(1, 3);
  for (std::size_t i = 0; i < 4; ++i)
    if (tr::eq(a[i], third, eps_tol) != tr::eq(b[i], third, eps_tol)) return false;
  return true;
}

const char* set_variant_name(SetVariant v) {
  switch (v) {
    case SetVariant::S1: return "S1";
    case SetVariant::S1prime: return "S1prime";
    case SetVariant::S2: return "S2";
    case SetVariant::S1prime_q4b2: return "S1prime_q4b2";
  }
  return "?";
}

SetSpec SetSpec::make(SetVariant variant, int q, int b) {
  if (q < 3) throw DomainError("SetSpec needs q >= 3");
  if (b < 1) throw DomainError("SetSpec needs b >= 1");
  if (variant == SetVariant::S1prime && q < b + 2)
    throw DomainError("S1prime needs q >= b+2 (lower bound degenerates otherwise)");
  if (variant == SetVariant::S1prime_q4b2 && (q != 4 || b != 2))
    throw DomainError("S1prime_q4b2 requires q=4, b=2");
  return SetSpec{variant, q, b};
}

Rational SetSpec::s1prime_lower_bound(int q, int b) {
  if (q < b + 2) throw DomainError("S1prime lower bound needs q >= b+2");
  return Rational(q - b - 1, static_cast<long long>(q - b) * (q - 1));
}

namespace {

template <typename T>
bool in_s2(const Message<T>& m, double eps_tol) {
  using tr = arith_traits<T>;
  const T hi = tr::ratio(1, m.q() - 1);
  int zeros = 0, his = 0;
  for (int i = 0; i < m.q(); ++i) {
    const T& e = m[static_cast<std::size_t>(i)];
    if (tr::eq(e, T{}, eps_tol))
      ++zeros;
    else if (tr::eq(e, hi, eps_tol))
      ++his;
  }
  return zeros == 1 && his == m.q() - 1;
}

template <typename T>
bool in_q4b2(const Message<T>& m, double eps_tol) {
  using tr = arith_traits<T>;
  const T third = tr::ratio(1, 3), sixth = tr::ratio(1, 6), cap = tr::ratio(11, 36);
  int thirds = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const T& e = m[i];
    if (!tr::geq(e, sixth, eps_tol) || !tr::leq(e, third, eps_tol)) return false;
    if (tr::eq(e, third, eps_tol))
      ++thirds;
    else if (!tr::leq(e, cap, eps_tol))
      return false;
  }
  if (thirds == 2) {
    for (std::size_t i = 0; i < 4; ++i)
      if (!tr::eq(m[i], third, eps_tol) && !tr::eq(m[i], sixth, eps_tol)) return false;
  }
  return true;
}

}  // namespace

template <typename T>
bool in_set(const Message<T>& m, const SetSpec& spec, double eps_tol) {
  using tr = arith_traits<T>;
  if (m.q() != spec.q) throw DomainError("in_set: message q does not match spec q");
  T sum{};
  for (int i = 0; i < m.q(); ++i) sum += m[static_cast<std::size_t>(i)];
  if (!tr::eq(sum, T(1), eps_tol)) return false;

  const T hi = tr::ratio(1, spec.q - 1);
  switch (spec.variant) {
    case SetVariant::S1: {
      for (int i = 0; i < m.q(); ++i) {
        const T& e = m[static_cast<std::size_t>(i)];
        if (!tr::geq(e, T{}, eps_tol) || !tr::leq(e, hi, eps_tol)) return false;
      }
      return true;
    }
    case SetVariant::S1prime: {
      const T lo = from_rational<T>(SetSpec::s1prime_lower_bound(spec.q, spec.b));
      for (int i = 0; i < m.q(); ++i) {
        const T& e = m[static_cast<std::size_t>(i)];
        if (!tr::geq(e, lo, eps_tol) || !tr::leq(e, hi, eps_tol)) return false;
      }
      return true;
    }
    case SetVariant::S2:
      return in_s2(m, eps_tol);
    case SetVariant::S1prime_q4b2:
      return in_q4b2(m, eps_tol);
  }
  return false;
}

Rational in_set_margin(const Message<Rational>& m, const SetSpec& spec) {
  if (m.q() != spec.q) throw DomainError("in_set_margin: message q does not match spec q");
  if (spec.variant == SetVariant::S2)
    throw DomainError("in_set_margin is defined for box-style sets only");

  Rational margin = 2;  // no slack in these sets can exceed the simplex diameter
  Rational sum = 0;
  for (int i = 0; i < m.q(); ++i) sum += m[static_cast<std::size_t>(i)];
  if (sum != 1) margin = std::min(margin, Rational(-abs(sum - 1)));

  const Rational hi(1, spec.q - 1);
  Rational lo = 0;
  if (spec.variant == SetVariant::S1prime) lo = SetSpec::s1prime_lower_bound(spec.q, spec.b);
  if (spec.variant == SetVariant::S1prime_q4b2) lo = Rational(1, 6);

  const Rational third(1, 3), cap(11, 36), sixth(1, 6);
  int thirds = 0;
  for (int i = 0; i < m.q(); ++i) {
    const Rational& e = m[static_cast<std::size_t>(i)];
    margin = std::min(margin, Rational(e - lo));
    margin = std::min(margin, Rational(hi - e));
    if (spec.variant == SetVariant::S1prime_q4b2) {
      if (e == third)
        ++thirds;
      else
        margin = std::min(margin, Rational(cap - e));
    }
  }
  if (spec.variant == SetVariant::S1prime_q4b2 && thirds == 2) {
    for (int i = 0; i < m.q(); ++i) {
      const Rational& e = m[static_cast<std::size_t>(i)];
      if (e != third && e != sixth) margin = std::min(margin, Rational(-abs(e - sixth)));
    }
  }
  return margin;
}

std::string message_to_json(const Message<Rational>& m) {
  nlohmann::ordered_json j;
  j["q"] = m.q();
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (int i = 0; i < m.q(); ++i) arr.push_back(rational_to_string(m[static_cast<std::size_t>(i)]));
  return j.dump();
}

std::string message_to_json(const Message<double>& m) {
  nlohmann::ordered_json j;
  j["q"] = m.q();
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (int i = 0; i < m.q(); ++i) arr.push_back(m[static_cast<std::size_t>(i)]);
  return j.dump();
}

Message<Rational> message_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad message JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("q") || !j.contains("entries"))
    throw ParseError("message JSON needs {\"q\", \"entries\"}");
  const int q = j.at("q").get<int>();
  std::vector<Rational> entries;
  for (const auto& e : j.at("entries")) {
    if (e.is_string())
      entries.push_back(rational_from_string(e.get<std::string>()));
    else if (e.is_number())
      entries.push_back(rational_from_double(e.get<double>()));
    else
      throw ParseError("message entry must be a \"num/den\" string or a number");
  }
  return Message<Rational>(q, std::move(entries));
}

template class Message<Rational>;
template class Message<double>;

template Message<Rational> pinned_message<Rational>(int, int);
template Message<double> pinned_message<double>(int, int);
template Message<Rational> uniform_message<Rational>(int);
template Message<double> uniform_message<double>(int);
template Message<Rational> update<Rational>(std::span<const Message<Rational>>, int, double);
template Message<double> update<double>(std::span<const Message<double>>, int, double);
template Rational l1_distance<Rational>(const Message<Rational>&, const Message<Rational>&);
template double l1_distance<double>(const Message<double>&, const Message<double>&);
template Rational product_sum<Rational>(std::span<const Message<Rational>>);
template double product_sum<double>(std::span<const Message<double>>);
template bool coupled<Rational>(const Message<Rational>&, const Message<Rational>&, double);
template bool coupled<double>(const Message<double>&, const Message<double>&, double);
template bool in_set<Rational>(const Message<Rational>&, const SetSpec&, double);
template bool in_set<double>(const Message<double>&, const SetSpec&, double);

}  // namespace bethemix
