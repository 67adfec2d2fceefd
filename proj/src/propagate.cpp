#include "bethemix/propagate.hpp"

#include <unordered_map>

namespace bethemix {

namespace {

/// Post-order evaluation without recursion; the memo lives only for this call.
template <typename T>
Message<T> eval_message(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                        int node_id, double eps_tol) {
  if (q < 2) throw DomainError("propagate needs q >= 2");
  (void)tree.node(node_id);  // UnknownNodeError for bad ids

  std::unordered_map<int, Message<T>> memo;
  std::vector<std::pair<int, bool>> stack{{node_id, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);

    if (boundary.is_pinned(id)) {
      memo.emplace(id, pinned_message<T>(q, boundary.color_at(id)));
      continue;
    }
    if (n.children.empty()) {
      memo.emplace(id, uniform_message<T>(q));
      continue;
    }
    if (!expanded) {
      stack.emplace_back(id, true);
      for (int child : n.children) stack.emplace_back(child, false);
      continue;
    }
    std::vector<Message<T>> child_msgs;
    child_msgs.reserve(n.children.size());
    for (int child : n.children) child_msgs.push_back(memo.at(child));
    memo.emplace(id, update<T>(std::span<const Message<T>>(child_msgs), q, eps_tol));
    for (int child : n.children) memo.erase(child);
  }
  return memo.at(node_id);
}

}  // namespace

template <typename T>
Message<T> propagate(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                     int node_id, double eps_tol) {
  return eval_message<T>(tree, boundary, q, node_id, eps_tol);
}

template <typename T>
std::vector<T> root_marginal(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                             double eps_tol) {
  const TreeNode& root = tree.node(tree.root());
  if (boundary.is_pinned(root.id)) throw DomainError("root_marginal needs an unpinned root");
  if (q < 2) throw DomainError("root_marginal needs q >= 2");

  std::vector<T> prod(static_cast<std::size_t>(q), T(1));
  for (int child : root.children) {
    const Message<T> msg = propagate<T>(tree, boundary, q, child, eps_tol);
    for (int i = 0; i < q; ++i) prod[static_cast<std::size_t>(i)] *= msg[static_cast<std::size_t>(i)];
  }
  T total{};
  for (const T& p : prod) total += p;
  if (total == T{})
    throw ZeroDenominatorError("root marginal normalizer is zero: unsatisfiable boundary");
  for (T& p : prod) p /= total;
  return prod;
}

template Message<Rational> propagate<Rational>(const TreeInstance&, const BoundaryCondition&, int,
                                               int, double);
template Message<double> propagate<double>(const TreeInstance&, const BoundaryCondition&, int, int,
                                           double);
template std::vector<Rational> root_marginal<Rational>(const TreeInstance&, const BoundaryCondition&,
                                                       int, double);
template std::vector<double> root_marginal<double>(const TreeInstance&, const BoundaryCondition&,
                                                   int, double);

}  // namespace bethemix
