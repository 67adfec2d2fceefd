#include "bethemix/brute_force.hpp"

#include <cmath>

namespace bethemix {

namespace {

/// Preorder list of the subtree under `node_id` (parents before children).
std::vector<int> subtree_preorder(const TreeInstance& tree, int node_id) {
  std::vector<int> order;
  std::vector<int> stack{node_id};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& children = tree.node(id).children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

}  // namespace

std::vector<std::uint64_t> enumerate_colorings(const TreeInstance& tree,
                                               const BoundaryCondition& boundary, int q,
                                               int node_id, int cap) {
  if (q < 2) throw DomainError("enumeration needs q >= 2");
  const std::vector<int> order = subtree_preorder(tree, node_id);

  int free_count = 0;
  for (int id : order)
    if (!boundary.is_pinned(id)) ++free_count;
  if (free_count > cap)
    throw CapExceededError("subtree has " + std::to_string(free_count) +
                           " free vertices, cap is " + std::to_string(cap));
  if (free_count * std::log2(static_cast<double>(q)) > 62.0)
    throw CapExceededError("state space exceeds 64-bit counting range");

  const std::size_t n = order.size();
  std::vector<int> pos_in_order(n);
  std::vector<int> parent_pos(n, -1);
  std::vector<int> pinned_color(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNode& node = tree.node(order[i]);
    pinned_color[i] = boundary.is_pinned(node.id) ? boundary.color_at(node.id) : 0;
    if (pinned_color[i] > q)
      throw DomainError("pinned color exceeds q at node " + std::to_string(node.id));
    if (i > 0) {
      for (std::size_t j = i; j-- > 0;)
        if (order[j] == node.parent) {
          parent_pos[i] = static_cast<int>(j);
          break;
        }
    }
  }

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(q), 0);
  std::vector<int> color(n, 0);  // 0 = unassigned / exhausted

  // Backtracking over positions; pinned nodes contribute one forced choice.
  std::size_t i = 0;
  bool descending = true;
  while (true) {
    if (descending && i == n) {
      ++counts[static_cast<std::size_t>(color[0] - 1)];
      descending = false;
      --i;
      continue;
    }
    const int parent_color = parent_pos[i] >= 0 ? color[static_cast<std::size_t>(parent_pos[i])] : 0;
    if (pinned_color[i] != 0) {
      if (descending) {
        if (pinned_color[i] != parent_color) {
          color[i] = pinned_color[i];
          ++i;
          continue;
        }
        descending = false;  // conflict: this branch is dead
      } else {
        color[i] = 0;
      }
    } else {
      int c = descending ? 1 : color[i] + 1;
      while (c <= q && c == parent_color) ++c;
      if (c <= q) {
        color[i] = c;
        descending = true;
        ++i;
        continue;
      }
      color[i] = 0;
      descending = false;
    }
    if (i == 0) break;
    --i;
  }
  return counts;
}

Message<Rational> brute_force_message(const TreeInstance& tree, const BoundaryCondition& boundary,
                                      int q, int node_id, int cap) {
  const auto counts = enumerate_colorings(tree, boundary, q, node_id, cap);
  BigInt total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw UnsatisfiableError("no proper coloring is consistent with the boundary");

  std::vector<Rational> entries(static_cast<std::size_t>(q));
  const BigInt scale = total * (q - 1);
  for (int i = 0; i < q; ++i)
    entries[static_cast<std::size_t>(i)] =
        Rational(total - counts[static_cast<std::size_t>(i)], scale);
  return Message<Rational>::unchecked(q, std::move(entries));
}

std::vector<Rational> brute_force_marginal(const TreeInstance& tree,
                                           const BoundaryCondition& boundary, int q, int cap) {
  if (boundary.is_pinned(tree.root()))
    throw DomainError("brute_force_marginal needs an unpinned root");
  const auto counts = enumerate_colorings(tree, boundary, q, tree.root(), cap);
  BigInt total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw UnsatisfiableError("no proper coloring is consistent with the boundary");

  std::vector<Rational> marginal(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    marginal[static_cast<std::size_t>(i)] = Rational(counts[static_cast<std::size_t>(i)], total);
  return marginal;
}

}  // namespace bethemix
