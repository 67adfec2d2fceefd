#pragma once

#include <cstdint>
#include <vector>

#include "bethemix/message.hpp"
#include "bethemix/tree.hpp"

namespace bethemix {

inline constexpr int kDefaultEnumerationCap = 12;

/// Per-color counts of proper colorings of `node_id`'s subtree consistent
/// with the boundary: counts[c-1] = number of colorings with the subtree
/// root colored c. Plain depth-first enumeration with forward checking
/// (a child never takes its parent's color); no message algebra involved.
std::vector<std::uint64_t> enumerate_colorings(const TreeInstance& tree,
                                               const BoundaryCondition& boundary, int q,
                                               int node_id, int cap = kDefaultEnumerationCap);

/// Exact oracle for propagate: entry i proportional to the number of
/// colorings whose subtree-root color differs from i.
Message<Rational> brute_force_message(const TreeInstance& tree, const BoundaryCondition& boundary,
                                      int q, int node_id, int cap = kDefaultEnumerationCap);

/// Exact oracle for root_marginal: the root color distribution.
std::vector<Rational> brute_force_marginal(const TreeInstance& tree,
                                           const BoundaryCondition& boundary, int q,
                                           int cap = kDefaultEnumerationCap);

}  // namespace bethemix
