#pragma once

#include <vector>

#include "bethemix/message.hpp"
#include "bethemix/tree.hpp"

namespace bethemix {

/// Message from `node_id` to its parent under `boundary`: the pinned vector
/// for pinned nodes, uniform for free leaves, otherwise the update of the
/// children's messages. Iterative post-order; one visit per subtree node.
template <typename T>
Message<T> propagate(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                     int node_id, double eps_tol = kDefaultEpsTol);

/// Root color distribution: proportional to the entrywise product of the
/// root children's messages. Requires an unpinned root.
template <typename T>
std::vector<T> root_marginal(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                             double eps_tol = kDefaultEpsTol);

extern template Message<Rational> propagate<Rational>(const TreeInstance&, const BoundaryCondition&,
                                                      int, int, double);
extern template Message<double> propagate<double>(const TreeInstance&, const BoundaryCondition&,
                                                  int, int, double);
extern template std::vector<Rational> root_marginal<Rational>(const TreeInstance&,
                                                              const BoundaryCondition&, int, double);
extern template std::vector<double> root_marginal<double>(const TreeInstance&,
                                                          const BoundaryCondition&, int, double);

}  // namespace bethemix
