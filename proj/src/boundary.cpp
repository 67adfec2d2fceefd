#include "bethemix/boundary.hpp"

#include <algorithm>

#include "bethemix/propagate.hpp"

namespace bethemix {

namespace {

bool satisfiable(const TreeInstance& tree, const BoundaryCondition& boundary, int q) {
  try {
    if (boundary.is_pinned(tree.root())) {
      propagate<double>(tree, boundary, q, tree.root());
    } else {
      root_marginal<double>(tree, boundary, q);
    }
    return true;
  } catch (const ZeroDenominatorError&) {
    return false;
  }
}

}  // namespace

BoundaryPair boundary_pair_at_distance(const TreeInstance& tree, int q, int d, Rng& rng,
                                       const BoundaryPairOptions& opts) {
  if (q < 2) throw DomainError("boundary pair needs q >= 2");
  if (d < 1 || d > tree.depth())
    throw DomainError("boundary pair distance must lie in [1, depth]");
  const std::vector<int> level = tree.nodes_at_depth(d);
  if (opts.delta_size < 1 || opts.delta_size > static_cast<int>(level.size()))
    throw DomainError("delta_size outside [1, |level d|]");

  for (int attempt = 0; attempt < opts.retry_budget; ++attempt) {
    BoundaryCondition sigma;
    for (int id : level) sigma.pin(id, uniform_int(rng, 1, q));

    // Delta: a uniform subset of level-d nodes, recolored away from sigma.
    std::vector<int> picks(level);
    for (int i = 0; i < opts.delta_size; ++i) {
      const int j = uniform_int(rng, i, static_cast<int>(picks.size()) - 1);
      std::swap(picks[static_cast<std::size_t>(i)], picks[static_cast<std::size_t>(j)]);
    }
    picks.resize(static_cast<std::size_t>(opts.delta_size));

    BoundaryCondition phi = sigma;
    for (int id : picks) {
      const int old_color = sigma.color_at(id);
      int new_color = uniform_int(rng, 1, q - 1);
      if (new_color >= old_color) ++new_color;
      phi.pin(id, new_color);
    }

    if (!satisfiable(tree, sigma, q) || !satisfiable(tree, phi, q)) continue;
    return BoundaryPair::make(std::move(sigma), std::move(phi));
  }
  throw RetriesExhaustedError("no satisfiable boundary pair found within the retry budget");
}

}  // namespace bethemix
