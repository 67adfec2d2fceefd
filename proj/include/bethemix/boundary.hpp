#pragma once

#include "bethemix/rng.hpp"
#include "bethemix/tree.hpp"

namespace bethemix {

struct BoundaryPairOptions {
  int delta_size = 1;      // number of level-d nodes recolored in phi
  int retry_budget = 100;  // resamples before giving up on satisfiability
};

/// Pins every node at depth d with random colors (sigma); phi agrees except
/// on `delta_size` nodes at depth exactly d. Both boundaries are checked
/// satisfiable by propagation; unsatisfiable draws are retried.
/// Throws RetriesExhaustedError when the budget runs out (q too small).
BoundaryPair boundary_pair_at_distance(const TreeInstance& tree, int q, int d, Rng& rng,
                                       const BoundaryPairOptions& opts = {});

}  // namespace bethemix
