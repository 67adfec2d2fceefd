#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bethemix/arith.hpp"

namespace bethemix {

struct DecayConfig {
  int q = 5;
  int b = 2;
  int depth = 10;
  std::vector<int> distances;  // defaults to {3..depth} when empty
  int trials = 50;
  std::uint64_t seed = 0;
  ArithMode mode = ArithMode::Float;
  int workers = 0;
  int delta_size = 1;
};

struct DecayDistanceStats {
  int d = 0;
  int trials = 0;
  double max_message_l1 = 0.0;   // ell_1 at the root child on the Delta path
  double max_marginal_l1 = 0.0;  // ell_1 between root marginals
  double envelope = 2.0;         // 2 * rho^(d-3), rho the per-step factor
  bool within_envelope = true;
};

struct DecayReport {
  int q = 0, b = 0, depth = 0, trials = 0;
  std::uint64_t seed = 0;
  std::string mode;
  int delta_size = 1;
  std::vector<DecayDistanceStats> per_distance;
  double rho = 1.0;             // kappa(q,b), or 48/49 for q=4,b=2
  double predicted_rate = 0.0;  // -ln rho
  double fitted_rate = 0.0;     // LSQ slope of -ln(max message l1) over top-half d >= 3
  bool fitted_rate_valid = false;
  bool monotone_after_offset = true;  // max message l1 non-increasing for d >= 3
  bool envelope_ok = true;
  bool rate_resolution_limited = false;  // predicted decay < one e-fold across range
};

/// For each distance d: builds the depth-d complete tree, pins its bottom
/// level with random colors, flips Delta (level-d nodes), and measures the
/// root-child message distance and root-marginal distance, maximized over
/// seeded trials. Trials are independent streams keyed by (seed, d, trial).
DecayReport run_decay(const DecayConfig& cfg);

}  // namespace bethemix
