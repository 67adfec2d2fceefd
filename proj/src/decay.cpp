#include "bethemix/decay.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bethemix/boundary.hpp"
#include "bethemix/contraction.hpp"
#include "bethemix/propagate.hpp"
#include "bethemix/rng.hpp"

namespace bethemix {

namespace {

struct TrialResult {
  double message_l1 = 0.0;
  double marginal_l1 = 0.0;
};

template <typename T>
double vec_l1(const std::vector<T>& a, const std::vector<T>& b) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] >= b[i] ? a[i] - b[i] : b[i] - a[i];
  return arith_traits<T>::to_double(acc);
}

template <typename T>
TrialResult run_trial(const TreeInstance& tree, int q, int d, std::uint64_t trial_seed,
                      int delta_size) {
  Rng rng = make_rng(trial_seed);
  BoundaryPairOptions opts;
  opts.delta_size = delta_size;
  const BoundaryPair pair = boundary_pair_at_distance(tree, q, d, rng, opts);

  // Message-level quantity at the root child above Delta (Delta sits at one
  // deepest node by default; with larger Delta, take the max over children).
  double msg_l1 = 0.0;
  std::vector<int> probed;
  for (int delta_node : pair.delta) {
    const int child = tree.child_towards(tree.root(), delta_node);
    if (std::find(probed.begin(), probed.end(), child) != probed.end()) continue;
    probed.push_back(child);
    const Message<T> ms = propagate<T>(tree, pair.sigma, q, child);
    const Message<T> mp = propagate<T>(tree, pair.phi, q, child);
    msg_l1 = std::max(msg_l1, arith_traits<T>::to_double(l1_distance(ms, mp)));
  }

  const auto marg_sigma = root_marginal<T>(tree, pair.sigma, q);
  const auto marg_phi = root_marginal<T>(tree, pair.phi, q);
  return TrialResult{msg_l1, vec_l1(marg_sigma, marg_phi)};
}

}  // namespace

DecayReport run_decay(const DecayConfig& cfg) {
  if (cfg.q < cfg.b + 2) throw DomainError("decay experiment needs q >= b+2");
  if (cfg.depth < 1) throw DomainError("decay experiment needs depth >= 1");
  if (cfg.trials < 1) throw DomainError("decay experiment needs trials >= 1");

  std::vector<int> distances = cfg.distances;
  if (distances.empty())
    for (int d = std::min(3, cfg.depth); d <= cfg.depth; ++d) distances.push_back(d);
  for (int d : distances)
    if (d < 1 || d > cfg.depth) throw DomainError("decay distances must lie in [1, depth]");

  DecayReport report;
  report.q = cfg.q;
  report.b = cfg.b;
  report.depth = cfg.depth;
  report.trials = cfg.trials;
  report.seed = cfg.seed;
  report.mode = arith_mode_name(cfg.mode);
  report.delta_size = cfg.delta_size;
  report.rho = (cfg.q == 4 && cfg.b == 2) ? rational_to_double(kappa_q4b2()) : kappa(cfg.q, cfg.b);
  report.predicted_rate = -std::log(report.rho);

  const int workers = resolve_workers(cfg.workers);
  for (const int d : distances) {
    const TreeInstance tree = build_complete_tree(cfg.b, d);
    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
    auto run_range = [&](int lo, int hi) {
      for (int t = lo; t < hi; ++t) {
        const std::uint64_t trial_seed =
            derive_seed(cfg.seed, 0xdecau, static_cast<std::uint64_t>(d),
                        static_cast<std::uint64_t>(t));
        results[static_cast<std::size_t>(t)] =
            cfg.mode == ArithMode::Rational
                ? run_trial<Rational>(tree, cfg.q, d, trial_seed, cfg.delta_size)
                : run_trial<double>(tree, cfg.q, d, trial_seed, cfg.delta_size);
      }
    };
    if (workers <= 1 || cfg.trials == 1) {
      run_range(0, cfg.trials);
    } else {
      const int n = std::min(workers, cfg.trials);
      const int chunk = (cfg.trials + n - 1) / n;
      std::vector<std::thread> threads;
      for (int w = 0; w < n; ++w)
        threads.emplace_back(run_range, w * chunk, std::min(cfg.trials, (w + 1) * chunk));
      for (auto& t : threads) t.join();
    }

    DecayDistanceStats stats;
    stats.d = d;
    stats.trials = cfg.trials;
    for (const auto& r : results) {
      stats.max_message_l1 = std::max(stats.max_message_l1, r.message_l1);
      stats.max_marginal_l1 = std::max(stats.max_marginal_l1, r.marginal_l1);
    }
    stats.envelope = d >= 3 ? 2.0 * std::pow(report.rho, d - 3) : 2.0;
    stats.within_envelope = stats.max_message_l1 <= stats.envelope + kDefaultEpsTol;
    report.per_distance.push_back(stats);
  }

  std::sort(report.per_distance.begin(), report.per_distance.end(),
            [](const auto& a, const auto& b) { return a.d < b.d; });

  for (std::size_t i = 1; i < report.per_distance.size(); ++i) {
    const auto& prev = report.per_distance[i - 1];
    const auto& cur = report.per_distance[i];
    if (prev.d >= 3 && cur.max_message_l1 > prev.max_message_l1 + kDefaultEpsTol)
      report.monotone_after_offset = false;
  }
  for (const auto& s : report.per_distance) report.envelope_ok &= s.within_envelope;

  // Rate fit: least squares of -ln(max message l1) against d over the top
  // half of the probed distances, skipping d < 3 and zero maxima.
  std::vector<std::pair<double, double>> points;
  for (const auto& s : report.per_distance)
    if (s.d >= 3 && s.max_message_l1 > 0) points.emplace_back(s.d, -std::log(s.max_message_l1));
  if (points.size() >= 2) {
    const std::size_t start = points.size() / 2;
    const std::size_t n = points.size() - start;
    if (n >= 2) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = start; i < points.size(); ++i) {
        sx += points[i].first;
        sy += points[i].second;
        sxx += points[i].first * points[i].first;
        sxy += points[i].first * points[i].second;
      }
      const double denom = n * sxx - sx * sx;
      if (denom > 0) {
        report.fitted_rate = (n * sxy - sx * sy) / denom;
        report.fitted_rate_valid = true;
      }
    }
  }

  const int d_min = report.per_distance.front().d;
  const int d_max = report.per_distance.back().d;
  report.rate_resolution_limited = report.predicted_rate * (d_max - d_min) < 1.0;
  return report;
}

}  // namespace bethemix
