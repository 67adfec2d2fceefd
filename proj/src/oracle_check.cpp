#include "bethemix/oracle_check.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "bethemix/propagate.hpp"
#include "bethemix/rng.hpp"

namespace bethemix {

namespace {

std::size_t level_size(int b, int d) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(b);
  return n;
}

std::size_t free_count(int b, int depth, int pinned_level) {
  std::size_t total = 0;
  for (int d = 0; d <= depth; ++d)
    if (d != pinned_level) total += level_size(b, d);
  return total;
}

struct InstanceOutcome {
  bool unsatisfiable = false;
  std::optional<OracleMismatch> mismatch;
  std::string doc;
};

std::string marginal_json(const std::vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += "\"" + rational_to_string(v[i]) + "\"";
  }
  return out + "]";
}

InstanceOutcome check_instance(const TreeInstance& tree, const BoundaryCondition& boundary, int q,
                               int cap, bool corrupt, std::int64_t index) {
  InstanceOutcome out;
  const std::string doc = tree_to_json(tree, boundary, q);

  std::optional<Message<Rational>> rec_msg, bf_msg;
  bool rec_sat = true, bf_sat = true;
  try {
    Message<Rational> m = propagate<Rational>(tree, boundary, q, tree.root());
    if (corrupt) {
      std::vector<Rational> rot(m.entries().begin(), m.entries().end());
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      m = Message<Rational>(q, std::move(rot));
    }
    rec_msg = std::move(m);
  } catch (const ZeroDenominatorError&) {
    rec_sat = false;
  }
  try {
    bf_msg = brute_force_message(tree, boundary, q, tree.root(), cap);
  } catch (const UnsatisfiableError&) {
    bf_sat = false;
  }

  if (rec_sat != bf_sat) {
    out.mismatch = OracleMismatch{index, doc, rec_sat ? "satisfiable" : "unsatisfiable",
                                  bf_sat ? "satisfiable" : "unsatisfiable", "satisfiability"};
    return out;
  }
  if (!rec_sat) {
    out.unsatisfiable = true;
    return out;
  }
  if (!(*rec_msg == *bf_msg)) {
    out.mismatch = OracleMismatch{index, doc, message_to_json(*rec_msg), message_to_json(*bf_msg),
                                  "message"};
    return out;
  }

  const auto rec_marg = root_marginal<Rational>(tree, boundary, q);
  const auto bf_marg = brute_force_marginal(tree, boundary, q, cap);
  if (rec_marg != bf_marg) {
    out.mismatch = OracleMismatch{index, doc, marginal_json(rec_marg), marginal_json(bf_marg),
                                  "marginal"};
  }
  return out;
}

}  // namespace

OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg) {
  if (cfg.qs.empty()) throw DomainError("oracle check needs at least one q");
  if (cfg.b < 1 || cfg.max_depth < 1) throw DomainError("oracle check needs b >= 1, depth >= 1");
  if (cfg.instances < 1) throw DomainError("oracle check needs at least one instance");

  // Trees are tiny; cache one per depth.
  std::vector<TreeInstance> trees;
  for (int depth = 0; depth <= cfg.max_depth; ++depth)
    trees.push_back(build_complete_tree(cfg.b, depth));

  std::vector<InstanceOutcome> outcomes(static_cast<std::size_t>(cfg.instances));
  auto run_range = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      Rng rng = make_rng(derive_seed(cfg.seed, 0x04ac1eULL, static_cast<std::uint64_t>(i)));
      const int q = cfg.qs[static_cast<std::size_t>(uniform_int(
          rng, 0, static_cast<int>(cfg.qs.size()) - 1))];
      const int depth = uniform_int(rng, 1, cfg.max_depth);

      std::vector<int> feasible_levels;
      for (int d = 1; d <= depth; ++d)
        if (free_count(cfg.b, depth, d) <= static_cast<std::size_t>(cfg.cap))
          feasible_levels.push_back(d);
      if (feasible_levels.empty())
        throw DomainError("no pinnable level fits the enumeration cap; lower depth or raise cap");
      const int d = feasible_levels[static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<int>(feasible_levels.size()) - 1))];

      BoundaryCondition boundary;
      for (int id : trees[static_cast<std::size_t>(depth)].nodes_at_depth(d))
        boundary.pin(id, uniform_int(rng, 1, q));
      auto& outcome = outcomes[static_cast<std::size_t>(i)];
      outcome = check_instance(trees[static_cast<std::size_t>(depth)], boundary, q, cfg.cap,
                               cfg.corrupt, i);
      if (cfg.collect_instances)
        outcome.doc = tree_to_json(trees[static_cast<std::size_t>(depth)], boundary, q);
    }
  };

  const int workers = std::max(
      1, std::min<int>(resolve_workers(cfg.workers), static_cast<int>(cfg.instances)));
  if (workers == 1) {
    run_range(0, cfg.instances);
  } else {
    const std::int64_t chunk = (cfg.instances + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back(run_range, w * chunk, std::min<std::int64_t>(cfg.instances, (w + 1) * chunk));
    for (auto& t : threads) t.join();
  }

  OracleCheckReport report;
  report.instances = cfg.instances;
  report.qs = cfg.qs;
  report.b = cfg.b;
  report.max_depth = cfg.max_depth;
  report.seed = cfg.seed;
  report.cap = cfg.cap;
  for (const auto& o : outcomes) {
    if (o.mismatch) {
      ++report.mismatched;
      if (static_cast<int>(report.mismatches.size()) < cfg.mismatch_cap)
        report.mismatches.push_back(*o.mismatch);
    } else if (o.unsatisfiable) {
      ++report.unsatisfiable;
    } else {
      ++report.matched;
    }
    if (cfg.collect_instances) report.instance_docs.push_back(o.doc);
  }
  return report;
}

OracleCheckReport run_oracle_check_on(const std::vector<std::string>& tree_docs, int cap,
                                      int mismatch_cap) {
  OracleCheckReport report;
  report.instances = static_cast<std::int64_t>(tree_docs.size());
  report.cap = cap;
  std::int64_t index = 0;
  for (const auto& doc : tree_docs) {
    const TreeDocument parsed = tree_from_json(doc);
    const auto outcome =
        check_instance(parsed.tree, parsed.boundary, parsed.q, cap, false, index);
    if (outcome.mismatch) {
      ++report.mismatched;
      if (static_cast<int>(report.mismatches.size()) < mismatch_cap)
        report.mismatches.push_back(*outcome.mismatch);
    } else if (outcome.unsatisfiable) {
      ++report.unsatisfiable;
    } else {
      ++report.matched;
    }
    ++index;
  }
  return report;
}

}  // namespace bethemix
