#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bethemix/brute_force.hpp"

namespace bethemix {

struct OracleCheckConfig {
  std::vector<int> qs{4, 5};
  int b = 2;
  int max_depth = 3;
  std::int64_t instances = 100;
  std::uint64_t seed = 0;
  int cap = kDefaultEnumerationCap;
  int workers = 0;
  /// Test hook: rotates the recursion's output before comparing, so the
  /// harness itself can be shown to catch a broken update.
  bool corrupt = false;
  int mismatch_cap = 8;
  /// Keep every generated instance document (for --dump).
  bool collect_instances = false;
};

struct OracleMismatch {
  std::int64_t instance = 0;
  std::string tree_json;
  std::string recursion;  // serialized propagate/root_marginal result
  std::string oracle;     // serialized brute-force result
  std::string kind;       // "message" | "marginal" | "satisfiability"
};

struct OracleCheckReport {
  std::int64_t instances = 0;
  std::int64_t matched = 0;
  std::int64_t unsatisfiable = 0;
  std::int64_t mismatched = 0;
  std::vector<OracleMismatch> mismatches;  // capped
  std::vector<std::string> instance_docs;  // filled when collect_instances
  std::vector<int> qs;
  int b = 2;
  int max_depth = 3;
  std::uint64_t seed = 0;
  int cap = kDefaultEnumerationCap;
};

/// Seeded random instances (complete b-ary tree, one whole level pinned with
/// random colors, level chosen so the free count fits the cap); on each the
/// root message and root marginal from the recursion are compared exactly
/// against plain enumeration.
OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg);

/// Same comparison for explicit instances (JSON documents as produced by
/// tree_to_json).
OracleCheckReport run_oracle_check_on(const std::vector<std::string>& tree_docs, int cap,
                                      int mismatch_cap = 8);

}  // namespace bethemix
