#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bethemix/errors.hpp"

namespace bethemix {

struct TreeNode {
  int id = 0;
  int parent = -1;  // -1 at the root
  int depth = 0;
  std::vector<int> children;
};

/// A rooted tree with branching factor at most b. Immutable once built.
/// Node ids are arbitrary ints (preserved through JSON round-trips); lookups
/// go through an id -> index map.
class TreeInstance {
 public:
  /// Complete b-ary tree; ids are breadth-first 0..n-1 with root 0.
  static TreeInstance complete(int b, int depth, std::size_t node_budget = kDefaultNodeBudget);

  /// Assembles a tree from (id, parent) pairs; parent < 0 marks the root.
  /// Order of `links` is preserved for serialization.
  static TreeInstance from_links(int b, const std::vector<std::pair<int, std::optional<int>>>& links);

  int branching() const noexcept { return b_; }
  int root() const noexcept { return root_id_; }
  int depth() const noexcept { return depth_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  bool contains(int id) const noexcept;
  const TreeNode& node(int id) const;  // throws UnknownNodeError
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::vector<int> nodes_at_depth(int d) const;

  /// Child of `ancestor` on the path down to `descendant`; throws DomainError
  /// if descendant is not strictly below ancestor.
  int child_towards(int ancestor, int descendant) const;

  static constexpr std::size_t kDefaultNodeBudget = std::size_t(1) << 24;

 private:
  TreeInstance() = default;
  std::size_t index_of(int id) const;

  int b_ = 0;
  int root_id_ = 0;
  int depth_ = 0;
  std::vector<TreeNode> nodes_;
  std::map<int, std::size_t> index_;
};

/// Partial coloring sigma_U: node id -> color in [q] (1-indexed).
class BoundaryCondition {
 public:
  BoundaryCondition() = default;
  explicit BoundaryCondition(std::map<int, int> pinned) : pinned_(std::move(pinned)) {}

  void pin(int node_id, int color) { pinned_[node_id] = color; }
  bool is_pinned(int node_id) const { return pinned_.count(node_id) != 0; }
  int color_at(int node_id) const;  // throws UnknownNodeError when unpinned
  std::size_t size() const noexcept { return pinned_.size(); }
  const std::map<int, int>& pinned() const noexcept { return pinned_; }

  bool operator==(const BoundaryCondition&) const = default;

 private:
  std::map<int, int> pinned_;
};

/// Two boundaries on the same pinned set U plus their difference set Delta.
struct BoundaryPair {
  BoundaryCondition sigma;
  BoundaryCondition phi;
  std::vector<int> delta;  // sorted node ids where sigma and phi differ

  /// Computes delta; throws DomainError when the pinned sets differ or the
  /// boundaries are identical (Delta must be nonempty).
  static BoundaryPair make(BoundaryCondition sigma, BoundaryCondition phi);

  /// Recomputed difference set; must equal `delta`.
  static std::vector<int> compute_delta(const BoundaryCondition& sigma, const BoundaryCondition& phi);
};

/// Same interface as TreeInstance::complete; spec-level name.
TreeInstance build_complete_tree(int b, int depth,
                                 std::size_t node_budget = TreeInstance::kDefaultNodeBudget);

/// {"b":..., "q":..., "nodes":[{"id":..., "parent":...|null, "pinned":...|null}, ...]}
/// Key order and node order are stable; round-trips byte-exactly.
std::string tree_to_json(const TreeInstance& tree, const BoundaryCondition& boundary, int q);

struct TreeDocument {
  TreeInstance tree;
  BoundaryCondition boundary;
  int q = 0;
};

TreeDocument tree_from_json(const std::string& text);

}  // namespace bethemix
