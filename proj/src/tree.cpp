#include "bethemix/tree.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace bethemix {

TreeInstance TreeInstance::complete(int b, int depth, std::size_t node_budget) {
  if (b < 1) throw DomainError("complete tree needs b >= 1");
  if (depth < 0) throw DomainError("complete tree needs depth >= 0");

  std::size_t count = 1, level = 1;
  for (int d = 1; d <= depth; ++d) {
    if (level > node_budget / static_cast<std::size_t>(b))
      throw BudgetExceededError("complete tree exceeds node budget");
    level *= static_cast<std::size_t>(b);
    count += level;
    if (count > node_budget) throw BudgetExceededError("complete tree exceeds node budget");
  }

  TreeInstance t;
  t.b_ = b;
  t.root_id_ = 0;
  t.depth_ = depth;
  t.nodes_.reserve(count);
  t.nodes_.push_back(TreeNode{0, -1, 0, {}});
  t.index_[0] = 0;
  std::size_t next_id = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (t.nodes_[i].depth == depth) continue;
    for (int c = 0; c < b; ++c) {
      const int id = static_cast<int>(next_id++);
      t.nodes_[i].children.push_back(id);
      t.index_[id] = t.nodes_.size();
      t.nodes_.push_back(TreeNode{id, t.nodes_[i].id, t.nodes_[i].depth + 1, {}});
    }
  }
  return t;
}

TreeInstance TreeInstance::from_links(int b,
                                      const std::vector<std::pair<int, std::optional<int>>>& links) {
  if (b < 1) throw DomainError("tree needs b >= 1");
  if (links.empty()) throw ParseError("tree needs at least one node");

  TreeInstance t;
  t.b_ = b;
  t.nodes_.reserve(links.size());
  int root = -1;
  bool root_seen = false;
  for (const auto& [id, parent] : links) {
    if (t.index_.count(id)) throw ParseError("duplicate node id " + std::to_string(id));
    if (!parent.has_value()) {
      if (root_seen) throw ParseError("tree has more than one root");
      root_seen = true;
      root = id;
    }
    t.index_[id] = t.nodes_.size();
    t.nodes_.push_back(TreeNode{id, parent.value_or(-1), 0, {}});
  }
  if (!root_seen) throw ParseError("tree has no root (node with null parent)");
  t.root_id_ = root;

  for (auto& n : t.nodes_) {
    if (n.id == root) continue;
    auto it = t.index_.find(n.parent);
    if (it == t.index_.end())
      throw ParseError("node " + std::to_string(n.id) + " references unknown parent");
    auto& p = t.nodes_[it->second];
    p.children.push_back(n.id);
    if (static_cast<int>(p.children.size()) > b)
      throw ParseError("node " + std::to_string(p.id) + " has more than b children");
  }

  // depths + acyclicity: walk down from the root, then require full coverage
  std::vector<std::size_t> stack{t.index_.at(root)};
  std::size_t visited = 0;
  t.depth_ = 0;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    ++visited;
    t.depth_ = std::max(t.depth_, t.nodes_[i].depth);
    for (int child : t.nodes_[i].children) {
      const std::size_t ci = t.index_.at(child);
      t.nodes_[ci].depth = t.nodes_[i].depth + 1;
      stack.push_back(ci);
    }
  }
  if (visited != t.nodes_.size())
    throw ParseError("tree is disconnected or cyclic");
  return t;
}

bool TreeInstance::contains(int id) const noexcept { return index_.count(id) != 0; }

std::size_t TreeInstance::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNodeError("unknown node id " + std::to_string(id));
  return it->second;
}

const TreeNode& TreeInstance::node(int id) const { return nodes_[index_of(id)]; }

std::vector<int> TreeInstance::nodes_at_depth(int d) const {
  std::vector<int> out;
  for (const auto& n : nodes_)
    if (n.depth == d) out.push_back(n.id);
  return out;
}

int TreeInstance::child_towards(int ancestor, int descendant) const {
  int cur = descendant;
  while (cur != ancestor) {
    const TreeNode& n = node(cur);
    if (n.parent < 0 && n.id != ancestor)
      throw DomainError("node is not a strict descendant of the given ancestor");
    if (n.parent == ancestor) return cur;
    cur = n.parent;
  }
  throw DomainError("descendant equals ancestor");
}

int BoundaryCondition::color_at(int node_id) const {
  auto it = pinned_.find(node_id);
  if (it == pinned_.end())
    throw UnknownNodeError("node " + std::to_string(node_id) + " is not pinned");
  return it->second;
}

std::vector<int> BoundaryPair::compute_delta(const BoundaryCondition& sigma,
                                             const BoundaryCondition& phi) {
  if (sigma.size() != phi.size()) throw DomainError("boundary pair must pin the same set U");
  std::vector<int> delta;
  for (const auto& [id, color] : sigma.pinned()) {
    if (!phi.is_pinned(id)) throw DomainError("boundary pair must pin the same set U");
    if (phi.color_at(id) != color) delta.push_back(id);
  }
  return delta;  // std::map iteration is sorted by id
}

BoundaryPair BoundaryPair::make(BoundaryCondition sigma, BoundaryCondition phi) {
  auto delta = compute_delta(sigma, phi);
  if (delta.empty()) throw DomainError("boundary pair needs a nonempty difference set Delta");
  return BoundaryPair{std::move(sigma), std::move(phi), std::move(delta)};
}

TreeInstance build_complete_tree(int b, int depth, std::size_t node_budget) {
  return TreeInstance::complete(b, depth, node_budget);
}

std::string tree_to_json(const TreeInstance& tree, const BoundaryCondition& boundary, int q) {
  nlohmann::ordered_json j;
  j["b"] = tree.branching();
  j["q"] = q;
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : tree.nodes()) {
    nlohmann::ordered_json nj;
    nj["id"] = n.id;
    if (n.parent < 0)
      nj["parent"] = nullptr;
    else
      nj["parent"] = n.parent;
    if (boundary.is_pinned(n.id))
      nj["pinned"] = boundary.color_at(n.id);
    else
      nj["pinned"] = nullptr;
    nodes.push_back(std::move(nj));
  }
  return j.dump();
}

TreeDocument tree_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad tree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("b") || !j.contains("q") || !j.contains("nodes"))
    throw ParseError("tree JSON needs {\"b\", \"q\", \"nodes\"}");

  const int b = j.at("b").get<int>();
  const int q = j.at("q").get<int>();
  std::vector<std::pair<int, std::optional<int>>> links;
  BoundaryCondition boundary;
  for (const auto& nj : j.at("nodes")) {
    if (!nj.contains("id")) throw ParseError("tree node needs an id");
    const int id = nj.at("id").get<int>();
    std::optional<int> parent;
    if (nj.contains("parent") && !nj.at("parent").is_null()) parent = nj.at("parent").get<int>();
    links.emplace_back(id, parent);
    if (nj.contains("pinned") && !nj.at("pinned").is_null()) {
      const int color = nj.at("pinned").get<int>();
      if (color < 1 || color > q)
        throw ParseError("pinned color outside [q] at node " + std::to_string(id));
      boundary.pin(id, color);
    }
  }
  return TreeDocument{TreeInstance::from_links(b, links), std::move(boundary), q};
}

}  // namespace bethemix
