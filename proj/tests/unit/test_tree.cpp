#include "doctest.h"

#include "bethemix/rng.hpp"
#include "bethemix/tree.hpp"

using namespace bethemix;

TEST_CASE("complete tree node counts") {
  CHECK(build_complete_tree(2, 2).node_count() == 7);
  CHECK(build_complete_tree(3, 1).node_count() == 4);
  CHECK(build_complete_tree(2, 0).node_count() == 1);
  CHECK(build_complete_tree(1, 5).node_count() == 6);
  CHECK(build_complete_tree(2, 3).nodes_at_depth(3).size() == 8);
  CHECK_THROWS_AS(build_complete_tree(2, 40), BudgetExceededError);
  CHECK_THROWS_AS(build_complete_tree(0, 2), DomainError);
}

TEST_CASE("node lookups") {
  const auto t = build_complete_tree(2, 2);
  CHECK(t.root() == 0);
  CHECK(t.depth() == 2);
  CHECK(t.node(0).children.size() == 2);
  CHECK(t.node(3).children.empty());
  CHECK(t.node(3).parent == 1);
  CHECK_THROWS_AS(t.node(99), UnknownNodeError);
  CHECK(t.child_towards(0, 3) == 1);
  CHECK(t.child_towards(0, 6) == 2);
  CHECK_THROWS_AS(t.child_towards(0, 0), DomainError);
}

TEST_CASE("boundary pair delta recomputation") {
  BoundaryCondition sigma, phi;
  sigma.pin(3, 1);
  sigma.pin(4, 2);
  phi.pin(3, 1);
  phi.pin(4, 3);
  const auto pair = BoundaryPair::make(sigma, phi);
  CHECK(pair.delta == std::vector<int>{4});
  CHECK(BoundaryPair::compute_delta(pair.sigma, pair.phi) == pair.delta);

  CHECK_THROWS_AS(BoundaryPair::make(sigma, sigma), DomainError);  // empty Delta
  BoundaryCondition other;
  other.pin(5, 1);
  other.pin(4, 2);
  CHECK_THROWS_AS(BoundaryPair::make(sigma, other), DomainError);  // different U
}

TEST_CASE("tree json writes stable keys and round-trips") {
  const auto t = build_complete_tree(2, 1);
  BoundaryCondition boundary;
  boundary.pin(1, 1);
  boundary.pin(2, 3);
  const std::string text = tree_to_json(t, boundary, 4);
  CHECK(text ==
        R"({"b":2,"q":4,"nodes":[{"id":0,"parent":null,"pinned":null},)"
        R"({"id":1,"parent":0,"pinned":1},{"id":2,"parent":0,"pinned":3}]})");

  const TreeDocument doc = tree_from_json(text);
  CHECK(doc.q == 4);
  CHECK(doc.tree.node_count() == 3);
  CHECK(doc.boundary.color_at(1) == 1);
  CHECK(doc.boundary.color_at(2) == 3);
  CHECK(tree_to_json(doc.tree, doc.boundary, doc.q) == text);  // bit-exact
}

TEST_CASE("json round trip on random irregular trees") {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int b = uniform_int(rng, 1, 3);
    const int n = uniform_int(rng, 1, 24);
    std::vector<std::pair<int, std::optional<int>>> links{{100, std::nullopt}};
    std::vector<int> ids{100};
    std::vector<int> child_count{0};
    for (int i = 1; i < n; ++i) {
      // attach under a node that still has room
      std::vector<int> open;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (child_count[k] < b) open.push_back(static_cast<int>(k));
      if (open.empty()) break;
      const int pick = open[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(open.size()) - 1))];
      const int id = 100 + i * 7;
      links.emplace_back(id, ids[static_cast<std::size_t>(pick)]);
      ids.push_back(id);
      child_count.push_back(0);
      ++child_count[static_cast<std::size_t>(pick)];
    }
    const auto tree = TreeInstance::from_links(b, links);
    BoundaryCondition boundary;
    for (int id : ids)
      if (id != 100 && uniform_int(rng, 0, 2) == 0) boundary.pin(id, uniform_int(rng, 1, 4));
    const std::string text = tree_to_json(tree, boundary, 4);
    const TreeDocument doc = tree_from_json(text);
    CHECK(tree_to_json(doc.tree, doc.boundary, doc.q) == text);
  }
}

TEST_CASE("tree parsing rejects malformed documents") {
  CHECK_THROWS_AS(tree_from_json("not json"), ParseError);
  CHECK_THROWS_AS(tree_from_json(R"({"b":2,"q":4,"nodes":[]})"), ParseError);
  // two roots
  CHECK_THROWS_AS(tree_from_json(
                      R"({"b":2,"q":4,"nodes":[{"id":0,"parent":null,"pinned":null},)"
                      R"({"id":1,"parent":null,"pinned":null}]})"),
                  ParseError);
  // unknown parent
  CHECK_THROWS_AS(tree_from_json(
                      R"({"b":2,"q":4,"nodes":[{"id":0,"parent":null,"pinned":null},)"
                      R"({"id":1,"parent":9,"pinned":null}]})"),
                  ParseError);
  // cycle (no root)
  CHECK_THROWS_AS(tree_from_json(
                      R"({"b":2,"q":4,"nodes":[{"id":0,"parent":1,"pinned":null},)"
                      R"({"id":1,"parent":0,"pinned":null}]})"),
                  ParseError);
  // too many children
  CHECK_THROWS_AS(tree_from_json(
                      R"({"b":1,"q":4,"nodes":[{"id":0,"parent":null,"pinned":null},)"
                      R"({"id":1,"parent":0,"pinned":null},{"id":2,"parent":0,"pinned":null}]})"),
                  ParseError);
  // pinned color out of range
  CHECK_THROWS_AS(tree_from_json(
                      R"({"b":2,"q":4,"nodes":[{"id":0,"parent":null,"pinned":7}]})"),
                  ParseError);
}
