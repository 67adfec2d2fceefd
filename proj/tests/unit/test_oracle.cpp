#include "doctest.h"

#include "bethemix/boundary.hpp"
#include "bethemix/brute_force.hpp"
#include "bethemix/oracle_check.hpp"
#include "bethemix/propagate.hpp"

using namespace bethemix;

namespace {

const Rational kThird(1, 3);

}  // namespace

TEST_CASE("propagate depth-1 gadget: one pinned child, one free leaf") {
  const auto tree = build_complete_tree(2, 1);
  BoundaryCondition boundary;
  boundary.pin(1, 1);
  const auto m = propagate<Rational>(tree, boundary, 4, 0);
  CHECK(m == Message<Rational>(4, {kThird, Rational(2, 9), Rational(2, 9), Rational(2, 9)}));
  CHECK(m == brute_force_message(tree, boundary, 4, 0));
}

TEST_CASE("propagate depth-1 gadget: both children pinned") {
  const auto tree = build_complete_tree(2, 1);
  BoundaryCondition boundary;
  boundary.pin(1, 1);
  boundary.pin(2, 2);
  const auto m = propagate<Rational>(tree, boundary, 4, 0);
  // colors 3,4 are twice as likely at the root, so entries 1,2 carry 1/3
  CHECK(m == Message<Rational>(4, {kThird, kThird, Rational(1, 6), Rational(1, 6)}));
  CHECK(m == brute_force_message(tree, boundary, 4, 0));
}

TEST_CASE("all-free trees stay uniform") {
  for (int depth : {0, 1, 3}) {
    const auto tree = build_complete_tree(2, depth);
    CHECK(propagate<Rational>(tree, {}, 4, tree.root()) == uniform_message<Rational>(4));
    CHECK(root_marginal<Rational>(tree, {}, 4) ==
          std::vector<Rational>(4, Rational(1, 4)));
  }
}

TEST_CASE("all-free float propagation drifts below 1e-12 up to depth 20") {
  // depth 20 complete binary tree has ~2M nodes; a b=1 chain probes depth
  // cheaply alongside a mid-size b=2 tree
  const auto chain = build_complete_tree(1, 20);
  const auto m = propagate<double>(chain, {}, 5, chain.root());
  for (int i = 0; i < 5; ++i) CHECK(std::abs(m[static_cast<std::size_t>(i)] - 0.2) <= 1e-12);
  const auto tree = build_complete_tree(2, 12);
  const auto m2 = propagate<double>(tree, {}, 4, tree.root());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(m2[static_cast<std::size_t>(i)] - 0.25) <= 1e-12);
}

TEST_CASE("propagate stops at pinned nodes and flags bad ids") {
  const auto tree = build_complete_tree(2, 2);
  BoundaryCondition boundary;
  boundary.pin(1, 2);  // interior pin: subtree below is irrelevant
  CHECK(propagate<Rational>(tree, boundary, 4, 1) == pinned_message<Rational>(4, 2));
  CHECK_THROWS_AS(propagate<Rational>(tree, boundary, 4, 77), UnknownNodeError);
}

TEST_CASE("root marginal of an edge with one pinned endpoint") {
  const auto tree = build_complete_tree(1, 1);
  BoundaryCondition boundary;
  boundary.pin(1, 1);
  const auto marginal = root_marginal<Rational>(tree, boundary, 4);
  CHECK(marginal == std::vector<Rational>{0, kThird, kThird, kThird});
  CHECK(marginal == brute_force_marginal(tree, boundary, 4));
  BoundaryCondition pinned_root;
  pinned_root.pin(0, 1);
  CHECK_THROWS_AS(root_marginal<Rational>(tree, pinned_root, 4), DomainError);
}

TEST_CASE("depth-2 binary tree with all leaves pinned to one color") {
  const auto tree = build_complete_tree(2, 2);
  BoundaryCondition boundary;
  for (int id : tree.nodes_at_depth(2)) boundary.pin(id, 1);
  const auto marginal = root_marginal<Rational>(tree, boundary, 4);
  const std::vector<Rational> expected{Rational(3, 7), Rational(4, 21), Rational(4, 21),
                                       Rational(4, 21)};
  CHECK(marginal == expected);
  CHECK(brute_force_marginal(tree, boundary, 4) == expected);
}

TEST_CASE("brute force counts the single free node") {
  const auto tree = build_complete_tree(2, 0);
  CHECK(brute_force_message(tree, {}, 4, 0) == uniform_message<Rational>(4));
  CHECK(enumerate_colorings(tree, {}, 4, 0) == std::vector<std::uint64_t>{1, 1, 1, 1});
}

TEST_CASE("brute force honors the cap and detects unsatisfiable boundaries") {
  const auto tree = build_complete_tree(2, 3);
  CHECK_THROWS_AS(brute_force_message(tree, {}, 4, 0, /*cap=*/5), CapExceededError);

  const auto small = build_complete_tree(2, 1);
  BoundaryCondition conflict;
  conflict.pin(1, 1);
  conflict.pin(2, 2);
  // q=2: the root clashes with one pinned child no matter what
  CHECK_THROWS_AS(brute_force_message(small, conflict, 2, 0), UnsatisfiableError);
  CHECK_THROWS_AS(propagate<Rational>(small, conflict, 2, 0), ZeroDenominatorError);
}

TEST_CASE("oracle equivalence on random instances") {
  OracleCheckConfig cfg;
  cfg.qs = {4, 5};
  cfg.b = 2;
  cfg.max_depth = 3;
  cfg.instances = 60;
  cfg.seed = 90210;
  const auto report = run_oracle_check(cfg);
  CHECK(report.mismatched == 0);
  CHECK(report.matched == report.instances);
  CHECK(report.unsatisfiable == 0);  // q >= b+2 level pinnings are satisfiable
}

TEST_CASE("oracle harness detects a corrupted recursion") {
  OracleCheckConfig cfg;
  cfg.qs = {4};
  cfg.b = 2;
  cfg.max_depth = 2;
  cfg.instances = 20;
  cfg.seed = 5;
  cfg.corrupt = true;
  const auto report = run_oracle_check(cfg);
  CHECK(report.mismatched > 0);
}

TEST_CASE("q=3, b=2 tight regime counts unsatisfiable instances") {
  OracleCheckConfig cfg;
  cfg.qs = {3};
  cfg.b = 2;
  cfg.max_depth = 2;
  cfg.instances = 60;
  cfg.seed = 31;
  const auto report = run_oracle_check(cfg);
  CHECK(report.mismatched == 0);
  CHECK(report.matched + report.unsatisfiable == report.instances);
}

TEST_CASE("color permutations commute with root_marginal") {
  Rng rng = make_rng(404);
  const auto tree = build_complete_tree(2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int q = uniform_int(rng, 4, 6);
    BoundaryCondition boundary;
    for (int id : tree.nodes_at_depth(2)) boundary.pin(id, uniform_int(rng, 1, q));

    std::vector<int> perm(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    for (int i = q - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(uniform_int(rng, 0, i))]);

    BoundaryCondition permuted;
    for (const auto& [id, color] : boundary.pinned())
      permuted.pin(id, perm[static_cast<std::size_t>(color - 1)]);

    const auto base = root_marginal<Rational>(tree, boundary, q);
    const auto moved = root_marginal<Rational>(tree, permuted, q);
    for (int c = 1; c <= q; ++c)
      CHECK(moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(c - 1)] - 1)] ==
            base[static_cast<std::size_t>(c - 1)]);
  }
}

TEST_CASE("boundary pairs at distance d") {
  const auto tree = build_complete_tree(2, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(derive_seed(seed, 1));
    const auto pair = boundary_pair_at_distance(tree, 5, 3, rng);
    CHECK(pair.delta.size() == 1);
    CHECK(tree.node(pair.delta.front()).depth == 3);
    CHECK(pair.sigma.size() == 8);
    // both sides propagate without a vanishing denominator
    CHECK_NOTHROW(root_marginal<Rational>(tree, pair.sigma, 5));
    CHECK_NOTHROW(root_marginal<Rational>(tree, pair.phi, 5));
  }
  Rng rng = make_rng(3);
  CHECK_THROWS_AS(boundary_pair_at_distance(tree, 5, 4, rng), DomainError);
}
