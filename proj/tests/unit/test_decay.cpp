#include "doctest.h"

#include <cmath>

#include "bethemix/contraction.hpp"
#include "bethemix/decay.hpp"
#include "bethemix/propagate.hpp"
#include "bethemix/report_io.hpp"

using namespace bethemix;

TEST_CASE("decay at q=5, b=2 sits under the contraction envelope") {
  DecayConfig cfg;
  cfg.q = 5;
  cfg.b = 2;
  cfg.depth = 6;
  cfg.distances = {3, 4, 5, 6};
  cfg.trials = 12;
  cfg.seed = 42;
  const auto report = run_decay(cfg);
  CHECK(report.envelope_ok);
  CHECK(report.monotone_after_offset);
  CHECK(report.per_distance.size() == 4);
  for (const auto& s : report.per_distance) {
    CHECK(s.max_message_l1 > 0.0);
    CHECK(s.max_message_l1 <= 2.0 * std::pow(report.rho, s.d - 3) + 1e-12);
    CHECK(s.max_marginal_l1 >= 0.0);
  }
  CHECK(report.predicted_rate == doctest::Approx(-std::log(kappa(5, 2))));
}

TEST_CASE("q=4, b=2 uses the 48/49 factor and flags poor resolution") {
  DecayConfig cfg;
  cfg.q = 4;
  cfg.b = 2;
  cfg.depth = 5;
  cfg.distances = {3, 4, 5};
  cfg.trials = 8;
  cfg.seed = 3;
  const auto report = run_decay(cfg);
  CHECK(report.rho == doctest::Approx(48.0 / 49.0));
  CHECK(report.rate_resolution_limited);  // -ln(48/49) * 2 << 1
  CHECK(report.envelope_ok);              // envelope is nearly flat here
}

TEST_CASE("identical boundaries yield zero discrepancy; decay probes need a nonempty delta") {
  const auto tree = build_complete_tree(2, 3);
  BoundaryCondition sigma;
  for (int id : tree.nodes_at_depth(3)) sigma.pin(id, 1 + (id % 5));
  const auto a = propagate<Rational>(tree, sigma, 5, tree.node(tree.root()).children[0]);
  const auto b = propagate<Rational>(tree, sigma, 5, tree.node(tree.root()).children[0]);
  CHECK(l1_distance(a, b) == 0);
  CHECK_THROWS_AS(BoundaryPair::make(sigma, sigma), DomainError);

  DecayConfig cfg;
  cfg.q = 5;
  cfg.b = 2;
  cfg.depth = 3;
  cfg.distances = {1, 2, 3};
  cfg.trials = 4;
  cfg.seed = 8;
  const auto report = run_decay(cfg);
  for (const auto& s : report.per_distance) CHECK(s.max_message_l1 > 0.0);
}

TEST_CASE("decay reports are deterministic") {
  DecayConfig cfg;
  cfg.q = 5;
  cfg.b = 2;
  cfg.depth = 4;
  cfg.distances = {3, 4};
  cfg.trials = 6;
  cfg.seed = 77;
  cfg.workers = 1;
  const auto a = to_json(run_decay(cfg));
  cfg.workers = 3;
  const auto b = to_json(run_decay(cfg));
  CHECK(a == b);
}

TEST_CASE("rational-mode decay matches float mode closely") {
  DecayConfig cfg;
  cfg.q = 5;
  cfg.b = 2;
  cfg.depth = 3;
  cfg.distances = {3};
  cfg.trials = 3;
  cfg.seed = 15;
  const auto f = run_decay(cfg);
  cfg.mode = ArithMode::Rational;
  const auto r = run_decay(cfg);
  CHECK(f.per_distance[0].max_message_l1 ==
        doctest::Approx(r.per_distance[0].max_message_l1).epsilon(1e-9));
}

TEST_CASE("decay config validation") {
  DecayConfig cfg;
  cfg.q = 4;
  cfg.b = 3;
  CHECK_THROWS_AS(run_decay(cfg), DomainError);
  cfg.q = 6;
  cfg.b = 2;
  cfg.depth = 4;
  cfg.distances = {9};
  CHECK_THROWS_AS(run_decay(cfg), DomainError);
}
