// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are asserted, not just reported.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bethemix/boundary.hpp"
#include "bethemix/brute_force.hpp"
#include "bethemix/contraction.hpp"
#include "bethemix/decay.hpp"
#include "bethemix/oracle_check.hpp"
#include "bethemix/propagate.hpp"
#include "bethemix/report_io.hpp"
#include "bethemix/verify.hpp"

using namespace bethemix;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void result(const std::string& name, bool ok, double secs, const std::string& detail) {
  std::printf("[%s] %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// C1: 500 seeded instances, q in {4,5}, b=2, depth <= 3, random level
// pinnings; recursion equals enumeration exactly; < 60 s.
void criterion1() {
  Timer timer;
  OracleCheckConfig cfg;
  cfg.qs = {4, 5};
  cfg.b = 2;
  cfg.max_depth = 3;
  cfg.instances = 500;
  cfg.seed = 20240501;
  const auto report = run_oracle_check(cfg);
  const double secs = timer.seconds();
  const bool ok = report.mismatched == 0 && report.matched == 500 && secs < 60.0;
  result("C1 oracle-equivalence", ok, secs,
         std::to_string(report.matched) + "/500 exact matches, " +
             std::to_string(report.unsatisfiable) + " unsatisfiable");
}

// C2: constant reproduction.
void criterion2() {
  Timer timer;
  const double c = solve_c(1e-3);
  bool ok = std::abs(c - 1.764) <= 1e-3 + 1e-9;
  ok = ok && kappa_q4b2() == Rational(48, 49);
  ok = ok && bound_lemma_prod_exact(4, 2) == Rational(2, 9);
  ok = ok && bound_lemma_prod(4, 2) == 2.0 / 9.0;
  ok = ok && lemma14_secondary_bound() == Rational(49, 216);
  result("C2 constants", ok, timer.seconds(),
         "c(1e-3)=" + std::to_string(c) + ", 48/49, 2/9, 49/216 exact");
}

// C3: kappa(threshold_q(b), b) < 1 for b in 2..500 and the g sweep; < 5 s.
void criterion3() {
  Timer timer;
  bool ok = true;
  std::string detail = "all b in 2..500 contract";
  double prev_g = 0.0;
  for (int b = 2; b <= 500 && ok; ++b) {
    const int thr = threshold_q(b);
    if (!(kappa(thr, b) < 1.0)) {
      ok = false;
      detail = "kappa(threshold_q(" + std::to_string(b) + ")) >= 1";
    }
    const double g = g_curve(static_cast<double>(b));
    if (!(g < 1.0) || (b > 2 && !(g > prev_g))) {
      ok = false;
      detail = "g sweep failed at b=" + std::to_string(b);
    }
    prev_g = g;
  }
  const double secs = timer.seconds();
  ok = ok && secs < 5.0;
  result("C3 theorem-threshold sweep", ok, secs, detail);
}

// C4: kappa(4,2) = 1 exactly (within 1e-15).
void criterion4() {
  Timer timer;
  const double k = kappa(4, 2);
  const bool ok = std::abs(k - 1.0) <= 1e-15 && *kappa_exact(4, 2) == Rational(1);
  result("C4 boundary kappa(4,2)", ok, timer.seconds(), "kappa(4,2)=" + std::to_string(k));
}

VerifySuiteConfig suite_config() {
  VerifySuiteConfig cfg;
  cfg.all = true;
  cfg.qs = {4, 5, 6, 8};
  cfg.bs = {2, 3};
  cfg.samples = 100000;
  cfg.seed = 7;
  cfg.p_edge = 0.25;
  return cfg;
}

std::string c5_report_json;

// C5: the whole lemma registry at 10^5 samples per (lemma, q, b); zero
// violations; < 10 min.
void criterion5() {
  Timer timer;
  const auto reports = run_verify_suite(suite_config());
  c5_report_json = to_json(reports);
  std::int64_t violations = 0;
  for (const auto& r : reports) violations += r.violations;
  const double secs = timer.seconds();
  const bool ok = violations == 0 && secs < 600.0;
  result("C5 lemma suite", ok, secs,
         std::to_string(reports.size()) + " runs x 100000 samples, " +
             std::to_string(violations) + " violations");
}

// C6: equality witnesses: all three 2/9 shapes from the sampler, and the
// crossed-S2 update value, exactly.
void criterion6() {
  Timer timer;
  VerifyConfig cfg;
  cfg.lemma = LemmaId::Prodlb14;
  cfg.q = 4;
  cfg.b = 2;
  cfg.samples = 100000;
  cfg.seed = 7;
  const auto report = verify_lemma(cfg);
  bool ok = report.violations == 0 && report.shape_counts[0] > 0 && report.shape_counts[1] > 0 &&
            report.shape_counts[2] > 0;

  const auto crossed =
      update<Rational>({pinned_message<Rational>(4, 1), pinned_message<Rational>(4, 2)}, 4);
  // Eq.-(1) value: 1/3 exactly where an input vanished, i.e. the
  // (1/6,1/6,1/3,1/3) pattern with the thirds on the pinned colors.
  const Message<Rational> expected(
      4, {Rational(1, 3), Rational(1, 3), Rational(1, 6), Rational(1, 6)});
  ok = ok && crossed == expected;
  std::vector<Rational> sorted(crossed.entries().begin(), crossed.entries().end());
  std::sort(sorted.begin(), sorted.end());
  ok = ok && sorted == std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(1, 3),
                                             Rational(1, 3)};
  result("C6 equality witnesses", ok, timer.seconds(),
         "2/9 shapes seen: " + std::to_string(report.shape_counts[0]) + "/" +
             std::to_string(report.shape_counts[1]) + "/" +
             std::to_string(report.shape_counts[2]) + ", crossed update exact");
}

DecayConfig decay_config() {
  DecayConfig cfg;
  cfg.q = 5;
  cfg.b = 2;
  cfg.depth = 10;
  cfg.distances = {3, 4, 5, 6, 7, 8, 9, 10};
  cfg.trials = 50;
  cfg.seed = 31337;
  return cfg;
}

std::string c7_report_json;

// C7: decay experiment q=5, b=2, depth 10, 50 trials per d in 3..10;
// max root-child message distance <= 2 kappa^(d-3); fitted rate within 0.1
// of -ln kappa from below; < 5 min.
void criterion7() {
  Timer timer;
  const auto report = run_decay(decay_config());
  c7_report_json = to_json(report);
  const double kappa52 = kappa(5, 2);
  bool ok = true;
  for (const auto& s : report.per_distance)
    ok = ok && s.max_message_l1 <= 2.0 * std::pow(kappa52, s.d - 3) + 1e-12;
  ok = ok && report.fitted_rate_valid && report.fitted_rate >= -std::log(kappa52) - 0.1;
  const double secs = timer.seconds();
  ok = ok && secs < 300.0;
  result("C7 decay experiment", ok, secs,
         "envelope 2*kappa^(d-3) held, fitted rate " + std::to_string(report.fitted_rate) +
             " vs predicted " + std::to_string(report.predicted_rate));
}

// C8: repeating C5 and C7 with the same seeds is byte-identical.
void criterion8() {
  Timer timer;
  const auto reports = run_verify_suite(suite_config());
  const bool verify_same = to_json(reports) == c5_report_json;
  const auto decay = run_decay(decay_config());
  const bool decay_same = to_json(decay) == c7_report_json;
  result("C8 determinism", verify_same && decay_same, timer.seconds(),
         std::string("verify reports ") + (verify_same ? "identical" : "DIFFER") + ", decay reports " +
             (decay_same ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures == 0)
    std::printf("acceptance: all 8 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures;
}
