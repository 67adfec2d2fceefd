#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace bethemix;

namespace {

Message<Rational> message_from_strings(int q, const std::vector<std::string>& entries) {
  std::vector<Rational> vals;
  vals.reserve(entries.size());
  for (const auto& e : entries) vals.push_back(rational_from_string(e));
  return Message<Rational>(q, std::move(vals));
}

std::vector<std::string> message_to_strings(const Message<Rational>& m) {
  std::vector<std::string> out;
  for (int i = 0; i < m.q(); ++i)
    out.push_back(rational_to_string(m[static_cast<std::size_t>(i)]));
  return out;
}

std::vector<std::string> py_update(const std::vector<std::vector<std::string>>& children, int q) {
  std::vector<Message<Rational>> msgs;
  for (const auto& c : children) msgs.push_back(message_from_strings(q, c));
  return message_to_strings(update<Rational>(std::span<const Message<Rational>>(msgs), q));
}

std::vector<double> py_update_float(const std::vector<std::vector<double>>& children, int q) {
  std::vector<Message<double>> msgs;
  for (const auto& c : children) msgs.push_back(Message<double>(q, c));
  const auto out = update<double>(std::span<const Message<double>>(msgs), q);
  return {out.entries().begin(), out.entries().end()};
}

SetSpec spec_from_name(const std::string& variant, int q, int b) {
  if (variant == "S1") return SetSpec::make(SetVariant::S1, q, b);
  if (variant == "S1prime") return SetSpec::make(SetVariant::S1prime, q, b);
  if (variant == "S2") return SetSpec::make(SetVariant::S2, q, b);
  if (variant == "S1prime_q4b2") return SetSpec::make(SetVariant::S1prime_q4b2, q, b);
  throw DomainError("unknown set variant: " + variant);
}

std::string py_verify(const std::string& lemma, int q, int b, std::int64_t samples,
                      std::uint64_t seed, double p_edge, const std::string& mode, int workers) {
  const auto id = parse_lemma_token(lemma);
  if (!id) throw DomainError("unknown lemma: " + lemma);
  VerifyConfig cfg;
  cfg.lemma = *id;
  cfg.q = q;
  cfg.b = b;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.p_edge = p_edge;
  cfg.mode = arith_mode_from_string(mode);
  cfg.workers = workers;
  return to_json(verify_lemma(cfg));
}

std::string py_decay(int q, int b, int depth, const std::vector<int>& distances, int trials,
                     std::uint64_t seed, const std::string& mode, int workers) {
  DecayConfig cfg;
  cfg.q = q;
  cfg.b = b;
  cfg.depth = depth;
  cfg.distances = distances;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.mode = arith_mode_from_string(mode);
  cfg.workers = workers;
  return to_json(run_decay(cfg));
}

std::vector<std::string> py_propagate(const std::string& tree_json, int node) {
  const TreeDocument doc = tree_from_json(tree_json);
  return message_to_strings(propagate<Rational>(doc.tree, doc.boundary, doc.q, node));
}

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(rational_to_string(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_bethemix, m) {
  m.doc() = "sum-product recursion for q-colorings on trees: exact messages, "
            "enumeration oracles, contraction constants, lemma verification";

  // translators run newest-first: the base goes in first so the derived
  // exceptions are not swallowed by it
  auto base_exc = py::register_exception<Error>(m, "BethemixError");
  py::register_exception<ZeroDenominatorError>(m, "ZeroDenominatorError", base_exc.ptr());
  py::register_exception<UnsatisfiableError>(m, "UnsatisfiableError", base_exc.ptr());
  py::register_exception<UnsupportedRegimeError>(m, "UnsupportedRegimeError", base_exc.ptr());

  // messages (exact entries travel as "num/den" strings)
  m.def("pinned_message", [](int q, int color) {
    return message_to_strings(pinned_message<Rational>(q, color));
  }, py::arg("q"), py::arg("color"));
  m.def("uniform_message", [](int q) {
    return message_to_strings(uniform_message<Rational>(q));
  }, py::arg("q"));
  m.def("update", &py_update, py::arg("children"), py::arg("q"));
  m.def("update_float", &py_update_float, py::arg("children"), py::arg("q"));
  m.def("l1_distance", [](const std::vector<std::string>& a, const std::vector<std::string>& b, int q) {
    return rational_to_string(l1_distance(message_from_strings(q, a), message_from_strings(q, b)));
  }, py::arg("a"), py::arg("b"), py::arg("q"));
  m.def("product_sum", [](const std::vector<std::vector<std::string>>& msgs, int q) {
    std::vector<Message<Rational>> ms;
    for (const auto& v : msgs) ms.push_back(message_from_strings(q, v));
    return rational_to_string(product_sum<Rational>(std::span<const Message<Rational>>(ms)));
  }, py::arg("messages"), py::arg("q"));
  m.def("coupled", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return coupled(message_from_strings(4, a), message_from_strings(4, b));
  }, py::arg("a"), py::arg("b"));
  m.def("in_set", [](const std::vector<std::string>& entries, const std::string& variant, int q, int b) {
    return in_set(message_from_strings(q, entries), spec_from_name(variant, q, b));
  }, py::arg("entries"), py::arg("variant"), py::arg("q"), py::arg("b"));

  // contraction constants
  m.def("kappa", &kappa, py::arg("q"), py::arg("b"));
  m.def("kappa_q4b2", [] { return rational_to_string(kappa_q4b2()); });
  m.def("solve_c", &solve_c, py::arg("tolerance") = 1e-12);
  m.def("threshold_q", [](int b) { return threshold_q(b); }, py::arg("b"));
  m.def("g", &g_curve, py::arg("b"));
  m.def("min_contracting_q", &min_contracting_q, py::arg("b"));
  m.def("bound_lemma_prod", &bound_lemma_prod, py::arg("q"), py::arg("b"));
  m.def("bound_lemma_prodnew", &bound_lemma_prodnew, py::arg("q"), py::arg("b"));
  m.def("bound_lemma_bb", &bound_lemma_bb, py::arg("q"), py::arg("b"), py::arg("s"));
  m.def("lemma14_secondary_bound", [] { return rational_to_string(lemma14_secondary_bound()); });

  // trees: JSON documents {"b":..., "q":..., "nodes":[...]}
  m.def("build_complete_tree", [](int b, int depth, int q) {
    return tree_to_json(build_complete_tree(b, depth), BoundaryCondition{}, q);
  }, py::arg("b"), py::arg("depth"), py::arg("q"));
  m.def("propagate", &py_propagate, py::arg("tree_json"), py::arg("node"));
  m.def("root_marginal", [](const std::string& tree_json) {
    const TreeDocument doc = tree_from_json(tree_json);
    return rationals_to_strings(root_marginal<Rational>(doc.tree, doc.boundary, doc.q));
  }, py::arg("tree_json"));
  m.def("brute_force_message", [](const std::string& tree_json, int node, int cap) {
    const TreeDocument doc = tree_from_json(tree_json);
    return message_to_strings(brute_force_message(doc.tree, doc.boundary, doc.q, node, cap));
  }, py::arg("tree_json"), py::arg("node"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("brute_force_marginal", [](const std::string& tree_json, int cap) {
    const TreeDocument doc = tree_from_json(tree_json);
    return rationals_to_strings(brute_force_marginal(doc.tree, doc.boundary, doc.q, cap));
  }, py::arg("tree_json"), py::arg("cap") = kDefaultEnumerationCap);

  // experiment drivers (JSON report strings)
  m.def("verify_lemma", &py_verify, py::arg("lemma"), py::arg("q") = 4, py::arg("b") = 2,
        py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("p_edge") = 0.25,
        py::arg("mode") = "rational", py::arg("workers") = 0);
  m.def("run_decay", &py_decay, py::arg("q") = 5, py::arg("b") = 2, py::arg("depth") = 8,
        py::arg("distances") = std::vector<int>{}, py::arg("trials") = 10, py::arg("seed") = 0,
        py::arg("mode") = "float", py::arg("workers") = 0);

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
