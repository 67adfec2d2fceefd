#include "bethemix/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bethemix {

namespace {

using ojson = nlohmann::ordered_json;

ojson witness_json(const EqualityWitness& w) {
  ojson j;
  j["sample"] = w.sample_index;
  if (w.shape != 0) j["shape"] = w.shape;
  auto& inputs = j["inputs"] = ojson::array();
  for (const auto& text : w.inputs) inputs.push_back(ojson::parse(text));
  return j;
}

ojson report_json(const VerificationReport& r) {
  ojson j;
  j["lemma"] = r.lemma_key;
  j["name"] = r.lemma_name;
  j["q"] = r.q;
  j["b"] = r.b;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["worst_margin"] = r.worst_margin;
  j["equality_count"] = r.equality_count;
  if (r.lemma_key == "14") {
    j["equality_shapes"] = ojson{{"s2_cross", r.shape_counts[0]},
                                 {"s2_cross_mirrored", r.shape_counts[1]},
                                 {"complementary_halves", r.shape_counts[2]}};
  }
  auto& ws = j["witnesses"] = ojson::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  j["rechecked"] = r.rechecked;
  j["seed"] = r.seed;
  j["p_edge"] = r.p_edge;
  j["mode"] = r.mode;
  return j;
}

ojson record_json(const ContractionRecord& r) {
  ojson j;
  j["q"] = r.q;
  j["b"] = r.b;
  j["kappa"] = r.kappa;
  j["threshold_q"] = r.threshold_q;
  j["contracts"] = r.contracts;
  return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  ojson j = v;
  return j.dump();
}

}  // namespace

std::string to_json(const VerificationReport& report) { return dump(report_json(report)); }

std::string to_json(const std::vector<VerificationReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return dump(arr);
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "lemma,q,b,samples,violations,worst_margin,equality_count,mode\n";
  for (const auto& r : reports) {
    out += r.lemma_key + "," + std::to_string(r.q) + "," + std::to_string(r.b) + "," +
           std::to_string(r.samples) + "," + std::to_string(r.violations) + "," +
           format_double(r.worst_margin) + "," + std::to_string(r.equality_count) + "," + r.mode +
           "\n";
  }
  return out;
}

std::string to_json(const ContractionRecord& record) { return dump(record_json(record)); }

std::string to_csv(const std::vector<ContractionRecord>& records) {
  std::string out = "q,b,kappa,threshold_q,contracts\n";
  for (const auto& r : records) {
    out += std::to_string(r.q) + "," + std::to_string(r.b) + "," + format_double(r.kappa) + "," +
           std::to_string(r.threshold_q) + "," + (r.contracts ? "true" : "false") + "\n";
  }
  return out;
}

std::string contraction_table_json(const std::vector<ContractionRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) {
    ojson j = record_json(r);
    j["g"] = g_curve(static_cast<double>(r.b));
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string contraction_table_csv(const std::vector<ContractionRecord>& records) {
  std::string out = "q,b,kappa,threshold_q,contracts,g\n";
  for (const auto& r : records) {
    out += std::to_string(r.q) + "," + std::to_string(r.b) + "," + format_double(r.kappa) + "," +
           std::to_string(r.threshold_q) + "," + (r.contracts ? "true" : "false") + "," +
           format_double(g_curve(static_cast<double>(r.b))) + "\n";
  }
  return out;
}

std::string to_json(const DecayReport& report) {
  ojson j;
  j["q"] = report.q;
  j["b"] = report.b;
  j["depth"] = report.depth;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["mode"] = report.mode;
  j["delta_size"] = report.delta_size;
  j["rho"] = report.rho;
  j["predicted_rate"] = report.predicted_rate;
  if (report.fitted_rate_valid)
    j["fitted_rate"] = report.fitted_rate;
  else
    j["fitted_rate"] = nullptr;
  j["monotone_after_offset"] = report.monotone_after_offset;
  j["envelope_ok"] = report.envelope_ok;
  j["rate_resolution_limited"] = report.rate_resolution_limited;
  auto& rows = j["per_distance"] = ojson::array();
  for (const auto& s : report.per_distance) {
    ojson row;
    row["d"] = s.d;
    row["trials"] = s.trials;
    row["max_message_l1"] = s.max_message_l1;
    row["max_marginal_l1"] = s.max_marginal_l1;
    row["envelope"] = s.envelope;
    row["within_envelope"] = s.within_envelope;
    rows.push_back(std::move(row));
  }
  return dump(j);
}

std::string to_csv(const DecayReport& report) {
  std::string out = "d,trials,max_message_l1,max_marginal_l1,envelope,within_envelope\n";
  for (const auto& s : report.per_distance) {
    out += std::to_string(s.d) + "," + std::to_string(s.trials) + "," +
           format_double(s.max_message_l1) + "," + format_double(s.max_marginal_l1) + "," +
           format_double(s.envelope) + "," + (s.within_envelope ? "true" : "false") + "\n";
  }
  return out;
}

std::string to_json(const OracleCheckReport& report) {
  ojson j;
  j["instances"] = report.instances;
  j["matched"] = report.matched;
  j["unsatisfiable"] = report.unsatisfiable;
  j["mismatched"] = report.mismatched;
  auto& ms = j["mismatches"] = ojson::array();
  for (const auto& m : report.mismatches) {
    ojson mj;
    mj["instance"] = m.instance;
    mj["kind"] = m.kind;
    mj["tree"] = ojson::parse(m.tree_json);
    mj["recursion"] = m.recursion;
    mj["oracle"] = m.oracle;
    ms.push_back(std::move(mj));
  }
  auto& qs = j["q"] = ojson::array();
  for (int q : report.qs) qs.push_back(q);
  j["b"] = report.b;
  j["max_depth"] = report.max_depth;
  j["seed"] = report.seed;
  j["cap"] = report.cap;
  return dump(j);
}

std::string threshold_rows_json(const std::vector<ThresholdRow>& rows, double c) {
  ojson j;
  j["c"] = c;
  auto& arr = j["rows"] = ojson::array();
  for (const auto& r : rows) {
    ojson row;
    row["b"] = r.b;
    row["threshold_q"] = r.threshold_q;
    row["min_contracting_q"] = r.min_contracting_q;
    row["kappa_at_threshold"] = r.kappa_at_threshold;
    arr.push_back(std::move(row));
  }
  return dump(j);
}

std::string threshold_rows_csv(const std::vector<ThresholdRow>& rows) {
  std::string out = "b,threshold_q,min_contracting_q,kappa_at_threshold\n";
  for (const auto& r : rows) {
    out += std::to_string(r.b) + "," + std::to_string(r.threshold_q) + "," +
           std::to_string(r.min_contracting_q) + "," + format_double(r.kappa_at_threshold) + "\n";
  }
  return out;
}

std::string solve_c_json(double c, double tolerance) {
  ojson j;
  j["c"] = c;
  j["tolerance"] = tolerance;
  j["residual"] = c - std::exp(1.0 / c);
  return dump(j);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);  // binary: LF endings stay LF
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
}

}  // namespace bethemix
