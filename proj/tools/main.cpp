#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "bethemix/contraction.hpp"
#include "bethemix/decay.hpp"
#include "bethemix/oracle_check.hpp"
#include "bethemix/report_io.hpp"
#include "bethemix/verify.hpp"

namespace {

using namespace bethemix;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(item.substr(0, dots));
      const int hi = std::stoi(item.substr(dots + 2));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else if (!item.empty()) {
      out.push_back(std::stoi(item));
    }
  }
  if (out.empty()) throw DomainError("empty integer list: " + text);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonFlags {
  std::string out = "-";
  std::string format = "json";
  std::string mode = "rational";
  std::uint64_t seed = 0;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_mode = true) {
  cmd->add_option("--out", flags.out, "output path ('-' = stdout)");
  cmd->add_option("--format", flags.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  if (with_mode)
    cmd->add_option("--mode", flags.mode, "rational|float arithmetic")
        ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--workers", flags.workers,
                  "parallel workers (0 = BETHEMIX_WORKERS env, then hardware)");
}

int cmd_solve_c(double tolerance, const CommonFlags& flags) {
  const double c = solve_c(tolerance);
  if (flags.format == "csv")
    write_output(flags.out, "c,tolerance,residual\n" + solve_c_json(c, tolerance));
  else
    write_output(flags.out, solve_c_json(c, tolerance));
  return kExitOk;
}

int cmd_threshold(const std::vector<int>& bs, const CommonFlags& flags) {
  std::vector<ThresholdRow> rows;
  for (int b : bs) {
    ThresholdRow row;
    row.b = b;
    row.threshold_q = threshold_q(b);
    row.min_contracting_q = min_contracting_q(b);
    row.kappa_at_threshold = kappa(row.threshold_q, b);
    rows.push_back(row);
  }
  write_output(flags.out, flags.format == "csv" ? threshold_rows_csv(rows)
                                                : threshold_rows_json(rows, solve_c(1e-12)));
  return kExitOk;
}

int cmd_contraction_table(int b_min, int b_max, const CommonFlags& flags) {
  const auto records = contraction_table(b_min, b_max);
  write_output(flags.out, flags.format == "csv" ? contraction_table_csv(records)
                                                : contraction_table_json(records));
  return kExitOk;
}

int cmd_oracle_check(OracleCheckConfig cfg, const std::string& dump_path,
                     const std::string& instances_file, const CommonFlags& flags) {
  OracleCheckReport report;
  if (!instances_file.empty()) {
    nlohmann::json docs = nlohmann::json::parse(read_file(instances_file));
    if (!docs.is_array()) throw ParseError("instances file must hold a JSON array");
    std::vector<std::string> texts;
    for (const auto& d : docs) texts.push_back(d.dump());
    report = run_oracle_check_on(texts, cfg.cap);
  } else {
    cfg.collect_instances = !dump_path.empty();
    report = run_oracle_check(cfg);
    if (!dump_path.empty()) {
      std::string arr = "[";
      for (std::size_t i = 0; i < report.instance_docs.size(); ++i) {
        if (i) arr += ",";
        arr += report.instance_docs[i];
      }
      arr += "]\n";
      write_output(dump_path, arr);
      report.instance_docs.clear();
    }
  }
  write_output(flags.out, to_json(report));
  return report.mismatched == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(const std::string& lemma_arg, bool all, VerifySuiteConfig cfg,
               const CommonFlags& flags) {
  cfg.all = all;
  if (!all) {
    if (lemma_arg.empty())
      throw DomainError("verify needs --lemma <list> or --all");
    if (lemma_arg == "all") {
      cfg.all = true;
    } else {
      std::stringstream ss(lemma_arg);
      std::string token;
      while (std::getline(ss, token, ',')) {
        const auto id = parse_lemma_token(token);
        if (!id) throw DomainError("unknown lemma: " + token);
        cfg.lemmas.push_back(*id);
      }
    }
  }
  const auto reports = run_verify_suite(cfg);
  write_output(flags.out, flags.format == "csv" ? to_csv(reports) : to_json(reports));
  std::int64_t violations = 0;
  for (const auto& r : reports) violations += r.violations;
  return violations == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_decay(DecayConfig cfg, const CommonFlags& flags) {
  const DecayReport report = run_decay(cfg);
  write_output(flags.out, flags.format == "csv" ? to_csv(report) : to_json(report));
  return report.envelope_ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sum-product recursion for q-colorings on b-ary trees: exact oracles, "
               "lemma verification, contraction tables, decay experiments"};
  app.require_subcommand(1);

  // solve-c
  auto* sc = app.add_subcommand("solve-c", "root of c = exp(1/c) by bisection");
  double sc_tolerance = 1e-12;
  CommonFlags sc_flags;
  sc->add_option("--tolerance", sc_tolerance, "bisection tolerance");
  add_common(sc, sc_flags, /*with_mode=*/false);

  // threshold
  auto* th = app.add_subcommand("threshold", "q thresholds 1+ceil(c*b) per branching factor");
  std::string th_bs = "2..10";
  CommonFlags th_flags;
  th->add_option("--b", th_bs, "branching factors, e.g. 2,3,4 or 2..500");
  add_common(th, th_flags, /*with_mode=*/false);

  // contraction-table
  auto* ct = app.add_subcommand("contraction-table",
                                "kappa at the threshold and its neighbors, with g(b)");
  int ct_bmin = 2, ct_bmax = 10;
  CommonFlags ct_flags;
  ct->add_option("--b-min", ct_bmin, "smallest branching factor");
  ct->add_option("--b-max", ct_bmax, "largest branching factor");
  add_common(ct, ct_flags, /*with_mode=*/false);

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check",
                                "recursion vs exact enumeration on random instances");
  std::string oc_qs = "4,5";
  OracleCheckConfig oc_cfg;
  std::string oc_dump, oc_instances_file;
  CommonFlags oc_flags;
  oc->add_option("--q", oc_qs, "colors, e.g. 4,5");
  oc->add_option("--b", oc_cfg.b, "branching factor");
  oc->add_option("--depth", oc_cfg.max_depth, "maximum tree depth");
  oc->add_option("--instances", oc_cfg.instances, "number of random instances");
  oc->add_option("--cap", oc_cfg.cap, "enumeration cap (free vertices)");
  oc->add_flag("--corrupt", oc_cfg.corrupt, "self-test hook: corrupt the recursion output");
  oc->add_option("--dump", oc_dump, "write generated instances (JSON array) to this path");
  oc->add_option("--instances-file", oc_instances_file,
                 "check instances from a JSON array file instead of generating");
  add_common(oc, oc_flags, /*with_mode=*/false);

  // verify
  auto* vf = app.add_subcommand("verify", "randomized lemma verification");
  std::string vf_lemmas;
  bool vf_all = false;
  std::string vf_qs = "4,5,6,8", vf_bs = "2,3";
  VerifySuiteConfig vf_cfg;
  CommonFlags vf_flags;
  vf->add_option("--lemma", vf_lemmas, "lemma keys/names, e.g. 4,clm:sp,10 or contract1");
  vf->add_flag("--all", vf_all, "run the whole registry");
  vf->add_option("--q", vf_qs, "q grid, e.g. 4,5,6,8");
  vf->add_option("--b", vf_bs, "b grid, e.g. 2,3");
  vf->add_option("--samples", vf_cfg.samples, "samples per (lemma, q, b)");
  vf->add_option("--p-edge", vf_cfg.p_edge, "boundary-attaining sample probability");
  add_common(vf, vf_flags);

  // decay
  auto* dc = app.add_subcommand("decay", "strong-spatial-mixing decay experiment");
  DecayConfig dc_cfg;
  std::string dc_distances;
  CommonFlags dc_flags;
  dc_flags.mode = "float";
  dc->add_option("--q", dc_cfg.q, "colors");
  dc->add_option("--b", dc_cfg.b, "branching factor");
  dc->add_option("--depth", dc_cfg.depth, "maximum distance / tree depth");
  dc->add_option("--distances", dc_distances, "probed distances, e.g. 3..10 (default 3..depth)");
  dc->add_option("--trials", dc_cfg.trials, "boundary pairs per distance");
  dc->add_option("--delta-size", dc_cfg.delta_size, "nodes recolored in Delta");
  add_common(dc, dc_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sc->parsed()) return cmd_solve_c(sc_tolerance, sc_flags);
    if (th->parsed()) return cmd_threshold(parse_int_list(th_bs), th_flags);
    if (ct->parsed()) return cmd_contraction_table(ct_bmin, ct_bmax, ct_flags);
    if (oc->parsed()) {
      oc_cfg.qs = parse_int_list(oc_qs);
      oc_cfg.seed = oc_flags.seed;
      oc_cfg.workers = oc_flags.workers;
      return cmd_oracle_check(oc_cfg, oc_dump, oc_instances_file, oc_flags);
    }
    if (vf->parsed()) {
      vf_cfg.qs = parse_int_list(vf_qs);
      vf_cfg.bs = parse_int_list(vf_bs);
      vf_cfg.seed = vf_flags.seed;
      vf_cfg.workers = vf_flags.workers;
      vf_cfg.mode = arith_mode_from_string(vf_flags.mode);
      return cmd_verify(vf_lemmas, vf_all, vf_cfg, vf_flags);
    }
    if (dc->parsed()) {
      if (!dc_distances.empty()) dc_cfg.distances = parse_int_list(dc_distances);
      dc_cfg.seed = dc_flags.seed;
      dc_cfg.workers = dc_flags.workers;
      dc_cfg.mode = arith_mode_from_string(dc_flags.mode);
      return cmd_decay(dc_cfg, dc_flags);
    }
  } catch (const UnsupportedRegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
