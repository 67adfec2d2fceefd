#pragma once

#include <string>
#include <vector>

#include "bethemix/contraction.hpp"
#include "bethemix/decay.hpp"
#include "bethemix/oracle_check.hpp"
#include "bethemix/verify.hpp"

namespace bethemix {

/// All emitters produce UTF-8 with LF endings and stable key order, so a
/// repeated run with the same seed is byte-identical.

std::string to_json(const VerificationReport& report);
std::string to_json(const std::vector<VerificationReport>& reports);
std::string to_csv(const std::vector<VerificationReport>& reports);

std::string to_json(const ContractionRecord& record);
/// Plain record list; header "q,b,kappa,threshold_q,contracts".
std::string to_csv(const std::vector<ContractionRecord>& records);
/// Table with the g(b) column appended.
std::string contraction_table_json(const std::vector<ContractionRecord>& records);
std::string contraction_table_csv(const std::vector<ContractionRecord>& records);

std::string to_json(const DecayReport& report);
std::string to_csv(const DecayReport& report);

std::string to_json(const OracleCheckReport& report);

struct ThresholdRow {
  int b = 0;
  int threshold_q = 0;
  int min_contracting_q = 0;
  double kappa_at_threshold = 0.0;
};
std::string threshold_rows_json(const std::vector<ThresholdRow>& rows, double c);
std::string threshold_rows_csv(const std::vector<ThresholdRow>& rows);

std::string solve_c_json(double c, double tolerance);

/// Writes text to path ("-" = stdout), creating parent directories.
void write_output(const std::string& path, const std::string& text);

}  // namespace bethemix
