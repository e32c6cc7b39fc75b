#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rimay/document.hpp"

namespace rimay {

/// Outcome of one requirement as seen by the statistics.
struct RecordOutcome {
  std::string id;
  bool representable = false;
  std::optional<FailureClass> cause;     // automatic classification
  std::optional<int> annotated_cause;    // 1, 2 or 3 from a human annotation
};

struct CauseCounts {
  std::size_t cause1 = 0;
  std::size_t cause2 = 0;
  std::size_t cause3 = 0;

  std::size_t sum() const { return cause1 + cause2 + cause3; }
  bool operator==(const CauseCounts&) const = default;
};

struct CorpusReport {
  std::string srs_id;
  std::size_t total = 0;
  std::size_t representable = 0;
  CauseCounts causes;

  double percent_representable() const { return total == 0 ? 0.0 : static_cast<double>(representable) / total; }
};

struct ZTestInput {
  long n1 = 0;
  long x1 = 0;
  long n2 = 0;
  long x2 = 0;
};

struct ZTestResult {
  double p_hat1 = 0;
  double p_hat2 = 0;
  double p_bar = 0;
  double z = 0;
  double p_value = 0;  // left tail, H1: p1 < p2
  double alpha = 0.05;
  bool reject_h0 = false;
};

struct PairwiseTest {
  std::string srs_i;
  std::string srs_j;
  ZTestInput input;
  ZTestResult result;
};

struct SaturationStatus {
  std::vector<std::pair<std::string, std::size_t>> per_srs;  // (srs id, cause-1 count)
  bool saturated = false;
};

/// Standard normal CDF, 0.5 * erfc(-z / sqrt 2).
double normal_cdf(double z);

std::optional<int> parse_cause_label(const std::string& label);

RecordOutcome outcome_of(const RequirementRecord& r, const ParserContext& ctx);

/// A human annotation overrides the automatic cause. Throws
/// incomplete_annotation listing the ids of non-representable records with
/// neither.
CorpusReport build_report(const std::vector<RecordOutcome>& records, const std::string& srs_id);
CorpusReport build_report(const std::vector<RequirementRecord>& records, const std::string& srs_id,
                          const ParserContext& ctx);

/// Reads {"srs_id", "records": [{id, representable, cause?, annotated_cause?}]}.
std::pair<std::string, std::vector<RecordOutcome>> outcomes_from_json(const nlohmann::json& record_file);

/// Report for a record file ({"srs_id", "records": [{representable, ...}]})
/// or, failing that, a requirements document parsed with `ctx`.
CorpusReport report_from_source(std::string_view content, const std::string& srs_id, const ParserContext& ctx);
CorpusReport report_from_json(const nlohmann::json& source, const std::string& srs_id, const ParserContext& ctx);

ZTestResult ztest(const ZTestInput& input, double alpha = 0.05);
SaturationStatus saturation(const std::vector<CorpusReport>& reports);
/// Every pair i < j, ordered (1,2), (1,3), ..., (n-1,n).
std::vector<PairwiseTest> pairwise_ztests(const std::vector<CorpusReport>& reports, double alpha = 0.05);

nlohmann::json to_json(const CorpusReport& r);
nlohmann::json to_json(const ZTestInput& in);
nlohmann::json to_json(const ZTestResult& r);
nlohmann::json to_json(const SaturationStatus& s);
nlohmann::json to_json(const PairwiseTest& t);

/// Aligned plain-text tables: representability, z-test inputs, z-test results.
std::string format_report(const std::vector<CorpusReport>& reports, const std::vector<PairwiseTest>& tests,
                          const SaturationStatus& status);

}  // namespace rimay
