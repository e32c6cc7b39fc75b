#include "rimay/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rimay {

using nlohmann::json;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::optional<int> parse_cause_label(const std::string& label) {
  if (label == "cause1" || label == "1") return 1;
  if (label == "cause2" || label == "2") return 2;
  if (label == "cause3" || label == "3") return 3;
  return std::nullopt;
}

RecordOutcome outcome_of(const RequirementRecord& r, const ParserContext& ctx) {
  RecordOutcome o;
  o.id = r.id;
  o.representable = r.result.representable;
  o.cause = record_cause(r, ctx);
  if (r.annotated_cause) {
    o.annotated_cause = parse_cause_label(*r.annotated_cause);
    if (!o.annotated_cause) {
      throw Error(ErrorCode::validation, "record '" + r.id + "': unknown cause annotation '" + *r.annotated_cause + "'");
    }
  }
  return o;
}

CorpusReport build_report(const std::vector<RecordOutcome>& records, const std::string& srs_id) {
  if (records.empty()) throw Error(ErrorCode::validation, "report for '" + srs_id + "' needs at least one record");
  CorpusReport report;
  report.srs_id = srs_id;
  report.total = records.size();
  std::vector<std::string> missing;
  for (const auto& r : records) {
    int cause = 0;
    if (r.annotated_cause) {
      cause = *r.annotated_cause;
    } else if (r.representable) {
      ++report.representable;
      continue;
    } else if (r.cause == FailureClass::cause1) {
      cause = 1;
    } else if (r.cause == FailureClass::cause2) {
      cause = 2;
    }
    switch (cause) {
      case 1: ++report.causes.cause1; break;
      case 2: ++report.causes.cause2; break;
      case 3: ++report.causes.cause3; break;
      default: missing.push_back(r.id);
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::incomplete_annotation,
                "non-representable records without a cause in '" + srs_id + "'", std::nullopt, missing);
  }
  return report;
}

CorpusReport build_report(const std::vector<RequirementRecord>& records, const std::string& srs_id,
                          const ParserContext& ctx) {
  std::vector<RecordOutcome> outcomes;
  outcomes.reserve(records.size());
  for (const auto& r : records) outcomes.push_back(outcome_of(r, ctx));
  return build_report(outcomes, srs_id);
}

std::pair<std::string, std::vector<RecordOutcome>> outcomes_from_json(const json& file) {
  if (!file.is_object() || !file.contains("records") || !file.at("records").is_array()) {
    throw Error(ErrorCode::format, "record file must be an object with a 'records' array");
  }
  std::string srs_id = file.value("srs_id", std::string("SRS"));
  std::vector<RecordOutcome> out;
  for (const auto& rec : file.at("records")) {
    if (!rec.is_object() || !rec.contains("representable") || !rec.at("representable").is_boolean()) {
      throw Error(ErrorCode::format, "record entries need a boolean 'representable'");
    }
    RecordOutcome o;
    o.id = rec.value("id", std::string());
    o.representable = rec.at("representable").get<bool>();
    if (rec.contains("cause") && rec.at("cause").is_string()) {
      std::string c = rec.at("cause");
      if (c == "cause1") o.cause = FailureClass::cause1;
      if (c == "cause2") o.cause = FailureClass::cause2;
      if (c == "unknown") o.cause = FailureClass::unknown;
    }
    if (rec.contains("annotated_cause") && rec.at("annotated_cause").is_string()) {
      o.annotated_cause = parse_cause_label(rec.at("annotated_cause"));
      if (!o.annotated_cause) throw Error(ErrorCode::format, "record '" + o.id + "': unknown cause annotation");
    }
    out.push_back(std::move(o));
  }
  return {srs_id, std::move(out)};
}

namespace {

bool is_record_file(const json& j) {
  if (!j.is_object() || !j.contains("records") || !j.at("records").is_array()) return false;
  const auto& recs = j.at("records");
  return std::all_of(recs.begin(), recs.end(), [](const json& r) { return r.is_object() && r.contains("representable"); });
}

}  // namespace

CorpusReport report_from_json(const json& source, const std::string& srs_id, const ParserContext& ctx) {
  if (is_record_file(source)) {
    auto [id, outcomes] = outcomes_from_json(source);
    return build_report(outcomes, source.contains("srs_id") ? id : srs_id);
  }
  if (source.is_object() && source.contains("records")) {
    return build_report(parse_document_json(source.at("records"), ctx), source.value("srs_id", srs_id), ctx);
  }
  if (source.is_string()) return build_report(parse_document(source.get<std::string>(), ctx), srs_id, ctx);
  return build_report(parse_document_json(source, ctx), srs_id, ctx);
}

CorpusReport report_from_source(std::string_view content, const std::string& srs_id, const ParserContext& ctx) {
  std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '{') {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::format, std::string("malformed record file: ") + e.what());
    }
    return report_from_json(j, srs_id, ctx);
  }
  return build_report(parse_document(content, ctx), srs_id, ctx);
}

ZTestResult ztest(const ZTestInput& in, double alpha) {
  if (in.n1 < 1 || in.n2 < 1 || in.x1 < 0 || in.x2 < 0 || in.x1 > in.n1 || in.x2 > in.n2) {
    throw Error(ErrorCode::validation, "z-test input needs n >= 1 and 0 <= x <= n");
  }
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorCode::validation, "alpha must lie in (0, 1)");
  ZTestResult r;
  r.alpha = alpha;
  r.p_hat1 = static_cast<double>(in.x1) / in.n1;
  r.p_hat2 = static_cast<double>(in.x2) / in.n2;
  r.p_bar = static_cast<double>(in.x1 + in.x2) / (in.n1 + in.n2);
  if (in.x1 + in.x2 == 0 || in.x1 + in.x2 == in.n1 + in.n2) {
    throw Error(ErrorCode::degenerate_input, "pooled proportion is 0 or 1; the z statistic is undefined");
  }
  double se = std::sqrt(r.p_bar * (1 - r.p_bar) * (1.0 / in.n1 + 1.0 / in.n2));
  r.z = (r.p_hat1 - r.p_hat2) / se;
  r.p_value = normal_cdf(r.z);
  r.reject_h0 = r.p_value < alpha;
  return r;
}

SaturationStatus saturation(const std::vector<CorpusReport>& reports) {
  if (reports.empty()) throw Error(ErrorCode::validation, "saturation needs at least one report");
  SaturationStatus s;
  for (const auto& r : reports) s.per_srs.emplace_back(r.srs_id, r.causes.cause1);
  s.saturated = reports.back().causes.cause1 == 0;
  return s;
}

std::vector<PairwiseTest> pairwise_ztests(const std::vector<CorpusReport>& reports, double alpha) {
  if (reports.size() < 2) throw Error(ErrorCode::validation, "pairwise z-tests need at least two reports");
  std::vector<PairwiseTest> out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      ZTestInput in{static_cast<long>(reports[i].total), static_cast<long>(reports[i].representable),
                    static_cast<long>(reports[j].total), static_cast<long>(reports[j].representable)};
      out.push_back(PairwiseTest{reports[i].srs_id, reports[j].srs_id, in, ztest(in, alpha)});
    }
  }
  return out;
}

json to_json(const CorpusReport& r) {
  return json{{"srs_id", r.srs_id},
              {"total", r.total},
              {"representable", r.representable},
              {"percent_representable", r.percent_representable()},
              {"cause_counts", {{"cause1", r.causes.cause1}, {"cause2", r.causes.cause2}, {"cause3", r.causes.cause3}}}};
}

json to_json(const ZTestInput& in) { return json{{"n1", in.n1}, {"x1", in.x1}, {"n2", in.n2}, {"x2", in.x2}}; }

json to_json(const ZTestResult& r) {
  return json{{"p_hat1", r.p_hat1}, {"p_hat2", r.p_hat2}, {"p_bar", r.p_bar},      {"z", r.z},
              {"p_value", r.p_value}, {"alpha", r.alpha},  {"reject_h0", r.reject_h0}};
}

json to_json(const SaturationStatus& s) {
  json per = json::array();
  for (const auto& [id, c1] : s.per_srs) per.push_back(json{{"srs_id", id}, {"cause1", c1}});
  return json{{"per_srs", per}, {"saturated", s.saturated}};
}

json to_json(const PairwiseTest& t) {
  json j = to_json(t.result);
  j["pair"] = {t.srs_i, t.srs_j};
  j["input"] = to_json(t.input);
  return j;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string p_text(double p) { return p < 0.001 ? fmt("%.2e", p) : fmt("%.2f", p); }

}  // namespace

std::string format_report(const std::vector<CorpusReport>& reports, const std::vector<PairwiseTest>& tests,
                          const SaturationStatus& status) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %8s %8s %8s %8s %8s\n", "SRS", "Total", "%Repr", "Cause1", "Cause2",
                "Cause3");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-10s %8zu %8.1f %8zu %8zu %8zu\n", r.srs_id.c_str(), r.total,
                  100.0 * r.percent_representable(), r.causes.cause1, r.causes.cause2, r.causes.cause3);
    os << line;
  }
  os << "saturated: " << (status.saturated ? "yes" : "no") << "\n";
  if (tests.empty()) return os.str();

  os << "\n";
  std::snprintf(line, sizeof line, "%-5s %-22s %6s %6s %6s %6s\n", "Test", "Pair", "n1", "n2", "x1", "x2");
  os << line;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto& t = tests[i];
    std::string pair = t.srs_i + ", " + t.srs_j;
    std::snprintf(line, sizeof line, "%-5zu %-22s %6ld %6ld %6ld %6ld\n", i + 1, pair.c_str(), t.input.n1, t.input.n2,
                  t.input.x1, t.input.x2);
    os << line;
  }
  os << "\n";
  std::snprintf(line, sizeof line, "%-5s %-22s %8s %10s %8s\n", "Test", "Pair", "z", "p-value", "H0");
  os << line;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto& t = tests[i];
    std::string pair = t.srs_i + ", " + t.srs_j;
    std::snprintf(line, sizeof line, "%-5zu %-22s %8.2f %10s %8s\n", i + 1, pair.c_str(), t.result.z,
                  p_text(t.result.p_value).c_str(), t.result.reject_h0 ? "reject" : "retain");
    os << line;
  }
  return os.str();
}

}  // namespace rimay
