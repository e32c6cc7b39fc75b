#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rimay/parser.hpp"

namespace rimay {

struct RequirementRecord {
  std::string id;
  std::string description;
  std::optional<std::string> rationale;
  std::optional<std::string> examples;
  // Human annotation; only "cause3" is meaningful to the statistics.
  std::optional<std::string> annotated_cause;
  // 1-based line of the description in the source document.
  std::size_t line = 1;
  ParseResult result;
};

/// JSON array of {id, description, rationale?, examples?, annotated_cause?},
/// or plain text with blank-line separated entries numbered R1..Rn.
std::vector<RequirementRecord> parse_document(std::string_view text, const ParserContext& ctx);
std::vector<RequirementRecord> parse_document_json(const nlohmann::json& doc, const ParserContext& ctx);

/// Auto-classification for a non-representable record, nullopt otherwise.
std::optional<FailureClass> record_cause(const RequirementRecord& r, const ParserContext& ctx);

nlohmann::json to_json(const RequirementRecord& r, const ParserContext& ctx);

/// {"srs_id": ..., "records": [...]} as consumed by the statistics.
nlohmann::json records_to_json(const std::string& srs_id, const std::vector<RequirementRecord>& records,
                               const ParserContext& ctx);

}  // namespace rimay
