#include "rimay/document.hpp"

#include <algorithm>
#include <set>

#include "text_util.hpp"

namespace rimay {

using nlohmann::json;

namespace {

std::optional<std::string> optional_string(const json& entry, const char* key, std::size_t index) {
  if (!entry.contains(key) || entry.at(key).is_null()) return std::nullopt;
  if (!entry.at(key).is_string()) {
    throw Error(ErrorCode::format, "entry " + std::to_string(index) + ": field '" + key + "' must be a string");
  }
  return entry.at(key).get<std::string>();
}

void mark_duplicates(std::vector<RequirementRecord>& records) {
  std::set<std::string> seen;
  for (auto& r : records) {
    if (seen.insert(r.id).second) continue;
    Diagnostic d;
    d.severity = Severity::error;
    d.span = make_span(r.description, 0, r.description.size());
    d.message = "duplicate requirement id '" + r.id + "'";
    r.result.diagnostics.insert(r.result.diagnostics.begin(), std::move(d));
    r.result.representable = false;
  }
}

std::vector<RequirementRecord> parse_plain(std::string_view text, const ParserContext& ctx) {
  std::vector<RequirementRecord> records;
  std::string current;
  std::size_t line_no = 0;
  std::size_t start_line = 0;
  auto flush = [&] {
    if (current.empty()) return;
    RequirementRecord r;
    r.id = "R" + std::to_string(records.size() + 1);
    r.description = current;
    r.line = start_line;
    r.result = parse_requirement(r.description, ctx);
    records.push_back(std::move(r));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (text::trim(line).empty()) {
      flush();
    } else {
      if (current.empty()) start_line = line_no;
      if (!current.empty()) current += '\n';
      current += line;
    }
    pos = nl + 1;
  }
  flush();
  return records;
}

}  // namespace

std::vector<RequirementRecord> parse_document_json(const json& doc, const ParserContext& ctx) {
  if (!doc.is_array()) throw Error(ErrorCode::format, "requirements document must be a JSON array");
  std::vector<RequirementRecord> records;
  std::size_t index = 0;
  for (const auto& entry : doc) {
    ++index;
    if (!entry.is_object()) throw Error(ErrorCode::format, "entry " + std::to_string(index) + " must be an object");
    RequirementRecord r;
    auto id = optional_string(entry, "id", index);
    auto description = optional_string(entry, "description", index);
    if (!id || id->empty()) throw Error(ErrorCode::format, "entry " + std::to_string(index) + " lacks an id");
    if (!description) throw Error(ErrorCode::format, "entry " + std::to_string(index) + " lacks a description");
    r.id = *id;
    r.description = *description;
    r.rationale = optional_string(entry, "rationale", index);
    r.examples = optional_string(entry, "examples", index);
    r.annotated_cause = optional_string(entry, "annotated_cause", index);
    r.result = parse_requirement(r.description, ctx);
    records.push_back(std::move(r));
  }
  mark_duplicates(records);
  return records;
}

std::vector<RequirementRecord> parse_document(std::string_view text, const ParserContext& ctx) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
      std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
      throw Error(ErrorCode::format, std::string("malformed requirements document: ") + e.what(), line);
    }
    return parse_document_json(doc, ctx);
  }
  auto records = parse_plain(text, ctx);
  mark_duplicates(records);
  return records;
}

std::optional<FailureClass> record_cause(const RequirementRecord& r, const ParserContext& ctx) {
  if (r.result.representable) return std::nullopt;
  return classify_failure(r.result, ctx);
}

json to_json(const RequirementRecord& r, const ParserContext& ctx) {
  json j = to_json(r.result);
  j["id"] = r.id;
  j["description"] = r.description;
  j["line"] = r.line;
  if (r.rationale) j["rationale"] = *r.rationale;
  if (r.examples) j["examples"] = *r.examples;
  if (r.annotated_cause) j["annotated_cause"] = *r.annotated_cause;
  auto cause = record_cause(r, ctx);
  j["cause"] = cause ? json(to_string(*cause)) : json();
  return j;
}

json records_to_json(const std::string& srs_id, const std::vector<RequirementRecord>& records,
                     const ParserContext& ctx) {
  json list = json::array();
  for (const auto& r : records) list.push_back(to_json(r, ctx));
  return json{{"srs_id", srs_id}, {"records", list}};
}

}  // namespace rimay
