#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rimay/parser.hpp"

namespace rimay {

enum class ItemKind { keyword, verb, actor, class_, property, instance, element, ui_component, operator_, snippet };

const char* to_string(ItemKind k);

struct CompletionItem {
  std::string label;
  std::string insert_text;
  ItemKind kind = ItemKind::keyword;
  std::optional<std::string> detail;  // code id, owner, or "placeholder: <what>"
  int sort_rank = 0;
  // insert_text replaces text[replace_from, offset).
  std::size_t replace_from = 0;

  bool operator==(const CompletionItem&) const = default;
};

struct CompletionRequest {
  std::string text;
  std::size_t offset = 0;
};

/// Ranked completions at `offset`. Throws Error(usage) when offset > size.
std::vector<CompletionItem> complete(std::string_view text, std::size_t offset, const ParserContext& ctx);
inline std::vector<CompletionItem> complete(const CompletionRequest& req, const ParserContext& ctx) {
  return complete(req.text, req.offset, ctx);
}

/// Verb code and members, or symbol kind and declaration, under `offset`.
std::optional<std::string> hover(std::string_view text, std::size_t offset, const ParserContext& ctx);

nlohmann::json to_json(const CompletionItem& item);

}  // namespace rimay
