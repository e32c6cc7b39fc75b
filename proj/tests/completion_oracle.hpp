#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rimay/assist.hpp"
#include "rimay/syntax.hpp"

namespace rimay::testing {

inline bool same_word(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
  }
  return true;
}

inline std::vector<Token> real_tokens(std::string_view text) {
  std::vector<Token> out;
  for (const auto& t : lex(text).tokens) {
    if (t.kind != TokenKind::eof) out.push_back(t);
  }
  return out;
}

/// True when applying `item` at the end of `prefix` reproduces `next` as the
/// token following the first `index` tokens, or a placeholder of its kind.
inline bool item_covers(const std::string& prefix, const CompletionItem& item, std::size_t index, const Token& next) {
  std::string applied = prefix.substr(0, item.replace_from) + item.insert_text;
  auto toks = real_tokens(applied);
  if (toks.size() <= index) return false;
  const Token& got = toks[index];
  bool placeholder = item.kind == ItemKind::snippet && item.detail && item.detail->rfind("placeholder: ", 0) == 0;
  if (placeholder) {
    if (*item.detail == "placeholder: text") return true;
    return got.kind == next.kind;
  }
  return got.kind == next.kind && got.norm == next.norm;
}

struct CompletenessMiss {
  std::size_t offset;
  std::string token;
};

/// Every token of `text` must be offered (or placeholder-covered) by a
/// completion at its start.
inline std::vector<CompletenessMiss> completeness_misses(const std::string& text, const ParserContext& ctx) {
  std::vector<CompletenessMiss> misses;
  auto toks = real_tokens(text);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::string prefix = text.substr(0, toks[i].span.start);
    auto items = complete(prefix, prefix.size(), ctx);
    bool hit = false;
    for (const auto& item : items) {
      if (item_covers(prefix, item, i, toks[i])) {
        hit = true;
        break;
      }
    }
    if (!hit) misses.push_back({toks[i].span.start, toks[i].lexeme});
  }
  return misses;
}

/// An item is sound when the text it produces is representable or still a
/// viable prefix: the first failure is the end of input, hence strictly later
/// than any failure of the original prefix.
inline bool item_sound(const std::string& prefix, const CompletionItem& item, const ParserContext& ctx) {
  std::string applied = prefix.substr(0, item.replace_from) + item.insert_text;
  ParseResult after = parse_requirement(applied, ctx);
  if (after.representable) return true;
  auto a = after.failure_offset();
  if (!a) return false;
  std::size_t end = applied.find_last_not_of(" \t\r\n");
  end = end == std::string::npos ? 0 : end + 1;
  if (*a < end) return false;
  auto b = parse_requirement(prefix, ctx).failure_offset();
  return !b || *a > *b;
}

}  // namespace rimay::testing
