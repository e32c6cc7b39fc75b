#include <algorithm>
#include <cctype>

#include "rimay/ast.hpp"
#include "rimay/syntax.hpp"
#include "text_util.hpp"

namespace rimay {

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::keyword: return "keyword";
    case TokenKind::word: return "word";
    case TokenKind::quoted_text: return "quoted_text";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::bullet: return "bullet";
    case TokenKind::newline: return "newline";
    case TokenKind::eof: return "eof";
  }
  return "eof";
}

namespace {

const char* const kSingleKeywords[] = {
    "for", "while", "when", "where", "if",  "before", "after", "then", "and",  "or",
    "not", "must",  "shall", "all",  "none", "any",   "a",     "an",   "the",  "from",
    "to",  "through", "every", "of", "is",  "has",    "have",  "contains", "contain",
};

const char* const kMultiKeywords[] = {"only one", "in compliance with", "described in", "of type"};

bool is_word_start(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

struct KeywordTable {
  std::vector<std::string> surfaces;
  std::vector<std::vector<std::string>> by_words;  // longest first

  KeywordTable() {
    for (const char* k : kSingleKeywords) surfaces.emplace_back(k);
    for (const char* k : kMultiKeywords) surfaces.emplace_back(k);
    for (const auto& op : operator_surfaces()) surfaces.push_back(op.surface);
    std::sort(surfaces.begin(), surfaces.end());
    surfaces.erase(std::unique(surfaces.begin(), surfaces.end()), surfaces.end());
    for (const auto& s : surfaces) by_words.push_back(text::split_words(s));
    std::stable_sort(by_words.begin(), by_words.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }
};

const KeywordTable& keyword_table() {
  static const KeywordTable table;
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  LexResult run() {
    LexResult out;
    bool line_start = true;
    std::size_t i = 0;
    while (i < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[i]);
      if (c == '\n') {
        push(out, TokenKind::newline, i, i + 1, "\n");
        line_start = true;
        ++i;
        continue;
      }
      if (text::is_space(static_cast<char>(c))) {
        ++i;
        continue;
      }
      if (c == '-' && line_start && i + 1 < text_.size() && (text_[i + 1] == ' ' || text_[i + 1] == '\t')) {
        push(out, TokenKind::bullet, i, i + 1, "-");
        line_start = false;
        ++i;
        continue;
      }
      line_start = false;
      if (c == '"') {
        std::size_t close = text_.find('"', i + 1);
        if (close == std::string_view::npos) {
          out.error_span = span(i, text_.size());
          out.error_message = "unterminated quoted text";
          break;
        }
        Token t;
        t.kind = TokenKind::quoted_text;
        t.lexeme = std::string(text_.substr(i + 1, close - i - 1));
        t.norm = t.lexeme;
        t.span = span(i, close + 1);
        out.tokens.push_back(std::move(t));
        i = close + 1;
        continue;
      }
      if (std::isdigit(c)) {
        std::size_t j = i;
        bool letters = false;
        while (j < text_.size() && is_word_char(static_cast<unsigned char>(text_[j]))) {
          letters = letters || std::isalpha(static_cast<unsigned char>(text_[j]));
          ++j;
        }
        if (letters) {
          push(out, TokenKind::word, i, j);
          i = j;
          continue;
        }
        j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j + 1 < text_.size() && text_[j] == '.' && std::isdigit(static_cast<unsigned char>(text_[j + 1]))) {
          ++j;
          while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        }
        push(out, TokenKind::number, i, j);
        i = j;
        continue;
      }
      if (is_word_start(c)) {
        std::size_t end = match_keyword(i);
        if (end != 0) {
          Token t;
          t.kind = TokenKind::keyword;
          t.lexeme = std::string(text_.substr(i, end - i));
          t.norm = text::normalize_spaces(text::lower(t.lexeme));
          t.span = span(i, end);
          out.tokens.push_back(std::move(t));
          i = end;
          continue;
        }
        std::size_t j = word_end(i);
        push(out, TokenKind::word, i, j);
        i = j;
        continue;
      }
      push(out, TokenKind::punctuation, i, i + 1);
      ++i;
    }
    std::size_t end = out.error_span ? out.error_span->start : text_.size();
    Token eof;
    eof.kind = TokenKind::eof;
    eof.span = span(end, end);
    out.tokens.push_back(std::move(eof));
    return out;
  }

 private:
  std::size_t word_end(std::size_t i) const {
    std::size_t j = i;
    while (j < text_.size() && is_word_char(static_cast<unsigned char>(text_[j]))) ++j;
    return j;
  }

  // End offset of the longest keyword starting at i, or 0.
  std::size_t match_keyword(std::size_t i) const {
    for (const auto& words : keyword_table().by_words) {
      std::size_t pos = i;
      bool ok = true;
      for (std::size_t w = 0; w < words.size() && ok; ++w) {
        if (w > 0) {
          std::size_t gap = pos;
          while (pos < text_.size() && (text_[pos] == ' ' || text_[pos] == '\t')) ++pos;
          if (pos == gap) ok = false;
        }
        if (!ok || pos >= text_.size() || !is_word_start(static_cast<unsigned char>(text_[pos]))) {
          ok = false;
          break;
        }
        std::size_t end = word_end(pos);
        if (text::lower(text_.substr(pos, end - pos)) != words[w]) ok = false;
        pos = end;
      }
      if (ok) return pos;
    }
    return 0;
  }

  void push(LexResult& out, TokenKind kind, std::size_t start, std::size_t end, std::string_view lexeme = {}) {
    Token t;
    t.kind = kind;
    t.lexeme = lexeme.empty() ? std::string(text_.substr(start, end - start)) : std::string(lexeme);
    t.norm = kind == TokenKind::word ? text::lower(t.lexeme) : t.lexeme;
    t.span = span(start, end);
    out.tokens.push_back(std::move(t));
  }

  Span span(std::size_t start, std::size_t end) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), start);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return Span{start, end, line, start - line_starts_[line - 1] + 1};
  }

  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

}  // namespace

Span make_span(std::string_view text, std::size_t start, std::size_t end) {
  start = std::min(start, text.size());
  end = std::clamp(end, start, text.size());
  Span s{start, end, 1, 1};
  for (std::size_t i = 0; i < start; ++i) {
    if (text[i] == '\n') {
      ++s.line;
      s.column = 1;
    } else {
      ++s.column;
    }
  }
  return s;
}

const std::vector<std::string>& keyword_surfaces() { return keyword_table().surfaces; }

bool is_keyword_surface(std::string_view normalized) {
  const auto& s = keyword_table().surfaces;
  return std::binary_search(s.begin(), s.end(), std::string(normalized));
}

LexResult lex(std::string_view text) { return Lexer(text).run(); }

std::vector<Token> tokenize(std::string_view text) {
  LexResult r = lex(text);
  if (r.error_span) throw LexError(r.error_message, *r.error_span);
  return std::move(r.tokens);
}

}  // namespace rimay
