#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rimay/error.hpp"

namespace rimay {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  bool operator==(const Span&) const = default;
};

enum class TokenKind { keyword, word, quoted_text, number, punctuation, bullet, newline, eof };

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::eof;
  std::string lexeme;  // quoted_text: content without delimiters
  std::string norm;    // lowercase, single-spaced
  Span span;

  bool is(TokenKind k, std::string_view n) const { return kind == k && norm == n; }
  bool is_keyword(std::string_view n) const { return is(TokenKind::keyword, n); }
  bool is_punct(char c) const { return kind == TokenKind::punctuation && lexeme.size() == 1 && lexeme[0] == c; }
};

class LexError : public Error {
 public:
  LexError(const std::string& message, Span span) : Error(ErrorCode::format, message, span.line), span_(span) {}
  const Span& span() const noexcept { return span_; }

 private:
  Span span_;
};

struct LexResult {
  std::vector<Token> tokens;  // always ends with eof
  std::optional<Span> error_span;
  std::string error_message;
};

/// Never throws; a lexing failure truncates the stream at the bad token.
LexResult lex(std::string_view text);

/// Throws LexError on an unterminated quote.
std::vector<Token> tokenize(std::string_view text);

/// Every keyword surface, single- and multi-word, lowercase.
const std::vector<std::string>& keyword_surfaces();
bool is_keyword_surface(std::string_view normalized);

/// Span covering [start, end) with line/column of `start`.
Span make_span(std::string_view text, std::size_t start, std::size_t end);

}  // namespace rimay
