#include <gtest/gtest.h>

#include <random>

#include "rimay/syntax.hpp"

using namespace rimay;

namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(std::string_view text) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const Token& t : tokenize(text)) out.emplace_back(t.kind, t.lexeme);
  return out;
}

}  // namespace

TEST(Tokenizer, SimpleSentence) {
  auto toks = kinds("System-A must create");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0], std::make_pair(TokenKind::word, std::string("System-A")));
  EXPECT_EQ(toks[1], std::make_pair(TokenKind::keyword, std::string("must")));
  EXPECT_EQ(toks[2], std::make_pair(TokenKind::word, std::string("create")));
  EXPECT_EQ(toks[3].first, TokenKind::eof);
}

TEST(Tokenizer, EmptyIsEof) {
  auto toks = tokenize("");
  ASSERT_EQ(toks.size(), 1u);
  EXPECT_EQ(toks[0].kind, TokenKind::eof);
}

TEST(Tokenizer, QuotedTextStripsDelimiters) {
  auto toks = tokenize("\"current validation rules\"");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].kind, TokenKind::quoted_text);
  EXPECT_EQ(toks[0].lexeme, "current validation rules");
  EXPECT_EQ(toks[0].span.start, 0u);
  EXPECT_EQ(toks[0].span.end, 26u);
}

TEST(Tokenizer, MultiWordKeywordsLongestMatch) {
  for (std::string kw : {"in compliance with", "conforms to the standard", "of type", "only one", "is available",
                         "is less than or equal to", "described in"}) {
    auto toks = tokenize("X " + kw + " Y");
    ASSERT_EQ(toks.size(), 4u) << kw;
    EXPECT_EQ(toks[1].kind, TokenKind::keyword) << kw;
    EXPECT_EQ(toks[1].norm, kw);
  }
}

TEST(Tokenizer, KeywordsAreCaseInsensitive) {
  auto toks = tokenize("IF x Is Equal To y");
  EXPECT_TRUE(toks[0].is_keyword("if"));
  EXPECT_TRUE(toks[2].is_keyword("is equal to"));
  EXPECT_EQ(toks[2].lexeme, "Is Equal To");
}

TEST(Tokenizer, NumbersAndDigitLedWords) {
  auto toks = tokenize("20000 Euros 1h00 MT530 3.5 0000");
  EXPECT_EQ(toks[0].kind, TokenKind::number);
  EXPECT_EQ(toks[1].kind, TokenKind::word);
  EXPECT_EQ(toks[2].kind, TokenKind::word);
  EXPECT_EQ(toks[2].lexeme, "1h00");
  EXPECT_EQ(toks[3].kind, TokenKind::word);
  EXPECT_EQ(toks[4].kind, TokenKind::number);
  EXPECT_EQ(toks[4].lexeme, "3.5");
  EXPECT_EQ(toks[5].lexeme, "0000");
}

TEST(Tokenizer, BulletsOnlyAtLineStart) {
  auto toks = tokenize("hold:\n- X\n  - B\nZ-Value - C");
  std::vector<TokenKind> ks;
  for (const auto& t : toks) ks.push_back(t.kind);
  std::vector<TokenKind> want{TokenKind::word,   TokenKind::punctuation, TokenKind::newline, TokenKind::bullet,
                              TokenKind::word,   TokenKind::newline,     TokenKind::bullet,  TokenKind::word,
                              TokenKind::newline, TokenKind::word,       TokenKind::punctuation, TokenKind::word,
                              TokenKind::eof};
  EXPECT_EQ(ks, want);
}

TEST(Tokenizer, UnterminatedQuote) {
  try {
    tokenize("send the \"file");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.span().start, 9u);
    EXPECT_EQ(e.span().line, 1u);
  }
  LexResult r = lex("send the \"file");
  ASSERT_TRUE(r.error_span);
  EXPECT_EQ(r.tokens.back().kind, TokenKind::eof);
}

TEST(Tokenizer, SpansLineAndColumn) {
  auto toks = tokenize("If x:\n- Status is Valid");
  const Token& status = toks[5];
  EXPECT_EQ(status.lexeme, "Status");
  EXPECT_EQ(status.span.line, 2u);
  EXPECT_EQ(status.span.column, 3u);
}

// Spans are ascending, non-overlapping, and together with whitespace they
// reproduce the input.
TEST(Tokenizer, SpansPartitionNonWhitespace) {
  const std::string alphabet = "ab Z-_9.,:()\"\n\t-xyz ";
  std::mt19937 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string text;
    std::size_t len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    LexResult r = lex(text);
    std::size_t covered_end = 0;
    std::string rebuilt(text.size(), ' ');
    for (const Token& t : r.tokens) {
      ASSERT_LE(t.span.start, t.span.end);
      ASSERT_LE(t.span.end, text.size());
      if (t.kind == TokenKind::eof) continue;
      ASSERT_GE(t.span.start, covered_end) << text;
      for (std::size_t i = covered_end; i < t.span.start; ++i) {
        ASSERT_TRUE(text[i] == ' ' || text[i] == '\t' || text[i] == '\r') << text;
      }
      for (std::size_t i = t.span.start; i < t.span.end; ++i) rebuilt[i] = text[i];
      covered_end = t.span.end;
    }
    if (r.error_span) continue;
    for (std::size_t i = covered_end; i < text.size(); ++i) ASSERT_TRUE(text[i] == ' ' || text[i] == '\t') << text;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != ' ' && text[i] != '\t') ASSERT_EQ(rebuilt[i], text[i]) << text;
    }
  }
}
