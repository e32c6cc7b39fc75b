#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rimay/ast.hpp"
#include "rimay/lexicon.hpp"
#include "rimay/model.hpp"

namespace rimay {

enum class Severity { error, warning };
enum class Cause { cause1_unknown_verb, cause2_unsupported_content };
enum class FailureClass { cause1, cause2, unknown };

const char* to_string(Severity s);
const char* to_string(Cause c);
const char* to_string(FailureClass c);

/// What the grammar would have accepted at some position.
enum class ExpectKind {
  keyword,       // value: keyword surface
  punct,         // value: the character
  symbol,        // context: actor, subject, lhs, operand, class
  continuation,  // value: words of the name typed so far; context as symbol
  property,      // value: owner name
  verb,
  text,       // a quoted or free text may start
  text_more,  // unquoted free text may continue
  number,
  value,
  time,
  zone,
  unit,
  frequency_unit,
  bullet,
  itemized,  // context: "condition" or "response"
  end,
};

struct Expectation {
  ExpectKind kind;
  std::string value;
  std::string context;

  auto operator<=>(const Expectation&) const = default;
  bool operator==(const Expectation&) const = default;
};

std::string describe(const Expectation& e);

struct Diagnostic {
  Severity severity = Severity::error;
  Span span;
  std::string message;
  std::vector<std::string> expected;
  std::optional<Cause> cause;
};

/// A verb or name occurrence recognised during a successful parse path.
struct Annotation {
  enum class Role { verb, symbol };
  Role role;
  Span span;
  std::string detail;  // code id for verbs, symbol kind for names
  std::string name;    // lemma for verbs, dotted path for names
};

struct ParserOptions {
  int max_errors = 25;
  bool recovery = true;
};

struct ParserContext {
  std::shared_ptr<const Lexicon> lexicon;
  std::shared_ptr<const SymbolTable> symbols;
  ParserOptions options;

  /// Default lexicon, empty symbol table.
  ParserContext();
  ParserContext(Lexicon lex, SymbolTable table, ParserOptions opts = {});
  ParserContext(std::shared_ptr<const Lexicon> lex, std::shared_ptr<const SymbolTable> table, ParserOptions opts = {});
};

struct ParseResult {
  std::optional<Requirement> requirement;
  std::vector<Diagnostic> diagnostics;
  bool representable = false;

  // Everything the grammar could accept at end of input, used for content assist.
  std::vector<Expectation> expected_at_end;
  // "X of type Y" bindings visible at end of input.
  std::vector<std::pair<std::string, std::string>> bindings;
  std::vector<Annotation> annotations;

  /// Start offset of the first error, if any.
  std::optional<std::size_t> failure_offset() const;
  std::size_t error_count() const;
};

enum class Fragment { requirement, condition, trigger, action_phrase, scope, response };

using FragmentNode = std::variant<std::monostate, Requirement, ConditionExpr, Trigger, ActionPhrase, Scope, SystemResponse>;

struct FragmentResult {
  FragmentNode node;
  std::vector<Diagnostic> diagnostics;
  bool representable = false;
};

ParseResult parse_requirement(std::string_view text, const ParserContext& ctx);
FragmentResult parse_fragment(std::string_view text, Fragment kind, const ParserContext& ctx);

/// Throws Error(usage) when the result is representable.
FailureClass classify_failure(const ParseResult& result, const ParserContext& ctx);

nlohmann::json to_json(const Diagnostic& d);
nlohmann::json to_json(const ParseResult& r);

}  // namespace rimay
