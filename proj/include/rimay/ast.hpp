#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rimay/lexicon.hpp"
#include "rimay/model.hpp"
#include "rimay/syntax.hpp"

namespace rimay {

enum class Quantifier { all, none, only_one, any };
enum class Article { a, an, the };

struct Modifier {
  std::optional<Quantifier> quantifier;
  std::optional<Article> article;

  bool empty() const { return !quantifier && !article; }
};

/// How a reference was written in the source.
enum class Notation {
  plain,           // Name
  dotted,          // Owner.Property
  of_owner,        // Property of Owner
  implicit_owner,  // Property, owner inferred from the sole bound instance
};

struct SymbolRef {
  SymbolKind kind = SymbolKind::element;
  std::vector<std::string> path;
  Modifier modifier;
  Notation notation = Notation::plain;
  std::optional<std::string> declared_type;  // "Inx1 of type Instruction"
  bool resolved = false;
  Span span;

  const std::string& name() const { return path.back(); }
};

struct TextLiteral {
  std::string raw;
  bool quoted = false;
  Span span;
};

struct TimeLiteral {
  std::string time;  // "1h00"
  std::optional<std::string> zone;
  Span span;
};

struct NumberLiteral {
  std::string raw;
  std::optional<std::string> unit;
  Span span;
};

struct ValueLiteral {
  std::string word;
  Span span;
};

struct TextOperand {
  Modifier modifier;
  TextLiteral text;
};

using Operand = std::variant<SymbolRef, NumberLiteral, TextOperand, ValueLiteral>;

enum class OpKind { eq, neq, lt, le, gt, ge, has, contains, is_available, conforms_to };
enum class OpFamily { compare, contains, other };

struct Operator {
  OpKind kind = OpKind::eq;
  bool negated = false;

  OpFamily family() const;
  bool takes_operand() const { return kind != OpKind::is_available; }
  bool operator==(const Operator&) const = default;
};

struct OperatorSurface {
  std::string surface;
  OpKind kind;
  bool negated;
};

/// Accepted operator spellings; the first entry per (kind, negated) is canonical.
const std::vector<OperatorSurface>& operator_surfaces();
std::string canonical_surface(const Operator& op);

struct HasProperties {
  SymbolRef owner;
  std::vector<std::string> properties;  // inline form
  std::optional<TextLiteral> document;  // "described in" form
};

struct Convention {
  SymbolRef subject;
  Operator op;
  TextLiteral standard;
};

struct ClassOrPropOpElement {
  SymbolRef lhs;
  Operator op;
  std::optional<Operand> rhs;
};

struct InstanceOrPropOpValue {
  SymbolRef lhs;
  Operator op;
  ValueLiteral rhs;
};

struct UiComponentOp {
  Modifier modifier;
  TextLiteral label;
  std::string component_type;
  Operator op;
  std::optional<Operand> rhs;
};

struct Condition {
  std::variant<HasProperties, Convention, ClassOrPropOpElement, InstanceOrPropOpValue, UiComponentOp> node;
  Span span;
};

enum class LogicOp { leaf, not_, and_, or_, paren };

/// And/Or nodes are n-ary and never directly nest the same operator.
template <typename Leaf>
struct LogicExpr {
  LogicOp op = LogicOp::leaf;
  std::optional<Leaf> leaf;
  std::vector<LogicExpr> operands;
  Span span;

  static LogicExpr make_leaf(Leaf value, Span span) {
    LogicExpr e;
    e.leaf = std::move(value);
    e.span = span;
    return e;
  }
  static LogicExpr make(LogicOp op, std::vector<LogicExpr> children, Span span) {
    LogicExpr e;
    e.op = op;
    e.operands = std::move(children);
    e.span = span;
    return e;
  }
};

enum class Connector { and_, or_ };

struct SlotFill {
  SlotRole role = SlotRole::theme;
  std::string keyword;  // as declared by the code's slot template
  std::vector<Operand> operands;
  std::vector<Connector> connectors;  // operands.size() - 1 entries
};

struct ActionPhrase {
  std::string code_id;
  std::string verb;  // lowercase surface form as written
  std::vector<SlotFill> slots;
  Span span;
};

enum class FrequencyUnit { millisecond, second, minute, hour, day, week, month };

struct Frequency {
  std::string every;  // decimal as written
  FrequencyUnit unit = FrequencyUnit::second;
  Span span;
};

struct AtomicResponse {
  ActionPhrase phrase;
  std::optional<Frequency> frequency;
  Span span;
};

using ConditionExpr = LogicExpr<Condition>;
using ActionExpr = LogicExpr<ActionPhrase>;
using ResponseExpr = LogicExpr<AtomicResponse>;

template <typename Item>
struct Itemized {
  Span intro_span;
  std::vector<Item> items;
  std::vector<Connector> connectors;
};

struct Trigger {
  SymbolRef actor;
  ActionExpr actions;
  Span span;
};

using PreconditionStructure = std::variant<Itemized<ConditionExpr>, ConditionExpr>;

struct WhileStructure {
  ConditionExpr states;
};
struct WhenStructure {
  Trigger trigger;
};
struct WhereStructure {
  TextLiteral features;
};
struct IfStructure {
  PreconditionStructure pre;
};
enum class Direction { before, after };
struct TemporalStructure {
  Direction direction = Direction::before;
  std::variant<TimeLiteral, Trigger> anchor;
};

struct ConditionStructure {
  std::variant<WhileStructure, WhenStructure, WhereStructure, IfStructure, TemporalStructure> node;
  Span span;
};

struct ConditionStructures {
  ConditionStructure head;
  std::vector<std::pair<Connector, ConditionStructure>> rest;
};

struct Scope {
  SymbolRef subject;  // quantifier and article live in subject.modifier
  Span span;
};

enum class ModalVerb { must, shall };

struct Modal {
  ModalVerb verb = ModalVerb::must;
  bool negated = false;
};

using SystemResponse = std::variant<Itemized<AtomicResponse>, ResponseExpr>;

struct Requirement {
  std::optional<Scope> scope;
  std::optional<ConditionStructures> conditions;
  bool then = false;
  SymbolRef actor;
  Modal modal;
  SystemResponse response;
  Span span;
};

const char* to_string(Quantifier q);
const char* to_string(Article a);
const char* to_string(OpKind k);
const char* to_string(OpFamily f);
const char* to_string(FrequencyUnit u);
const char* to_string(Connector c);

// JSON mirror of the tree; every node carries a "node" discriminator and,
// unless disabled, a "span".
nlohmann::json to_json(const Span& s);
nlohmann::json to_json(const SymbolRef& n, bool spans = true);
nlohmann::json to_json(const Operand& n, bool spans = true);
nlohmann::json to_json(const Condition& n, bool spans = true);
nlohmann::json to_json(const ConditionExpr& n, bool spans = true);
nlohmann::json to_json(const ActionPhrase& n, bool spans = true);
nlohmann::json to_json(const ActionExpr& n, bool spans = true);
nlohmann::json to_json(const Trigger& n, bool spans = true);
nlohmann::json to_json(const AtomicResponse& n, bool spans = true);
nlohmann::json to_json(const SystemResponse& n, bool spans = true);
nlohmann::json to_json(const ConditionStructure& n, bool spans = true);
nlohmann::json to_json(const ConditionStructures& n, bool spans = true);
nlohmann::json to_json(const Scope& n, bool spans = true);
nlohmann::json to_json(const Requirement& n, bool spans = true);

/// Equality ignoring spans.
template <typename Node>
bool structurally_equal(const Node& a, const Node& b) {
  return to_json(a, false) == to_json(b, false);
}

// Canonical text.
std::string pretty_print(const SymbolRef& n);
std::string pretty_print(const Operand& n);
std::string pretty_print(const Condition& n);
std::string pretty_print(const ConditionExpr& n);
std::string pretty_print(const ActionPhrase& n);
std::string pretty_print(const ActionExpr& n);
std::string pretty_print(const Trigger& n);
std::string pretty_print(const AtomicResponse& n);
std::string pretty_print(const ResponseExpr& n);
std::string pretty_print(const ConditionStructure& n);
std::string pretty_print(const ConditionStructures& n);
std::string pretty_print(const Scope& n);
std::string pretty_print(const Modal& n);
std::string pretty_print(const Requirement& n);

}  // namespace rimay
