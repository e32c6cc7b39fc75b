#include "rimay/ast.hpp"

namespace rimay {

using nlohmann::json;

const char* to_string(Quantifier q) {
  switch (q) {
    case Quantifier::all: return "all";
    case Quantifier::none: return "none";
    case Quantifier::only_one: return "only one";
    case Quantifier::any: return "any";
  }
  return "all";
}

const char* to_string(Article a) {
  switch (a) {
    case Article::a: return "a";
    case Article::an: return "an";
    case Article::the: return "the";
  }
  return "the";
}

const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::eq: return "eq";
    case OpKind::neq: return "neq";
    case OpKind::lt: return "lt";
    case OpKind::le: return "le";
    case OpKind::gt: return "gt";
    case OpKind::ge: return "ge";
    case OpKind::has: return "has";
    case OpKind::contains: return "contains";
    case OpKind::is_available: return "is_available";
    case OpKind::conforms_to: return "conforms_to";
  }
  return "eq";
}

const char* to_string(OpFamily f) {
  switch (f) {
    case OpFamily::compare: return "compare";
    case OpFamily::contains: return "contains";
    case OpFamily::other: return "other";
  }
  return "other";
}

const char* to_string(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::millisecond: return "millisecond";
    case FrequencyUnit::second: return "second";
    case FrequencyUnit::minute: return "minute";
    case FrequencyUnit::hour: return "hour";
    case FrequencyUnit::day: return "day";
    case FrequencyUnit::week: return "week";
    case FrequencyUnit::month: return "month";
  }
  return "second";
}

const char* to_string(Connector c) { return c == Connector::and_ ? "and" : "or"; }

OpFamily Operator::family() const {
  switch (kind) {
    case OpKind::has:
    case OpKind::contains: return OpFamily::contains;
    case OpKind::is_available:
    case OpKind::conforms_to: return OpFamily::other;
    default: return OpFamily::compare;
  }
}

const std::vector<OperatorSurface>& operator_surfaces() {
  static const std::vector<OperatorSurface> table{
      {"is equal to", OpKind::eq, false},
      {"equals to", OpKind::eq, false},
      {"equals", OpKind::eq, false},
      {"is", OpKind::eq, false},
      {"is not equal to", OpKind::neq, false},
      {"is different from", OpKind::neq, false},
      {"is not", OpKind::neq, false},
      {"is less than", OpKind::lt, false},
      {"is not less than", OpKind::lt, true},
      {"is less than or equal to", OpKind::le, false},
      {"less or equal to", OpKind::le, false},
      {"is less or equal to", OpKind::le, false},
      {"is not less than or equal to", OpKind::le, true},
      {"is greater than", OpKind::gt, false},
      {"is not greater than", OpKind::gt, true},
      {"is greater than or equal to", OpKind::ge, false},
      {"greater or equal to", OpKind::ge, false},
      {"is greater or equal to", OpKind::ge, false},
      {"is not greater than or equal to", OpKind::ge, true},
      {"has", OpKind::has, false},
      {"have", OpKind::has, false},
      {"does not have", OpKind::has, true},
      {"contains", OpKind::contains, false},
      {"contain", OpKind::contains, false},
      {"does not contain", OpKind::contains, true},
      {"is available", OpKind::is_available, false},
      {"is not available", OpKind::is_available, true},
      {"conforms to the standard", OpKind::conforms_to, false},
      {"conforms to the format", OpKind::conforms_to, false},
      {"does not conform to the standard", OpKind::conforms_to, true},
      {"does not conform to the format", OpKind::conforms_to, true},
  };
  return table;
}

std::string canonical_surface(const Operator& op) {
  for (const auto& s : operator_surfaces()) {
    if (s.kind == op.kind && s.negated == op.negated) return s.surface;
  }
  return to_string(op.kind);
}

json to_json(const Span& s) {
  return json{{"start", s.start}, {"end", s.end}, {"line", s.line}, {"column", s.column}};
}

namespace {

void put_span(json& j, const Span& s, bool spans) {
  if (spans) j["span"] = to_json(s);
}

void put_modifier(json& j, const Modifier& m) {
  if (m.quantifier) j["quantifier"] = to_string(*m.quantifier);
  if (m.article) j["article"] = to_string(*m.article);
}

const char* to_string(Notation n) {
  switch (n) {
    case Notation::plain: return "plain";
    case Notation::dotted: return "dotted";
    case Notation::of_owner: return "of_owner";
    case Notation::implicit_owner: return "implicit_owner";
  }
  return "plain";
}

json text_json(const TextLiteral& t, bool spans) {
  json j{{"node", "Text"}, {"raw", t.raw}, {"quoted", t.quoted}};
  put_span(j, t.span, spans);
  return j;
}

json op_json(const Operator& op) {
  return json{{"kind", to_string(op.kind)}, {"family", to_string(op.family())}, {"negated", op.negated}};
}

template <typename Leaf>
json logic_json(const LogicExpr<Leaf>& e, bool spans) {
  if (e.op == LogicOp::leaf) return to_json(*e.leaf, spans);
  static const char* names[] = {"Atom", "Not", "And", "Or", "Paren"};
  json j{{"node", names[static_cast<int>(e.op)]}};
  json ops = json::array();
  for (const auto& child : e.operands) ops.push_back(logic_json(child, spans));
  if (e.op == LogicOp::not_ || e.op == LogicOp::paren) {
    j["inner"] = ops.empty() ? json() : ops[0];
  } else {
    j["operands"] = ops;
  }
  put_span(j, e.span, spans);
  return j;
}

json connectors_json(const std::vector<Connector>& cs) {
  json arr = json::array();
  for (Connector c : cs) arr.push_back(to_string(c));
  return arr;
}

template <typename Item>
json itemized_json(const Itemized<Item>& it, bool spans) {
  json items = json::array();
  for (const auto& item : it.items) items.push_back(to_json(item, spans));
  json j{{"node", "Itemized"}, {"items", items}, {"connectors", connectors_json(it.connectors)}};
  if (spans) j["intro_span"] = to_json(it.intro_span);
  return j;
}

}  // namespace

json to_json(const SymbolRef& n, bool spans) {
  json j{{"node", "SymbolRef"},
         {"kind", to_string(n.kind)},
         {"path", n.path},
         {"notation", to_string(n.notation)},
         {"resolved", n.resolved}};
  put_modifier(j, n.modifier);
  if (n.declared_type) j["declared_type"] = *n.declared_type;
  put_span(j, n.span, spans);
  return j;
}

json to_json(const Operand& n, bool spans) {
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymbolRef>) {
          return to_json(v, spans);
        } else if constexpr (std::is_same_v<T, NumberLiteral>) {
          json j{{"node", "Number"}, {"raw", v.raw}};
          if (v.unit) j["unit"] = *v.unit;
          put_span(j, v.span, spans);
          return j;
        } else if constexpr (std::is_same_v<T, TextOperand>) {
          json j = text_json(v.text, spans);
          put_modifier(j, v.modifier);
          return j;
        } else {
          json j{{"node", "Value"}, {"word", v.word}};
          put_span(j, v.span, spans);
          return j;
        }
      },
      n);
}

json to_json(const Condition& n, bool spans) {
  json j = std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HasProperties>) {
          json o{{"node", "HasProperties"}, {"owner", to_json(v.owner, spans)}};
          if (v.document) {
            o["source"] = "document";
            o["document"] = text_json(*v.document, spans);
          } else {
            o["source"] = "inline";
            o["properties"] = v.properties;
          }
          return o;
        } else if constexpr (std::is_same_v<T, Convention>) {
          return json{{"node", "Convention"},
                      {"subject", to_json(v.subject, spans)},
                      {"op", op_json(v.op)},
                      {"standard", text_json(v.standard, spans)}};
        } else if constexpr (std::is_same_v<T, ClassOrPropOpElement>) {
          json o{{"node", "ClassOrPropOpElement"}, {"lhs", to_json(v.lhs, spans)}, {"op", op_json(v.op)}};
          o["rhs"] = v.rhs ? to_json(*v.rhs, spans) : json();
          return o;
        } else if constexpr (std::is_same_v<T, InstanceOrPropOpValue>) {
          json rhs{{"node", "Value"}, {"word", v.rhs.word}};
          put_span(rhs, v.rhs.span, spans);
          return json{{"node", "InstanceOrPropOpValue"}, {"lhs", to_json(v.lhs, spans)}, {"op", op_json(v.op)},
                      {"rhs", rhs}};
        } else {
          json o{{"node", "UiComponentOp"},
                 {"label", text_json(v.label, spans)},
                 {"component_type", v.component_type},
                 {"op", op_json(v.op)}};
          put_modifier(o, v.modifier);
          o["rhs"] = v.rhs ? to_json(*v.rhs, spans) : json();
          return o;
        }
      },
      n.node);
  put_span(j, n.span, spans);
  return j;
}

json to_json(const ConditionExpr& n, bool spans) { return logic_json(n, spans); }
json to_json(const ActionExpr& n, bool spans) { return logic_json(n, spans); }

json to_json(const ActionPhrase& n, bool spans) {
  json slots = json::array();
  for (const auto& s : n.slots) {
    json ops = json::array();
    for (const auto& o : s.operands) ops.push_back(to_json(o, spans));
    slots.push_back({{"role", to_string(s.role)}, {"keyword", s.keyword}, {"operands", ops}, {"connectors", connectors_json(s.connectors)}});
  }
  json j{{"node", "ActionPhrase"}, {"code_id", n.code_id}, {"verb", n.verb}, {"slots", slots}};
  put_span(j, n.span, spans);
  return j;
}

json to_json(const Trigger& n, bool spans) {
  json j{{"node", "Trigger"}, {"actor", to_json(n.actor, spans)}, {"actions", to_json(n.actions, spans)}};
  put_span(j, n.span, spans);
  return j;
}

json to_json(const AtomicResponse& n, bool spans) {
  json j{{"node", "AtomicResponse"}, {"phrase", to_json(n.phrase, spans)}};
  if (n.frequency) {
    json f{{"every", n.frequency->every}, {"unit", to_string(n.frequency->unit)}};
    put_span(f, n.frequency->span, spans);
    j["frequency"] = f;
  }
  put_span(j, n.span, spans);
  return j;
}

json to_json(const SystemResponse& n, bool spans) {
  if (const auto* it = std::get_if<Itemized<AtomicResponse>>(&n)) return itemized_json(*it, spans);
  return logic_json(std::get<ResponseExpr>(n), spans);
}

json to_json(const ConditionStructure& n, bool spans) {
  json j = std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, WhileStructure>) {
          return json{{"node", "While"}, {"states", to_json(v.states, spans)}};
        } else if constexpr (std::is_same_v<T, WhenStructure>) {
          return json{{"node", "When"}, {"trigger", to_json(v.trigger, spans)}};
        } else if constexpr (std::is_same_v<T, WhereStructure>) {
          return json{{"node", "Where"}, {"features", text_json(v.features, spans)}};
        } else if constexpr (std::is_same_v<T, IfStructure>) {
          json pre = std::holds_alternative<ConditionExpr>(v.pre)
                         ? to_json(std::get<ConditionExpr>(v.pre), spans)
                         : itemized_json(std::get<Itemized<ConditionExpr>>(v.pre), spans);
          return json{{"node", "If"}, {"pre", pre}};
        } else {
          json anchor;
          if (const auto* t = std::get_if<TimeLiteral>(&v.anchor)) {
            anchor = json{{"node", "Time"}, {"time", t->time}};
            if (t->zone) anchor["zone"] = *t->zone;
            put_span(anchor, t->span, spans);
          } else {
            anchor = to_json(std::get<Trigger>(v.anchor), spans);
          }
          return json{{"node", "Temporal"},
                      {"direction", v.direction == Direction::before ? "before" : "after"},
                      {"anchor", anchor}};
        }
      },
      n.node);
  put_span(j, n.span, spans);
  return j;
}

json to_json(const ConditionStructures& n, bool spans) {
  json rest = json::array();
  for (const auto& [c, s] : n.rest) rest.push_back({{"connector", to_string(c)}, {"structure", to_json(s, spans)}});
  return json{{"node", "ConditionStructures"}, {"head", to_json(n.head, spans)}, {"rest", rest}};
}

json to_json(const Scope& n, bool spans) {
  json j{{"node", "Scope"}, {"subject", to_json(n.subject, spans)}};
  put_modifier(j, n.subject.modifier);
  put_span(j, n.span, spans);
  return j;
}

json to_json(const Requirement& n, bool spans) {
  json j{{"node", "Requirement"}};
  j["scope"] = n.scope ? to_json(*n.scope, spans) : json();
  j["conditions"] = n.conditions ? to_json(*n.conditions, spans) : json();
  j["then"] = n.then;
  j["actor"] = to_json(n.actor, spans);
  j["modal"] = {{"verb", n.modal.verb == ModalVerb::must ? "must" : "shall"}, {"negated", n.modal.negated}};
  j["response"] = to_json(n.response, spans);
  put_span(j, n.span, spans);
  return j;
}

}  // namespace rimay
