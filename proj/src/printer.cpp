#include <cctype>
#include <sstream>

#include "rimay/ast.hpp"

namespace rimay {

namespace {

std::string modifier_prefix(const Modifier& m) {
  std::string out;
  if (m.quantifier) out += std::string(to_string(*m.quantifier)) + " ";
  if (m.article) out += std::string(to_string(*m.article)) + " ";
  return out;
}

std::string text(const TextLiteral& t) { return t.quoted ? "\"" + t.raw + "\"" : t.raw; }

std::string join(const std::vector<std::string>& parts, const std::vector<Connector>& connectors) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += std::string(" ") + to_string(i - 1 < connectors.size() ? connectors[i - 1] : Connector::and_) + " ";
    out += parts[i];
  }
  return out;
}

template <typename Leaf>
std::string logic(const LogicExpr<Leaf>& e) {
  switch (e.op) {
    case LogicOp::leaf: return pretty_print(*e.leaf);
    case LogicOp::not_: return "not " + logic(e.operands.at(0));
    case LogicOp::paren: return "(" + logic(e.operands.at(0)) + ")";
    case LogicOp::and_:
    case LogicOp::or_: {
      std::string sep = e.op == LogicOp::and_ ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i > 0) out += sep;
        out += logic(e.operands[i]);
      }
      return out;
    }
  }
  return {};
}

template <typename Item>
std::string itemized(const Itemized<Item>& it) {
  std::string out;
  for (std::size_t i = 0; i < it.items.size(); ++i) {
    out += "\n- " + pretty_print(it.items[i]);
    if (i + 1 < it.items.size() && i < it.connectors.size() && it.connectors[i] == Connector::or_) out += ", or";
  }
  return out;
}

std::string precondition(const PreconditionStructure& pre) {
  if (const auto* e = std::get_if<ConditionExpr>(&pre)) return pretty_print(*e);
  return "the following conditions hold:" + itemized(std::get<Itemized<ConditionExpr>>(pre));
}

bool is_itemized(const ConditionStructure& s) {
  const auto* i = std::get_if<IfStructure>(&s.node);
  return i != nullptr && std::holds_alternative<Itemized<ConditionExpr>>(i->pre);
}

std::string frequency_unit(const Frequency& f) {
  std::string unit = to_string(f.unit);
  if (f.every != "1") unit += "s";
  return unit;
}

}  // namespace

std::string pretty_print(const SymbolRef& n) {
  std::string name;
  switch (n.notation) {
    case Notation::plain:
      name = n.path.front();
      break;
    case Notation::dotted:
      for (std::size_t i = 0; i < n.path.size(); ++i) name += (i ? "." : "") + n.path[i];
      break;
    case Notation::of_owner:
      name = n.path.back() + " of " + n.path.front();
      break;
    case Notation::implicit_owner:
      name = n.path.back();
      break;
  }
  if (n.declared_type) name += " of type " + *n.declared_type;
  return modifier_prefix(n.modifier) + name;
}

std::string pretty_print(const Operand& n) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymbolRef>) {
          return pretty_print(v);
        } else if constexpr (std::is_same_v<T, NumberLiteral>) {
          return v.unit ? v.raw + " " + *v.unit : v.raw;
        } else if constexpr (std::is_same_v<T, TextOperand>) {
          return modifier_prefix(v.modifier) + text(v.text);
        } else {
          return v.word;
        }
      },
      n);
}

std::string pretty_print(const Condition& n) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HasProperties>) {
          std::string out = pretty_print(v.owner) + " has the properties";
          if (v.document) return out + " described in " + text(*v.document);
          std::string list;
          for (std::size_t i = 0; i < v.properties.size(); ++i) {
            if (i > 0) list += i + 1 == v.properties.size() ? " and " : ", ";
            list += v.properties[i];
          }
          return out + ": " + list;
        } else if constexpr (std::is_same_v<T, Convention>) {
          return pretty_print(v.subject) + " " + canonical_surface(v.op) + " " + text(v.standard);
        } else if constexpr (std::is_same_v<T, ClassOrPropOpElement>) {
          std::string out = pretty_print(v.lhs) + " " + canonical_surface(v.op);
          return v.rhs ? out + " " + pretty_print(*v.rhs) : out;
        } else if constexpr (std::is_same_v<T, InstanceOrPropOpValue>) {
          return pretty_print(v.lhs) + " " + canonical_surface(v.op) + " " + v.rhs.word;
        } else {
          std::string out = modifier_prefix(v.modifier) + text(v.label) + " " + v.component_type + " " +
                            canonical_surface(v.op);
          return v.rhs ? out + " " + pretty_print(*v.rhs) : out;
        }
      },
      n.node);
}

std::string pretty_print(const ConditionExpr& n) { return logic(n); }
std::string pretty_print(const ActionExpr& n) { return logic(n); }
std::string pretty_print(const ResponseExpr& n) { return logic(n); }

std::string pretty_print(const ActionPhrase& n) {
  std::string out = n.verb;
  for (const auto& slot : n.slots) {
    std::vector<std::string> parts;
    for (const auto& op : slot.operands) parts.push_back(pretty_print(op));
    out += " ";
    if (!slot.keyword.empty()) out += slot.keyword + " ";
    out += join(parts, slot.connectors);
  }
  return out;
}

std::string pretty_print(const Trigger& n) { return pretty_print(n.actor) + " " + pretty_print(n.actions); }

std::string pretty_print(const AtomicResponse& n) {
  std::string out = pretty_print(n.phrase);
  if (n.frequency) out += " every " + n.frequency->every + " " + frequency_unit(*n.frequency);
  return out;
}

std::string pretty_print(const ConditionStructure& n) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, WhileStructure>) {
          return "while " + pretty_print(v.states);
        } else if constexpr (std::is_same_v<T, WhenStructure>) {
          return "when " + pretty_print(v.trigger);
        } else if constexpr (std::is_same_v<T, WhereStructure>) {
          return "where " + text(v.features);
        } else if constexpr (std::is_same_v<T, IfStructure>) {
          return "if " + precondition(v.pre);
        } else {
          std::string out = v.direction == Direction::before ? "before " : "after ";
          if (const auto* t = std::get_if<TimeLiteral>(&v.anchor)) {
            return out + t->time + (t->zone ? " " + *t->zone : "");
          }
          return out + pretty_print(std::get<Trigger>(v.anchor));
        }
      },
      n.node);
}

std::string pretty_print(const ConditionStructures& n) {
  std::string out = pretty_print(n.head);
  const ConditionStructure* prev = &n.head;
  for (const auto& [conn, s] : n.rest) {
    out += is_itemized(*prev) ? "\n" : " ";
    out += std::string(to_string(conn)) + " " + pretty_print(s);
    prev = &s;
  }
  return out;
}

std::string pretty_print(const Scope& n) { return "for " + pretty_print(n.subject); }

std::string pretty_print(const Modal& n) {
  std::string out = n.verb == ModalVerb::must ? "must" : "shall";
  return n.negated ? out + " not" : out;
}

std::string pretty_print(const Requirement& n) {
  std::string out;
  if (n.scope) out += pretty_print(*n.scope) + ", ";
  if (n.conditions) {
    out += pretty_print(*n.conditions);
    const ConditionStructure& last = n.conditions->rest.empty() ? n.conditions->head : n.conditions->rest.back().second;
    out += is_itemized(last) ? "\n" : ", ";
  }
  if (n.then) out += "then ";
  out += pretty_print(n.actor) + " " + pretty_print(n.modal);
  if (const auto* it = std::get_if<Itemized<AtomicResponse>>(&n.response)) {
    out += ":" + itemized(*it);
  } else {
    out += " " + pretty_print(std::get<ResponseExpr>(n.response));
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace rimay
