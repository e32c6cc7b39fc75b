#include "rimay/assist.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "text_util.hpp"

namespace rimay {

using nlohmann::json;

const char* to_string(ItemKind k) {
  switch (k) {
    case ItemKind::keyword: return "keyword";
    case ItemKind::verb: return "verb";
    case ItemKind::actor: return "actor";
    case ItemKind::class_: return "class";
    case ItemKind::property: return "property";
    case ItemKind::instance: return "instance";
    case ItemKind::element: return "element";
    case ItemKind::ui_component: return "ui_component";
    case ItemKind::operator_: return "operator";
    case ItemKind::snippet: return "snippet";
  }
  return "keyword";
}

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

std::size_t partial_start(std::string_view text, std::size_t offset) {
  std::size_t i = offset;
  while (i > 0 && is_word_char(static_cast<unsigned char>(text[i - 1]))) --i;
  while (i < offset && text[i] == '-') ++i;
  return i;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Tier order: keywords and punctuation, symbols, verbs (lemmas first), snippets.
int tier(const CompletionItem& item, const Lexicon& lex) {
  switch (item.kind) {
    case ItemKind::keyword:
    case ItemKind::operator_: return 0;
    case ItemKind::verb:
      for (const auto& hit : lex.lookup(item.label)) {
        if (hit.lemma == item.label) return 2;
      }
      return 3;
    case ItemKind::snippet: return 4;
    default: return 1;
  }
}

struct Harvest {
  const ParserContext& ctx;
  std::string_view base;  // text before the replaced range
  bool sentence_start;
  std::vector<std::pair<std::string, std::string>> bindings;
  std::vector<CompletionItem> items;

  void add(std::string label, std::string insert, ItemKind kind, std::optional<std::string> detail = std::nullopt) {
    items.push_back(CompletionItem{std::move(label), std::move(insert), kind, std::move(detail), 0, 0});
  }

  ItemKind kind_of(const std::string& name) const {
    const SymbolTable& t = *ctx.symbols;
    if (t.actors.contains(name)) return ItemKind::actor;
    if (t.instances.contains(name)) return ItemKind::instance;
    if (t.classes.contains(name)) return ItemKind::class_;
    if (t.ui_component_types.contains(name)) return ItemKind::ui_component;
    for (const auto& b : bindings) {
      if (b.first == name) return ItemKind::instance;
    }
    return ItemKind::element;
  }

  const std::set<std::string>* props_of(const std::string& owner) const {
    for (const auto& b : bindings) {
      if (b.first == owner) {
        auto it = ctx.symbols->classes.find(b.second);
        return it == ctx.symbols->classes.end() ? nullptr : &it->second;
      }
    }
    return ctx.symbols->properties_of(owner);
  }

  std::vector<std::string> names_for(const std::string& context) const {
    const SymbolTable& t = *ctx.symbols;
    std::vector<std::string> out;
    auto add_all = [&](const auto& c) {
      for (const auto& n : c) out.push_back(n);
    };
    auto add_keys = [&](const auto& m) {
      for (const auto& [k, v] : m) out.push_back(k);
    };
    if (context == "actor") {
      add_all(t.actors);
    } else if (context == "class") {
      add_keys(t.classes);
    } else if (context == "subject") {
      add_keys(t.classes);
      add_keys(t.instances);
      add_all(t.elements);
      add_all(t.actors);
    } else if (context == "lhs" || context == "owner") {
      add_keys(t.classes);
      add_keys(t.instances);
      add_all(t.elements);
      for (const auto& b : bindings) out.push_back(b.first);
      std::set<std::string> bound;
      for (const auto& b : bindings) bound.insert(b.first);
      if (bound.size() == 1) {
        if (const auto* props = props_of(*bound.begin())) add_all(*props);
      }
    } else {
      add_all(t.actors);
      add_keys(t.classes);
      add_keys(t.instances);
      add_all(t.elements);
      for (const auto& b : bindings) out.push_back(b.first);
    }
    return out;
  }

  void placeholder(const std::string& label, const std::string& what) {
    add(label, label, ItemKind::snippet, "placeholder: " + what);
  }

  void from(const Expectation& e) {
    switch (e.kind) {
      case ExpectKind::keyword: {
        bool is_op = std::any_of(operator_surfaces().begin(), operator_surfaces().end(),
                                 [&](const OperatorSurface& s) { return s.surface == e.value; });
        std::string v = sentence_start ? capitalize(e.value) : e.value;
        add(v, v, is_op ? ItemKind::operator_ : ItemKind::keyword);
        break;
      }
      case ExpectKind::punct: add(e.value, e.value, ItemKind::keyword); break;
      case ExpectKind::symbol: {
        if (e.context == "property") {
          property_items(e.value);
          break;
        }
        std::vector<std::string> names = names_for(e.context);
        if (e.context == "lhs" || e.context == "operand") {
          // "<property> of <owner>"
          for (const auto& [cls, props] : ctx.symbols->classes) {
            for (const auto& p : props) add(p, p, ItemKind::property, "property of " + cls);
          }
        }
        for (const auto& n : names) add(n, n, kind_of(n));
        add("Name", "Name", ItemKind::snippet, "placeholder: name");
        break;
      }
      case ExpectKind::continuation: {
        std::string stem = e.value + " ";
        std::vector<std::string> names = names_for(e.context);
        if (e.context == "lhs" || e.context == "operand") {
          for (const auto& [cls, props] : ctx.symbols->classes) names.insert(names.end(), props.begin(), props.end());
          for (const auto& ui : ctx.symbols->ui_component_types) {
            add(ui, ui, ItemKind::ui_component, "UI component type");
          }
        }
        for (const auto& n : names) {
          if (n.size() > stem.size() && n.compare(0, stem.size(), stem) == 0) {
            std::string rest = n.substr(stem.size());
            add(rest, rest, kind_of(n), n);
          }
        }
        break;
      }
      case ExpectKind::property: property_items(e.value); break;
      case ExpectKind::verb:
        for (const auto& form : ctx.lexicon->surface_forms()) {
          add(form, form, ItemKind::verb, ctx.lexicon->lookup(form).front().code_id);
        }
        break;
      case ExpectKind::text: placeholder("\"text\"", "text"); break;
      case ExpectKind::text_more: placeholder("text", "text"); break;
      case ExpectKind::number: placeholder("1", "number"); break;
      case ExpectKind::value: placeholder("Value", "value"); break;
      case ExpectKind::time: placeholder("12h00", "time"); break;
      case ExpectKind::zone:
        for (const char* z : {"CET", "CEST", "UTC", "GMT"}) add(z, z, ItemKind::keyword, "time zone");
        break;
      case ExpectKind::unit:
        for (const char* u : {"Euros", "Dollars", "EUR", "USD", "GBP", "CHF"}) add(u, u, ItemKind::keyword, "unit");
        break;
      case ExpectKind::frequency_unit:
        for (const char* u : {"milliseconds", "seconds", "minutes", "hours", "days", "weeks", "months", "millisecond",
                              "second", "minute", "hour", "day", "week", "month"}) {
          add(u, u, ItemKind::keyword, "frequency unit");
        }
        break;
      case ExpectKind::bullet: {
        bool at_line_start = !base.empty() && base.back() == '\n';
        add("- ", at_line_start ? "- " : "\n- ", ItemKind::snippet, "list item");
        break;
      }
      case ExpectKind::itemized:
        if (e.value == "condition") {
          add("the following conditions hold:", "the following conditions hold:\n- ", ItemKind::snippet,
              "itemized conditions");
        } else {
          add(":", ":\n- ", ItemKind::snippet, "itemized responses");
        }
        break;
      case ExpectKind::end: break;
    }
  }

  void property_items(const std::string& owner) {
    if (const auto* props = props_of(owner)) {
      for (const auto& p : *props) add(p, p, ItemKind::property, "property of " + owner);
    }
  }
};

}  // namespace

std::vector<CompletionItem> complete(std::string_view text, std::size_t offset, const ParserContext& ctx) {
  if (offset > text.size()) throw Error(ErrorCode::usage, "offset beyond end of text");
  std::size_t from = partial_start(text, offset);
  std::string partial(text.substr(from, offset - from));
  std::string_view base = text.substr(0, from);

  if (lex(base).error_span) return {};
  ParseResult parsed = parse_requirement(base, ctx);
  Harvest h{ctx, base, text::trim(base).empty(), parsed.bindings, {}};
  for (const auto& e : parsed.expected_at_end) h.from(e);

  std::vector<CompletionItem> items;
  for (auto& item : h.items) {
    if (!text::starts_with_ci(item.insert_text, partial) && !text::starts_with_ci(item.label, partial)) continue;
    if (!partial.empty() && item.insert_text == partial) continue;
    item.replace_from = from;
    bool glue = !base.empty() && !text::is_space(base.back()) && base.back() != '.' && base.back() != '(';
    bool punct = item.insert_text.size() == 1 && !is_word_char(static_cast<unsigned char>(item.insert_text[0]));
    bool starts_newline = item.insert_text[0] == '\n';
    if (glue && partial.empty() && !punct && !starts_newline && item.insert_text[0] != ':') {
      item.insert_text = " " + item.insert_text;
    }
    items.push_back(std::move(item));
  }

  // Punctuation that may directly follow the word under the cursor.
  if (!partial.empty()) {
    ParseResult whole = parse_requirement(text.substr(0, offset), ctx);
    for (const auto& e : whole.expected_at_end) {
      if (e.kind != ExpectKind::punct && e.kind != ExpectKind::property) continue;
      if (e.kind == ExpectKind::property) continue;
      items.push_back(CompletionItem{e.value, e.value, ItemKind::keyword, std::nullopt, 0, offset});
    }
  }

  const Lexicon& lex_ref = *ctx.lexicon;
  std::stable_sort(items.begin(), items.end(), [&](const CompletionItem& a, const CompletionItem& b) {
    int ta = tier(a, lex_ref), tb = tier(b, lex_ref);
    if (ta != tb) return ta < tb;
    std::string la = text::lower(a.label), lb = text::lower(b.label);
    if (la != lb) return la < lb;
    if (a.label != b.label) return a.label < b.label;
    return a.insert_text < b.insert_text;
  });
  std::vector<CompletionItem> unique;
  for (auto& item : items) {
    bool dup = std::any_of(unique.begin(), unique.end(), [&](const CompletionItem& u) {
      return u.label == item.label && u.insert_text == item.insert_text && u.replace_from == item.replace_from;
    });
    if (dup) continue;
    item.sort_rank = static_cast<int>(unique.size());
    unique.push_back(std::move(item));
  }
  return unique;
}

namespace {

std::string describe_symbol(const std::string& kind, const std::string& name, const ParseResult& parsed,
                            const SymbolTable& t) {
  if (kind == "instance") {
    for (const auto& b : parsed.bindings) {
      if (b.first == name) return "instance of " + b.second;
    }
    auto it = t.instances.find(name);
    if (it != t.instances.end()) return "instance of " + it->second;
    return "instance";
  }
  if (kind == "class") {
    auto it = t.classes.find(name);
    if (it == t.classes.end() || it->second.empty()) return "class";
    std::string props;
    for (const auto& p : it->second) props += (props.empty() ? "" : ", ") + p;
    return "class with properties: " + props;
  }
  if (kind == "property") {
    std::size_t dot = name.find('.');
    return "property of " + name.substr(0, dot);
  }
  if (kind == "ui_component") return "UI component type";
  return kind;
}

std::string describe_verb(const VerbCode& code) {
  std::string members;
  for (const auto& m : code.members) members += (members.empty() ? "" : ", ") + m.lemma;
  return code.id + " — members: " + members;
}

}  // namespace

std::optional<std::string> hover(std::string_view text, std::size_t offset, const ParserContext& ctx) {
  if (offset > text.size()) return std::nullopt;
  LexResult lr = lex(text);
  const Token* under = nullptr;
  for (const Token& t : lr.tokens) {
    if (t.kind != TokenKind::eof && t.span.start <= offset && offset < t.span.end) under = &t;
  }
  if (under == nullptr) return std::nullopt;

  ParseResult parsed = parse_requirement(text, ctx);
  for (const auto& a : parsed.annotations) {
    if (a.role == Annotation::Role::verb && a.span.start == under->span.start) {
      if (const VerbCode* code = ctx.lexicon->find(a.detail)) return describe_verb(*code);
    }
  }
  for (const auto& a : parsed.annotations) {
    if (a.role == Annotation::Role::symbol && a.span.start <= offset && offset < a.span.end &&
        under->kind == TokenKind::word) {
      return describe_symbol(a.detail, a.name, parsed, *ctx.symbols);
    }
  }
  if (under->kind != TokenKind::word) return std::nullopt;

  // No successful parse: fall back to the token itself.
  auto hits = ctx.lexicon->lookup(under->norm);
  if (!hits.empty()) {
    if (const VerbCode* code = ctx.lexicon->find(hits.front().code_id)) return describe_verb(*code);
  }
  for (std::size_t i = 0; i + 2 < lr.tokens.size(); ++i) {
    if (&lr.tokens[i] == under && lr.tokens[i + 1].is_keyword("of type") && lr.tokens[i + 2].kind == TokenKind::word) {
      return "instance of " + lr.tokens[i + 2].lexeme;
    }
  }
  if (auto r = resolve_operand(*ctx.symbols, {under->lexeme})) {
    return describe_symbol(to_string(r->kind), under->lexeme, parsed, *ctx.symbols);
  }
  return std::nullopt;
}

json to_json(const CompletionItem& item) {
  json j{{"label", item.label},
         {"insert_text", item.insert_text},
         {"kind", to_string(item.kind)},
         {"sort_rank", item.sort_rank},
         {"replace_from", item.replace_from}};
  j["detail"] = item.detail ? json(*item.detail) : json();
  return j;
}

}  // namespace rimay
