#include "rimay/parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "text_util.hpp"

namespace rimay {

using nlohmann::json;

const char* to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

const char* to_string(Cause c) {
  return c == Cause::cause1_unknown_verb ? "cause1_unknown_verb" : "cause2_unsupported_content";
}

const char* to_string(FailureClass c) {
  switch (c) {
    case FailureClass::cause1: return "cause1";
    case FailureClass::cause2: return "cause2";
    case FailureClass::unknown: return "unknown";
  }
  return "unknown";
}

std::string describe(const Expectation& e) {
  switch (e.kind) {
    case ExpectKind::keyword: return "'" + e.value + "'";
    case ExpectKind::punct: return "'" + e.value + "'";
    case ExpectKind::symbol:
      if (e.context == "property") return "property of " + e.value;
      return e.context == "actor" ? "actor" : "name";
    case ExpectKind::continuation: return "name";
    case ExpectKind::property: return "property of " + e.value;
    case ExpectKind::verb: return "verb";
    case ExpectKind::text: return "text";
    case ExpectKind::text_more: return "text";
    case ExpectKind::number: return "number";
    case ExpectKind::value: return "value";
    case ExpectKind::time: return "time";
    case ExpectKind::zone: return "time zone";
    case ExpectKind::unit: return "unit";
    case ExpectKind::frequency_unit: return "frequency unit";
    case ExpectKind::bullet: return "'-' item";
    case ExpectKind::itemized: return "itemized list";
    case ExpectKind::end: return "end of requirement";
  }
  return "input";
}

ParserContext::ParserContext()
    : lexicon(std::shared_ptr<const Lexicon>(&default_lexicon(), [](const Lexicon*) {})),
      symbols(std::make_shared<const SymbolTable>()) {}

ParserContext::ParserContext(Lexicon lex, SymbolTable table, ParserOptions opts)
    : lexicon(std::make_shared<const Lexicon>(std::move(lex))),
      symbols(std::make_shared<const SymbolTable>(std::move(table))),
      options(opts) {}

ParserContext::ParserContext(std::shared_ptr<const Lexicon> lex, std::shared_ptr<const SymbolTable> table,
                             ParserOptions opts)
    : lexicon(std::move(lex)), symbols(std::move(table)), options(opts) {}

std::optional<std::size_t> ParseResult::failure_offset() const {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) return d.span.start;
  }
  return std::nullopt;
}

std::size_t ParseResult::error_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

namespace {

const std::set<std::string>& preposition_stops() {
  static const std::set<std::string> stops{
      "in",     "on",     "at",      "by",    "with",   "within", "without", "into",       "onto",
      "beyond", "via",    "until",   "during", "over",  "under",  "between", "against",    "per",
      "than",   "as",     "upon",    "across", "toward", "towards", "since", "except", "among", "throughout"};
  return stops;
}

const std::set<std::string>& modifier_keywords() {
  static const std::set<std::string> mods{"a", "an", "the", "all", "none", "any", "only one", "of"};
  return mods;
}

const std::map<std::string, FrequencyUnit>& frequency_units() {
  static const std::map<std::string, FrequencyUnit> units{
      {"millisecond", FrequencyUnit::millisecond}, {"milliseconds", FrequencyUnit::millisecond},
      {"second", FrequencyUnit::second},           {"seconds", FrequencyUnit::second},
      {"minute", FrequencyUnit::minute},           {"minutes", FrequencyUnit::minute},
      {"hour", FrequencyUnit::hour},               {"hours", FrequencyUnit::hour},
      {"day", FrequencyUnit::day},                 {"days", FrequencyUnit::day},
      {"week", FrequencyUnit::week},               {"weeks", FrequencyUnit::week},
      {"month", FrequencyUnit::month},             {"months", FrequencyUnit::month},
  };
  return units;
}

bool is_time_word(std::string_view w) {
  std::size_t h = w.find('h');
  if (h == std::string_view::npos || h == 0 || h > 2 || w.size() != h + 3) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != h && !std::isdigit(static_cast<unsigned char>(w[i]))) return false;
  }
  return true;
}

bool is_zone_word(std::string_view w) {
  if (w.size() < 2 || w.size() > 5) return false;
  return std::all_of(w.begin(), w.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
}

struct Checkpoint {
  std::size_t pos;
  std::size_t bindings;
  std::size_t warnings;
  std::size_t annotations;
};

struct NameWords {
  std::string text;
  std::size_t first = 0;  // token indices, inclusive
  std::size_t last = 0;
  std::size_t words = 0;
};

struct NameStops {
  bool at_verb = false;       // trigger actors end where the verb starts
  bool at_lowercase = false;  // ... or at the first lowercase word
};

struct ParseFailure {
  std::size_t pos = 0;
  std::set<Expectation> expected;
  std::optional<std::size_t> unknown_verb;
};

class Parser {
 public:
  Parser(const std::vector<Token>& raw, std::string_view text, const ParserContext& ctx)
      : text_(text), lex_(*ctx.lexicon), table_(*ctx.symbols) {
    bool newline = false;
    for (const Token& t : raw) {
      if (t.kind == TokenKind::newline) {
        newline = true;
        continue;
      }
      toks_.push_back(t);
      nl_.push_back(newline);
      newline = false;
    }
    eof_ = toks_.size() - 1;
    for (const auto& [id, code] : lex_.codes()) {
      for (const Slot& s : code.slot_template.slots) {
        if (!s.keyword.empty()) slot_first_words_.insert(text::split_words(s.keyword).front());
      }
    }
  }

  template <typename Fn>
  auto run(Fn&& fn) -> decltype(fn()) {
    auto node = fn();
    if (node) {
      punct_opt('.');
      if (!at(TokenKind::eof)) {
        expect(ExpectKind::end);
        node.reset();
      }
    }
    return node;
  }

  std::optional<Requirement> requirement() {
    std::size_t start = pos_;
    Requirement req;
    if (auto scope = scope_clause(true)) req.scope = std::move(*scope);

    auto before_structs = mark();
    if (auto structs = structures()) {
      const ConditionStructure& last = structs->rest.empty() ? structs->head : structs->rest.back().second;
      bool block = is_itemized(last);
      if (block && nl_[pos_]) {
        punct_opt(',');
      } else if (!punct(',')) {
        restore(before_structs);
        structs.reset();
      }
      if (structs) req.conditions = std::move(*structs);
    }
    if (req.conditions) req.then = kw("then");

    auto actor = actor_ref();
    if (!actor) return std::nullopt;
    req.actor = std::move(*actor);

    auto modal = modal_verb();
    if (!modal) return std::nullopt;
    req.modal = *modal;

    auto response = system_response();
    if (!response) return std::nullopt;
    req.response = std::move(*response);
    req.span = span_from(start);
    return req;
  }

  std::optional<ConditionExpr> condition_fragment() { return cond_or(); }
  std::optional<Trigger> trigger_fragment() { return trigger(); }
  std::optional<ActionPhrase> action_fragment() { return action_phrase(); }
  std::optional<Scope> scope_fragment() { return scope_clause(false); }
  std::optional<SystemResponse> response_fragment() { return system_response(); }

  // Tail used by recovery: conditions/actor/modal/response without scope.
  std::optional<Requirement> tail() { return requirement(); }
  std::optional<ResponseExpr> response_tail() { return response_or(); }
  std::optional<ConditionExpr> condition_tail() {
    auto c = cond_or();
    if (!c || !punct(',')) return std::nullopt;
    kw("then");
    if (!actor_ref() || !modal_verb() || !system_response()) return std::nullopt;
    return c;
  }

  ParseFailure failure() const { return ParseFailure{furthest_, furthest_expected_, unknown_verb_before(furthest_)}; }

  void reset_tracking(std::size_t pos) {
    pos_ = pos;
    furthest_ = pos;
    furthest_expected_.clear();
    unknown_verbs_.clear();
    bindings_.clear();
    warnings_.clear();
    annotations_.clear();
    line_mode_ = false;
  }

  const std::vector<Token>& tokens() const { return toks_; }
  std::size_t eof_index() const { return eof_; }
  const std::set<Expectation>& at_end() const { return at_end_; }
  const std::vector<std::pair<std::string, std::string>>& end_bindings() const { return at_end_bindings_; }
  std::vector<Diagnostic> take_warnings() { return std::move(warnings_); }
  std::vector<Annotation> take_annotations() { return std::move(annotations_); }
  const std::vector<std::pair<std::string, std::string>>& bindings() const { return bindings_; }

 private:
  // ---- token access -------------------------------------------------------

  const Token& tok() const { return toks_[pos_]; }
  const Token& tok_at(std::size_t i) const { return toks_[std::min(i, eof_)]; }

  // In itemized mode a token on a new line ends the current item.
  bool visible() const { return pos_ == eof_ || !(line_mode_ && nl_[pos_]); }
  bool at(TokenKind k) const { return visible() && tok().kind == k; }
  bool at_word() const { return at(TokenKind::word); }
  bool at_kw(std::string_view s) const { return visible() && tok().is_keyword(s); }
  bool at_punct(char c) const { return visible() && tok().is_punct(c); }
  void advance() {
    if (pos_ < eof_) ++pos_;
  }

  Checkpoint mark() const { return {pos_, bindings_.size(), warnings_.size(), annotations_.size()}; }
  void restore(const Checkpoint& c) {
    pos_ = c.pos;
    bindings_.resize(c.bindings);
    warnings_.resize(c.warnings);
    annotations_.resize(c.annotations);
  }

  Span span_from(std::size_t first_tok) const {
    std::size_t last = pos_ > first_tok ? pos_ - 1 : first_tok;
    std::size_t start = toks_[first_tok].span.start;
    std::size_t end = pos_ > first_tok ? toks_[last].span.end : start;
    return make_span(text_, start, end);
  }

  Span tokens_span(std::size_t first, std::size_t last) const {
    return make_span(text_, toks_[first].span.start, toks_[last].span.end);
  }

  void expect(ExpectKind k, std::string value = {}, std::string context = {}) {
    Expectation e{k, std::move(value), std::move(context)};
    if (pos_ > furthest_) {
      furthest_ = pos_;
      furthest_expected_.clear();
    }
    if (pos_ == furthest_) furthest_expected_.insert(e);
    if (pos_ == eof_ && recording_end_) {
      at_end_.insert(e);
      for (const auto& b : bindings_) {
        if (std::find(at_end_bindings_.begin(), at_end_bindings_.end(), b) == at_end_bindings_.end()) {
          at_end_bindings_.push_back(b);
        }
      }
    }
  }

  bool kw(std::string_view s) {
    if (at_kw(s)) {
      advance();
      return true;
    }
    expect(ExpectKind::keyword, std::string(s));
    return false;
  }

  bool punct(char c) {
    if (at_punct(c)) {
      advance();
      return true;
    }
    expect(ExpectKind::punct, std::string(1, c));
    return false;
  }

  void punct_opt(char c) { punct(c); }

  // ---- names and symbols ----------------------------------------------------

  bool is_declared_name(const std::string& name) const {
    if (table_.actors.contains(name) || table_.classes.contains(name) || table_.instances.contains(name) ||
        table_.elements.contains(name) || table_.ui_component_types.contains(name)) {
      return true;
    }
    return std::any_of(bindings_.begin(), bindings_.end(), [&](const auto& b) { return b.first == name; });
  }

  bool actor_prefix(const std::string& words) const {
    for (const auto& a : table_.actors) {
      if (a.size() > words.size() && a.compare(0, words.size(), words) == 0 && a[words.size()] == ' ') return true;
    }
    return false;
  }

  bool name_word_ok(std::size_t i, bool first) const {
    const Token& t = tok_at(i);
    if (t.kind != TokenKind::word) return false;
    if (!first && nl_[i]) return false;
    if (line_mode_ && nl_[i]) return false;
    if (preposition_stops().contains(t.norm) || slot_first_words_.contains(t.norm)) return false;
    return true;
  }

  std::optional<NameWords> name(const std::string& context, NameStops stops = {}, const std::string& owner = {}) {
    if (!name_word_ok(pos_, true)) {
      expect(ExpectKind::symbol, owner, context);
      return std::nullopt;
    }
    NameWords n;
    n.first = pos_;
    n.text = tok().lexeme;
    n.words = 1;
    advance();
    while (name_word_ok(pos_, false)) {
      const Token& t = tok();
      if (stops.at_verb && lex_.is_verb(t.norm) && !is_declared_name(n.text + " " + t.lexeme) &&
          !actor_prefix(n.text + " " + t.lexeme)) {
        break;
      }
      if (stops.at_lowercase && std::islower(static_cast<unsigned char>(t.lexeme[0])) &&
          !actor_prefix(n.text + " " + t.lexeme) && !table_.actors.contains(n.text + " " + t.lexeme)) {
        break;
      }
      n.text += " " + t.lexeme;
      ++n.words;
      advance();
    }
    n.last = pos_ - 1;
    expect(ExpectKind::continuation, n.text, context);
    return n;
  }

  std::optional<Modifier> modifier() {
    Modifier m;
    for (auto [surface, q] : {std::pair{"all", Quantifier::all}, std::pair{"none", Quantifier::none},
                              std::pair{"only one", Quantifier::only_one}, std::pair{"any", Quantifier::any}}) {
      if (kw(surface)) {
        m.quantifier = q;
        break;
      }
    }
    for (auto [surface, a] : {std::pair{"a", Article::a}, std::pair{"an", Article::an}, std::pair{"the", Article::the}}) {
      if (kw(surface)) {
        m.article = a;
        break;
      }
    }
    return m;
  }

  const std::string* bound_class(const std::string& instance) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
      if (it->first == instance) return &it->second;
    }
    return nullptr;
  }

  // Single instance bound in this requirement, if exactly one.
  const std::pair<std::string, std::string>* sole_binding() const {
    if (bindings_.empty()) return nullptr;
    const auto& first = bindings_.front();
    for (const auto& b : bindings_) {
      if (b.first != first.first) return nullptr;
    }
    return &bindings_.back();
  }

  bool class_has(const std::string& cls, const std::string& prop) const {
    auto it = table_.classes.find(cls);
    return it != table_.classes.end() && it->second.contains(prop);
  }

  void warn_unresolved(const SymbolRef& ref) {
    std::string shown;
    for (std::size_t i = 0; i < ref.path.size(); ++i) shown += (i ? "." : "") + ref.path[i];
    Diagnostic d;
    d.severity = Severity::warning;
    d.span = ref.span;
    d.message = "unknown " + std::string(to_string(ref.kind)) + " '" + shown + "'";
    warnings_.push_back(std::move(d));
  }

  void resolve(SymbolRef& ref, const std::string& context) {
    ref.resolved = false;
    if (ref.declared_type) {
      ref.kind = SymbolKind::instance;
      ref.resolved = table_.classes.contains(*ref.declared_type);
      if (!ref.resolved) {
        Diagnostic d;
        d.severity = Severity::warning;
        d.span = ref.span;
        d.message = "unknown class '" + *ref.declared_type + "'";
        warnings_.push_back(std::move(d));
      }
      return;
    }
    if (ref.path.size() == 1) {
      const std::string& n = ref.path[0];
      if (bound_class(n) != nullptr) {
        ref.kind = SymbolKind::instance;
        ref.resolved = true;
      } else if (auto r = resolve_operand(table_, ref.path)) {
        ref.kind = r->kind;
        ref.resolved = true;
      } else if (const auto* b = sole_binding(); b != nullptr && class_has(b->second, n)) {
        ref.kind = SymbolKind::property;
        ref.path = {b->first, n};
        ref.notation = Notation::implicit_owner;
        ref.resolved = true;
      } else {
        ref.kind = context == "actor" ? SymbolKind::actor : SymbolKind::element;
      }
    } else {
      const std::string* cls = bound_class(ref.path[0]);
      if (cls != nullptr && ref.path.size() == 2 && class_has(*cls, ref.path[1])) {
        ref.kind = SymbolKind::property;
        ref.resolved = true;
      } else if (auto r = resolve_operand(table_, ref.path)) {
        ref.kind = r->kind;
        ref.resolved = true;
      } else {
        ref.kind = SymbolKind::element;
      }
    }
    if (ref.resolved) {
      std::string shown;
      for (std::size_t i = 0; i < ref.path.size(); ++i) shown += (i ? "." : "") + ref.path[i];
      annotations_.push_back({Annotation::Role::symbol, ref.span, to_string(ref.kind), shown});
    } else {
      warn_unresolved(ref);
    }
  }

  // Name with optional dot, "of type" or "of" owner suffix. Not resolved yet.
  std::optional<SymbolRef> symbol_path(const std::string& context, NameStops stops = {}) {
    std::size_t start = pos_;
    auto first = name(context, stops);
    if (!first) return std::nullopt;
    SymbolRef ref;
    ref.path = {first->text};
    std::size_t name_end = toks_[first->last].span.end;

    if (at_punct('.') && tok().span.start == name_end) {
      std::size_t dot = pos_;
      const Token& next = tok_at(dot + 1);
      if (next.kind == TokenKind::word && next.span.start == tok().span.end && !nl_[dot + 1]) {
        advance();
        auto second = name("property", {}, first->text);
        if (second) {
          ref.path.push_back(second->text);
          ref.notation = Notation::dotted;
        } else {
          pos_ = dot;
        }
      } else if (dot + 1 == eof_ && next.span.start == tok().span.end) {
        pos_ = dot + 1;
        expect(ExpectKind::property, first->text);
        pos_ = dot;
      }
    } else if (pos_ == eof_ && tok().span.start == name_end) {
      expect(ExpectKind::punct, ".");
    }

    if (ref.notation == Notation::plain && stops.at_verb == false) {
      if (kw("of type")) {
        auto cls = name("class");
        if (!cls) return std::nullopt;
        ref.declared_type = cls->text;
        bindings_.emplace_back(first->text, cls->text);
      } else if (at_kw("of")) {
        auto cp = mark();
        advance();
        auto owner = name("owner");
        if (owner) {
          ref.path = {owner->text, first->text};
          ref.notation = Notation::of_owner;
        } else {
          restore(cp);
        }
      } else {
        expect(ExpectKind::keyword, "of");
      }
    }
    ref.span = span_from(start);
    return ref;
  }

  std::optional<SymbolRef> actor_ref() {
    std::size_t start = pos_;
    auto m = modifier();
    auto ref = symbol_path("actor");
    if (!ref) return std::nullopt;
    ref->modifier = *m;
    ref->span = span_from(start);
    resolve(*ref, "actor");
    return ref;
  }

  std::optional<Scope> scope_clause(bool need_comma) {
    auto cp = mark();
    std::size_t start = pos_;
    if (!kw("for")) return std::nullopt;
    auto m = modifier();
    auto subject = symbol_path("subject");
    if (!subject) {
      restore(cp);
      return std::nullopt;
    }
    subject->modifier = *m;
    resolve(*subject, "subject");
    Scope s{std::move(*subject), span_from(start)};
    if (need_comma) {
      if (!punct(',')) {
        restore(cp);
        return std::nullopt;
      }
    } else {
      punct_opt(',');
    }
    return s;
  }

  std::optional<Modal> modal_verb() {
    Modal m;
    if (kw("must")) {
      m.verb = ModalVerb::must;
    } else if (kw("shall")) {
      m.verb = ModalVerb::shall;
    } else {
      return std::nullopt;
    }
    m.negated = kw("not");
    return m;
  }

  // ---- literals ---------------------------------------------------------------

  std::optional<TextLiteral> free_text() {
    if (at(TokenKind::quoted_text)) {
      TextLiteral t{tok().lexeme, true, tok().span};
      advance();
      return t;
    }
    expect(ExpectKind::text);
    std::size_t start = pos_;
    while (visible() && pos_ != eof_) {
      const Token& t = tok();
      if (pos_ > start && nl_[pos_]) break;
      if (t.kind == TokenKind::bullet || t.kind == TokenKind::quoted_text) break;
      if (t.kind == TokenKind::punctuation) {
        char c = t.lexeme[0];
        if (c == ',' || c == ':' || c == '(' || c == ')') break;
        if (c == '.') {
          const Token& next = tok_at(pos_ + 1);
          bool adjacent = pos_ + 1 != eof_ && next.span.start == t.span.end && !nl_[pos_ + 1] &&
                          next.kind != TokenKind::punctuation && next.kind != TokenKind::quoted_text;
          if (pos_ + 1 == eof_ && next.span.start == t.span.end && pos_ > start) {
            // Final period: may still continue as "1.b", otherwise it ends the sentence.
            ++pos_;
            expect(ExpectKind::text_more);
            --pos_;
            break;
          }
          if (!adjacent) break;
        }
      }
      if (t.kind == TokenKind::keyword && !modifier_keywords().contains(t.norm)) break;
      advance();
      expect(ExpectKind::text_more);
      if (pos_ == eof_ && tok().span.start == toks_[pos_ - 1].span.end) expect(ExpectKind::punct, ".");
    }
    if (pos_ == start) return std::nullopt;
    Span s = tokens_span(start, pos_ - 1);
    return TextLiteral{std::string(text_.substr(s.start, s.end - s.start)), false, s};
  }

  std::optional<TimeLiteral> time_literal() {
    if (!(at_word() && is_time_word(tok().norm))) {
      expect(ExpectKind::time);
      return std::nullopt;
    }
    std::size_t start = pos_;
    TimeLiteral t;
    t.time = tok().lexeme;
    advance();
    if (at_word() && !nl_[pos_] && is_zone_word(tok().lexeme)) {
      t.zone = tok().lexeme;
      advance();
    } else {
      expect(ExpectKind::zone);
    }
    t.span = span_from(start);
    return t;
  }

  std::optional<NumberLiteral> number_literal() {
    if (!at(TokenKind::number)) {
      expect(ExpectKind::number);
      return std::nullopt;
    }
    std::size_t start = pos_;
    NumberLiteral n;
    n.raw = tok().lexeme;
    advance();
    if (at_word() && !nl_[pos_] && text::is_upper_initial(tok().lexeme)) {
      n.unit = tok().lexeme;
      advance();
    } else {
      expect(ExpectKind::unit);
    }
    n.span = span_from(start);
    return n;
  }

  bool allows(const std::set<OperandKind>& kinds, OperandKind k) const { return kinds.contains(k); }

  std::optional<Operand> operand(const std::set<OperandKind>& kinds, bool rhs_mode) {
    auto cp = mark();
    std::size_t start = pos_;
    auto m = modifier();
    if (allows(kinds, OperandKind::text)) {
      if (at(TokenKind::quoted_text)) {
        TextOperand t{*m, TextLiteral{tok().lexeme, true, tok().span}};
        advance();
        return t;
      }
      expect(ExpectKind::text);
    }
    if (allows(kinds, OperandKind::number) && m->empty()) {
      if (auto n = number_literal()) return *n;
    }
    bool want_value = allows(kinds, OperandKind::value) && (rhs_mode || !allows(kinds, OperandKind::symbol));
    if (want_value && m->empty()) expect(ExpectKind::value);
    if (allows(kinds, OperandKind::symbol) || want_value) {
      std::size_t warn_mark = warnings_.size();
      auto ref = symbol_path("operand");
      if (ref) {
        ref->modifier = *m;
        ref->span = span_from(start);
        bool bare = m->empty() && ref->path.size() == 1 && ref->notation == Notation::plain &&
                    !ref->declared_type && ref->path[0].find(' ') == std::string::npos;
        if (allows(kinds, OperandKind::symbol)) resolve(*ref, "operand");
        if (want_value && bare && (!allows(kinds, OperandKind::symbol) || !ref->resolved)) {
          warnings_.resize(warn_mark);
          return ValueLiteral{ref->path[0], ref->span};
        }
        if (allows(kinds, OperandKind::symbol)) return *ref;
      }
    }
    restore(cp);
    return std::nullopt;
  }

  // ---- conditions ---------------------------------------------------------------

  std::optional<Operator> operator_() {
    if (visible() && tok().kind == TokenKind::keyword) {
      for (const auto& s : operator_surfaces()) {
        if (tok().norm == s.surface) {
          advance();
          return Operator{s.kind, s.negated};
        }
      }
    }
    for (const auto& s : operator_surfaces()) expect(ExpectKind::keyword, s.surface);
    return std::nullopt;
  }

  bool is_ui_split(const SymbolRef& ref, std::size_t words) const {
    if (ref.notation != Notation::plain || ref.declared_type || words < 2) return false;
    const std::string& n = ref.path[0];
    std::string last = n.substr(n.rfind(' ') + 1);
    if (!table_.ui_component_types.contains(last)) return false;
    return !resolve_operand(table_, ref.path) && bound_class(n) == nullptr;
  }

  // A listed name must not start another condition ("... and Instruction.Owner is Valid").
  bool list_member_ok(const NameWords& n, const std::string& owner) const {
    if (at_punct('.') || at_kw("of") || at_kw("of type")) return false;
    if (visible() && tok().kind == TokenKind::keyword) {
      for (const auto& s : operator_surfaces()) {
        if (tok().norm == s.surface) return false;
      }
    }
    const std::set<std::string>* props = nullptr;
    if (const std::string* cls = bound_class(owner)) {
      auto it = table_.classes.find(*cls);
      if (it != table_.classes.end()) props = &it->second;
    } else {
      props = table_.properties_of(owner);
    }
    return props == nullptr || props->contains(n.text);
  }

  std::optional<std::vector<std::string>> property_list(const std::string& owner) {
    auto first = name("property", {}, owner);
    if (!first) return std::nullopt;
    std::vector<std::string> props{first->text};
    while (true) {
      auto cp = mark();
      if (at_punct(',')) {
        advance();
        auto next = name("property", {}, owner);
        if (next && (at_punct(',') || at_kw("and")) && list_member_ok(*next, owner)) {
          props.push_back(next->text);
          continue;
        }
        if (next) {
          expect(ExpectKind::punct, ",");
          expect(ExpectKind::keyword, "and");
        }
        restore(cp);
      } else {
        expect(ExpectKind::punct, ",");
      }
      if (kw("and")) {
        auto last = name("property", {}, owner);
        if (last && list_member_ok(*last, owner)) {
          props.push_back(last->text);
        } else {
          restore(cp);
        }
      }
      break;
    }
    return props;
  }

  std::optional<Condition> condition() {
    auto cp = mark();
    std::size_t start = pos_;
    auto m = modifier();

    if (at(TokenKind::quoted_text)) {
      const Token& next = tok_at(pos_ + 1);
      if (next.kind == TokenKind::word && table_.ui_component_types.contains(next.lexeme) &&
          !(line_mode_ && nl_[pos_ + 1])) {
        UiComponentOp ui;
        ui.modifier = *m;
        ui.label = TextLiteral{tok().lexeme, true, tok().span};
        advance();
        ui.component_type = tok().lexeme;
        advance();
        if (auto c = finish_ui(std::move(ui), start)) return c;
        restore(cp);
        return std::nullopt;
      }
    }

    std::size_t name_start = pos_;
    auto ref = symbol_path("lhs");
    if (!ref) {
      restore(cp);
      return std::nullopt;
    }
    ref->modifier = *m;
    ref->span = span_from(start);
    std::size_t words = 0;
    for (std::size_t i = name_start; i < pos_; ++i) words += toks_[i].kind == TokenKind::word;

    if (is_ui_split(*ref, words) && ref->path[0].find(' ') != std::string::npos) {
      auto after_name = mark();
      const std::string& full = ref->path[0];
      std::size_t type_tok = pos_ - 1;
      UiComponentOp ui;
      ui.modifier = *m;
      ui.component_type = full.substr(full.rfind(' ') + 1);
      Span label_span = tokens_span(name_start, type_tok - 1);
      ui.label = TextLiteral{std::string(text_.substr(label_span.start, label_span.end - label_span.start)), false,
                             label_span};
      if (auto c = finish_ui(std::move(ui), start)) return c;
      restore(after_name);
    }
    resolve(*ref, "lhs");

    // "has the properties ..."
    if (at_kw("has") && tok_at(pos_ + 1).is_keyword("the") && tok_at(pos_ + 2).is(TokenKind::word, "properties")) {
      auto has_cp = mark();
      pos_ += 3;
      HasProperties hp;
      hp.owner = *ref;
      if (punct(':')) {
        auto props = property_list(ref->path.back());
        if (props) {
          hp.properties = std::move(*props);
          return Condition{std::move(hp), span_from(start)};
        }
      } else if (kw("described in")) {
        if (auto doc = free_text()) {
          hp.document = std::move(*doc);
          return Condition{std::move(hp), span_from(start)};
        }
      }
      restore(has_cp);
    } else if (at_kw("has") && tok_at(pos_ + 1).is_keyword("the") && pos_ + 2 == eof_) {
      pos_ += 2;
      expect(ExpectKind::keyword, "properties");
      pos_ -= 2;
    }

    auto op = operator_();
    if (!op) {
      restore(cp);
      return std::nullopt;
    }
    if (op->kind == OpKind::conforms_to) {
      auto standard = free_text();
      if (!standard) {
        restore(cp);
        return std::nullopt;
      }
      return Condition{Convention{*ref, *op, std::move(*standard)}, span_from(start)};
    }
    if (!op->takes_operand()) return Condition{ClassOrPropOpElement{*ref, *op, std::nullopt}, span_from(start)};

    static const std::set<OperandKind> all{OperandKind::symbol, OperandKind::text, OperandKind::number,
                                           OperandKind::value};
    auto rhs = operand(all, true);
    if (!rhs) {
      restore(cp);
      return std::nullopt;
    }
    if (auto* v = std::get_if<ValueLiteral>(&*rhs)) {
      return Condition{InstanceOrPropOpValue{*ref, *op, std::move(*v)}, span_from(start)};
    }
    return Condition{ClassOrPropOpElement{*ref, *op, std::move(*rhs)}, span_from(start)};
  }

  std::optional<Condition> finish_ui(UiComponentOp ui, std::size_t start) {
    auto op = operator_();
    if (!op || op->kind == OpKind::conforms_to) return std::nullopt;
    ui.op = *op;
    if (op->takes_operand()) {
      static const std::set<OperandKind> all{OperandKind::symbol, OperandKind::text, OperandKind::number,
                                             OperandKind::value};
      auto rhs = operand(all, true);
      if (!rhs) return std::nullopt;
      ui.rhs = std::move(*rhs);
    }
    return Condition{std::move(ui), span_from(start)};
  }

  template <typename Leaf, typename AtomFn>
  std::optional<LogicExpr<Leaf>> logic_or(AtomFn atom, bool allow_not, const std::function<bool()>& next_ok) {
    std::size_t start = pos_;
    auto first = logic_and<Leaf>(atom, allow_not, next_ok);
    if (!first) return std::nullopt;
    std::vector<LogicExpr<Leaf>> items{std::move(*first)};
    while (true) {
      auto cp = mark();
      if (!kw("or")) break;
      if (!next_ok()) {
        restore(cp);
        break;
      }
      auto next = logic_and<Leaf>(atom, allow_not, next_ok);
      if (!next) {
        restore(cp);
        break;
      }
      items.push_back(std::move(*next));
    }
    if (items.size() == 1) return std::move(items[0]);
    return LogicExpr<Leaf>::make(LogicOp::or_, std::move(items), span_from(start));
  }

  template <typename Leaf, typename AtomFn>
  std::optional<LogicExpr<Leaf>> logic_and(AtomFn atom, bool allow_not, const std::function<bool()>& next_ok) {
    std::size_t start = pos_;
    auto first = logic_unary<Leaf>(atom, allow_not, next_ok);
    if (!first) return std::nullopt;
    std::vector<LogicExpr<Leaf>> items{std::move(*first)};
    while (true) {
      auto cp = mark();
      if (!kw("and")) break;
      if (!next_ok()) {
        restore(cp);
        break;
      }
      auto next = logic_unary<Leaf>(atom, allow_not, next_ok);
      if (!next) {
        restore(cp);
        break;
      }
      items.push_back(std::move(*next));
    }
    if (items.size() == 1) return std::move(items[0]);
    return LogicExpr<Leaf>::make(LogicOp::and_, std::move(items), span_from(start));
  }

  template <typename Leaf, typename AtomFn>
  std::optional<LogicExpr<Leaf>> logic_unary(AtomFn atom, bool allow_not, const std::function<bool()>& next_ok) {
    std::size_t start = pos_;
    auto cp = mark();
    if (allow_not) {
      if (kw("not")) {
        auto inner = logic_unary<Leaf>(atom, allow_not, next_ok);
        if (inner) return LogicExpr<Leaf>::make(LogicOp::not_, {std::move(*inner)}, span_from(start));
        restore(cp);
        return std::nullopt;
      }
    }
    if (punct('(')) {
      bool saved = line_mode_;
      auto inner = logic_or<Leaf>(atom, allow_not, next_ok);
      line_mode_ = saved;
      if (inner && punct(')')) return LogicExpr<Leaf>::make(LogicOp::paren, {std::move(*inner)}, span_from(start));
      restore(cp);
      return std::nullopt;
    }
    auto leaf = atom();
    if (!leaf) return std::nullopt;
    return LogicExpr<Leaf>::make_leaf(std::move(*leaf), span_from(start));
  }

  std::optional<ConditionExpr> cond_or() {
    return logic_or<Condition>([this] { return condition(); }, true, [] { return true; });
  }

  // ---- actions ----------------------------------------------------------------

  bool plausible_verb(const Token& t) const {
    if (t.kind != TokenKind::word) return false;
    if (!std::islower(static_cast<unsigned char>(t.lexeme[0]))) return false;
    if (preposition_stops().contains(t.norm) || slot_first_words_.contains(t.norm)) return false;
    return !is_declared_name(t.lexeme);
  }

  bool next_is_verb() const {
    return visible() && tok().kind == TokenKind::word && lex_.is_verb(tok().norm);
  }

  bool match_slot_keyword(const std::string& keyword) {
    if (is_keyword_surface(keyword)) return kw(keyword);
    auto words = text::split_words(keyword);
    std::size_t i = pos_;
    for (const auto& w : words) {
      if (i > eof_ || !tok_at(i).is(TokenKind::word, w) || (line_mode_ && nl_[i])) {
        expect(ExpectKind::keyword, keyword);
        return false;
      }
      ++i;
    }
    pos_ = i;
    return true;
  }

  std::optional<SlotFill> slot_operands(const Slot& slot) {
    SlotFill fill;
    fill.role = slot.role;
    fill.keyword = slot.keyword;
    auto first = operand(slot.operands, false);
    if (!first) return std::nullopt;
    fill.operands.push_back(std::move(*first));
    if (!slot.repeatable) return fill;
    while (true) {
      auto cp = mark();
      Connector c;
      if (kw("and")) {
        c = Connector::and_;
      } else if (kw("or")) {
        c = Connector::or_;
      } else {
        break;
      }
      if (next_is_verb()) {
        restore(cp);
        break;
      }
      if (visible() && plausible_verb(tok())) unknown_verbs_.insert(pos_);
      auto next = operand(slot.operands, false);
      if (!next) {
        restore(cp);
        break;
      }
      fill.connectors.push_back(c);
      fill.operands.push_back(std::move(*next));
    }
    return fill;
  }

  std::optional<std::vector<SlotFill>> fill_slots(const VerbCode& code) {
    std::vector<SlotFill> fills;
    for (const Slot& slot : code.slot_template.slots) {
      auto cp = mark();
      if (!slot.keyword.empty() && !match_slot_keyword(slot.keyword)) {
        if (!slot.optional) return std::nullopt;
        continue;
      }
      auto fill = slot_operands(slot);
      if (!fill) {
        restore(cp);
        if (!slot.optional) return std::nullopt;
        continue;
      }
      fills.push_back(std::move(*fill));
    }
    return fills;
  }

  std::optional<ActionPhrase> action_phrase() {
    if (!at_word()) {
      expect(ExpectKind::verb);
      return std::nullopt;
    }
    auto hits = lex_.lookup(tok().norm);
    if (hits.empty()) {
      expect(ExpectKind::verb);
      if (plausible_verb(tok())) unknown_verbs_.insert(pos_);
      return std::nullopt;
    }
    std::size_t start = pos_;
    auto cp = mark();
    std::string verb = tok().norm;
    for (const VerbHit& hit : hits) {
      restore(cp);
      advance();
      const VerbCode* code = lex_.find(hit.code_id);
      if (code == nullptr) continue;
      annotations_.push_back({Annotation::Role::verb, toks_[start].span, hit.code_id, hit.lemma});
      auto fills = fill_slots(*code);
      if (!fills) continue;
      return ActionPhrase{hit.code_id, verb, std::move(*fills), span_from(start)};
    }
    restore(cp);
    return std::nullopt;
  }

  std::optional<Frequency> frequency() {
    auto cp = mark();
    std::size_t start = pos_;
    if (!kw("every")) return std::nullopt;
    if (!at(TokenKind::number)) {
      expect(ExpectKind::number);
      restore(cp);
      return std::nullopt;
    }
    Frequency f;
    f.every = tok().lexeme;
    advance();
    auto it = at_word() ? frequency_units().find(tok().norm) : frequency_units().end();
    if (it == frequency_units().end()) {
      expect(ExpectKind::frequency_unit);
      restore(cp);
      return std::nullopt;
    }
    f.unit = it->second;
    advance();
    f.span = span_from(start);
    return f;
  }

  std::optional<AtomicResponse> atomic_response() {
    std::size_t start = pos_;
    auto phrase = action_phrase();
    if (!phrase) return std::nullopt;
    AtomicResponse r{std::move(*phrase), frequency(), {}};
    r.span = span_from(start);
    return r;
  }

  std::optional<ResponseExpr> response_or() {
    return logic_or<AtomicResponse>([this] { return atomic_response(); }, false, [] { return true; });
  }

  std::optional<ActionExpr> action_or() {
    return logic_or<ActionPhrase>([this] { return action_phrase(); }, false, [] { return true; });
  }

  template <typename Item, typename ItemFn>
  std::optional<Itemized<Item>> itemized(ItemFn item_fn, std::size_t intro_start) {
    Itemized<Item> block;
    block.intro_span = span_from(intro_start);
    while (true) {
      if (!(tok().kind == TokenKind::bullet && (pos_ == 0 || nl_[pos_] || pos_ == eof_))) {
        expect(ExpectKind::bullet);
        break;
      }
      advance();
      bool saved = line_mode_;
      line_mode_ = true;
      auto item = item_fn();
      if (!item) {
        line_mode_ = saved;
        return std::nullopt;
      }
      block.items.push_back(std::move(*item));
      Connector conn = Connector::and_;
      auto cp = mark();
      if (punct(',')) {
        if (kw("or")) {
          conn = Connector::or_;
        } else if (kw("and")) {
          conn = Connector::and_;
        } else {
          restore(cp);
        }
      }
      line_mode_ = saved;
      block.connectors.push_back(conn);
      if (tok().kind != TokenKind::bullet) expect(ExpectKind::bullet);
      if (tok().kind != TokenKind::bullet) break;
    }
    if (block.items.size() < 2) return std::nullopt;
    block.connectors.resize(block.items.size() - 1);
    return block;
  }

  std::optional<SystemResponse> system_response() {
    auto cp = mark();
    std::size_t start = pos_;
    expect(ExpectKind::itemized, "response");
    if (at_punct(':')) {
      advance();
      auto block = itemized<AtomicResponse>([this] { return atomic_response(); }, start);
      if (block) return SystemResponse{std::move(*block)};
      restore(cp);
      return std::nullopt;
    }
    expect(ExpectKind::punct, ":");
    auto expr = response_or();
    if (!expr) return std::nullopt;
    return SystemResponse{std::move(*expr)};
  }

  // ---- condition structures ---------------------------------------------------

  std::optional<Trigger> trigger() {
    auto cp = mark();
    std::size_t start = pos_;
    auto m = modifier();
    auto actor = symbol_path("actor", NameStops{true, true});
    if (!actor) {
      restore(cp);
      return std::nullopt;
    }
    actor->modifier = *m;
    actor->span = span_from(start);
    resolve(*actor, "actor");
    auto actions = action_or();
    if (!actions) {
      restore(cp);
      return std::nullopt;
    }
    return Trigger{std::move(*actor), std::move(*actions), span_from(start)};
  }

  std::optional<PreconditionStructure> precondition() {
    auto cp = mark();
    std::size_t start = pos_;
    expect(ExpectKind::itemized, "condition");
    bool following = false;
    while (visible() && pos_ != eof_ && !(pos_ > start && nl_[pos_]) &&
           (tok().kind == TokenKind::word ||
            (tok().kind == TokenKind::keyword && modifier_keywords().contains(tok().norm)))) {
      following = following || tok().norm == "following";
      advance();
    }
    if (following) {
      if (punct(':')) {
        auto block = itemized<ConditionExpr>([this] { return cond_or(); }, start);
        if (block) return PreconditionStructure{std::move(*block)};
      }
    }
    restore(cp);
    auto expr = cond_or();
    if (!expr) return std::nullopt;
    return PreconditionStructure{std::move(*expr)};
  }

  std::optional<ConditionStructure> structure() {
    auto cp = mark();
    std::size_t start = pos_;
    if (kw("while")) {
      if (auto e = cond_or()) return ConditionStructure{WhileStructure{std::move(*e)}, span_from(start)};
    } else if (kw("when")) {
      if (auto t = trigger()) return ConditionStructure{WhenStructure{std::move(*t)}, span_from(start)};
    } else if (kw("where")) {
      if (auto t = free_text()) return ConditionStructure{WhereStructure{std::move(*t)}, span_from(start)};
    } else if (kw("if")) {
      if (auto p = precondition()) return ConditionStructure{IfStructure{std::move(*p)}, span_from(start)};
    } else {
      Direction dir = Direction::before;
      bool temporal = false;
      if (kw("before")) {
        temporal = true;
      } else if (kw("after")) {
        dir = Direction::after;
        temporal = true;
      }
      if (temporal) {
        if (auto t = time_literal()) {
          return ConditionStructure{TemporalStructure{dir, std::move(*t)}, span_from(start)};
        }
        if (auto t = trigger()) return ConditionStructure{TemporalStructure{dir, std::move(*t)}, span_from(start)};
      }
    }
    restore(cp);
    return std::nullopt;
  }

  static bool is_itemized(const ConditionStructure& s) {
    const auto* i = std::get_if<IfStructure>(&s.node);
    return i != nullptr && std::holds_alternative<Itemized<ConditionExpr>>(i->pre);
  }

  std::optional<ConditionStructures> structures() {
    auto head = structure();
    if (!head) return std::nullopt;
    ConditionStructures out{std::move(*head), {}};
    while (true) {
      auto cp = mark();
      Connector c;
      if (kw("and")) {
        c = Connector::and_;
      } else if (kw("or")) {
        c = Connector::or_;
      } else {
        break;
      }
      auto next = structure();
      if (!next) {
        restore(cp);
        break;
      }
      out.rest.emplace_back(c, std::move(*next));
    }
    return out;
  }

  std::optional<std::size_t> unknown_verb_before(std::size_t limit) const {
    std::optional<std::size_t> found;
    for (std::size_t p : unknown_verbs_) {
      if (p <= limit) found = p;
    }
    return found;
  }

 public:
  bool recording_end_ = true;

 private:
  std::string_view text_;
  const Lexicon& lex_;
  const SymbolTable& table_;
  std::vector<Token> toks_;
  std::vector<bool> nl_;
  std::size_t eof_ = 0;
  std::size_t pos_ = 0;
  bool line_mode_ = false;
  std::set<std::string> slot_first_words_;

  std::vector<std::pair<std::string, std::string>> bindings_;
  std::vector<Diagnostic> warnings_;
  std::vector<Annotation> annotations_;

  std::size_t furthest_ = 0;
  std::set<Expectation> furthest_expected_;
  std::set<std::size_t> unknown_verbs_;
  std::set<Expectation> at_end_;
  std::vector<std::pair<std::string, std::string>> at_end_bindings_;
};

std::string token_description(const Token& t) {
  switch (t.kind) {
    case TokenKind::eof: return "end of input";
    case TokenKind::quoted_text: return "\"" + t.lexeme + "\"";
    case TokenKind::bullet: return "'-'";
    default: return "'" + t.lexeme + "'";
  }
}

Diagnostic failure_diagnostic(const Parser& p, const ParseFailure& f, bool empty_input, std::string_view text) {
  Diagnostic d;
  d.severity = Severity::error;
  std::set<std::string> described;
  for (const auto& e : f.expected) described.insert(describe(e));
  if (f.unknown_verb) {
    const Token& t = p.tokens()[*f.unknown_verb];
    d.span = t.span;
    d.cause = Cause::cause1_unknown_verb;
    d.message = "unknown verb '" + t.lexeme + "'";
    d.expected = {"verb"};
    return d;
  }
  const Token& t = p.tokens()[std::min(f.pos, p.eof_index())];
  d.span = t.span;
  d.cause = Cause::cause2_unsupported_content;
  d.expected.assign(described.begin(), described.end());
  if (empty_input) {
    d.message = "expected scope, condition, or actor";
    d.span = make_span(text, 0, 0);
    return d;
  }
  std::string list;
  std::size_t shown = 0;
  for (const auto& s : d.expected) {
    if (shown == 6) {
      list += ", ...";
      break;
    }
    list += (shown ? ", " : "") + s;
    ++shown;
  }
  d.message = "unexpected " + token_description(t) + (list.empty() ? "" : "; expected " + list);
  return d;
}

bool is_sync(const Token& t) {
  return t.is_punct(',') || t.is_keyword("and") || t.is_keyword("or") || t.kind == TokenKind::bullet ||
         t.kind == TokenKind::eof;
}

// Panic-mode recovery: resume after each synchronisation token and report
// the next failure, until input or error budget runs out.
void recover(Parser& p, std::size_t error_pos, std::vector<Diagnostic>& errors, std::string_view text,
             const ParserOptions& opts) {
  p.recording_end_ = false;
  const auto& toks = p.tokens();
  std::size_t cursor = error_pos;
  while (static_cast<int>(errors.size()) < opts.max_errors) {
    std::size_t s = cursor + 1;
    while (s < p.eof_index() && !is_sync(toks[s])) ++s;
    if (s >= p.eof_index()) break;
    std::size_t resume = toks[s].kind == TokenKind::bullet ? s : s + 1;
    if (resume >= p.eof_index()) break;

    std::optional<ParseFailure> best;
    bool ok = false;
    auto attempt = [&](auto fn) {
      if (ok) return;
      p.reset_tracking(resume);
      if (p.run(fn)) {
        ok = true;
        return;
      }
      ParseFailure f = p.failure();
      if (!best || (f.unknown_verb && !best->unknown_verb) ||
          (f.unknown_verb.has_value() == best->unknown_verb.has_value() && f.pos > best->pos)) {
        best = f;
      }
    };
    attempt([&] { return p.tail(); });
    attempt([&] { return p.response_tail(); });
    attempt([&] { return p.condition_tail(); });
    if (ok || !best) break;
    std::size_t at = best->unknown_verb ? *best->unknown_verb : best->pos;
    if (at <= cursor) {
      cursor = s;
      continue;
    }
    errors.push_back(failure_diagnostic(p, *best, false, text));
    cursor = std::max(at, s);
  }
}

template <typename Node, typename Fn>
std::optional<Node> drive(Parser& p, Fn fn, std::string_view text, const ParserContext& ctx,
                          std::vector<Diagnostic>& diagnostics, const LexResult& lr) {
  auto node = p.run(fn);
  std::vector<Diagnostic> warnings = p.take_warnings();
  if (lr.error_span) {
    Diagnostic d;
    d.severity = Severity::error;
    d.span = *lr.error_span;
    d.message = lr.error_message;
    diagnostics.push_back(std::move(d));
    return std::nullopt;
  }
  if (node) {
    diagnostics = std::move(warnings);
    return node;
  }
  ParseFailure f = p.failure();
  bool empty = text::trim(text).empty();
  std::vector<Diagnostic> errors{failure_diagnostic(p, f, empty, text)};
  if (ctx.options.recovery && ctx.options.max_errors > 1 && !empty) {
    recover(p, f.unknown_verb ? *f.unknown_verb : f.pos, errors, text, ctx.options);
  }
  diagnostics = std::move(errors);
  return std::nullopt;
}

}  // namespace

ParseResult parse_requirement(std::string_view text, const ParserContext& ctx) {
  LexResult lr = lex(text);
  Parser p(lr.tokens, text, ctx);
  ParseResult result;
  auto req = drive<Requirement>(p, [&] { return p.requirement(); }, text, ctx, result.diagnostics, lr);
  result.expected_at_end.assign(p.at_end().begin(), p.at_end().end());
  result.bindings = p.end_bindings();
  if (req) {
    result.bindings = p.bindings();
    result.annotations = p.take_annotations();
    result.requirement = std::move(req);
  }
  result.representable = result.requirement.has_value() && result.error_count() == 0;
  return result;
}

FragmentResult parse_fragment(std::string_view text, Fragment kind, const ParserContext& ctx) {
  LexResult lr = lex(text);
  Parser p(lr.tokens, text, ctx);
  FragmentResult out;
  auto store = [&](auto&& opt) {
    if (opt) out.node = std::move(*opt);
  };
  switch (kind) {
    case Fragment::requirement:
      store(drive<Requirement>(p, [&] { return p.requirement(); }, text, ctx, out.diagnostics, lr));
      break;
    case Fragment::condition:
      store(drive<ConditionExpr>(p, [&] { return p.condition_fragment(); }, text, ctx, out.diagnostics, lr));
      break;
    case Fragment::trigger:
      store(drive<Trigger>(p, [&] { return p.trigger_fragment(); }, text, ctx, out.diagnostics, lr));
      break;
    case Fragment::action_phrase:
      store(drive<ActionPhrase>(p, [&] { return p.action_fragment(); }, text, ctx, out.diagnostics, lr));
      break;
    case Fragment::scope:
      store(drive<Scope>(p, [&] { return p.scope_fragment(); }, text, ctx, out.diagnostics, lr));
      break;
    case Fragment::response:
      store(drive<SystemResponse>(p, [&] { return p.response_fragment(); }, text, ctx, out.diagnostics, lr));
      break;
  }
  bool errors = std::any_of(out.diagnostics.begin(), out.diagnostics.end(),
                            [](const Diagnostic& d) { return d.severity == Severity::error; });
  out.representable = !std::holds_alternative<std::monostate>(out.node) && !errors;
  return out;
}

FailureClass classify_failure(const ParseResult& result, const ParserContext&) {
  if (result.representable) throw Error(ErrorCode::usage, "classify_failure called on a representable result");
  bool cause2 = false;
  for (const auto& d : result.diagnostics) {
    if (d.severity != Severity::error || !d.cause) continue;
    if (*d.cause == Cause::cause1_unknown_verb) return FailureClass::cause1;
    cause2 = true;
  }
  return cause2 ? FailureClass::cause2 : FailureClass::unknown;
}

json to_json(const Diagnostic& d) {
  json j{{"severity", to_string(d.severity)},
         {"start", d.span.start},
         {"end", d.span.end},
         {"line", d.span.line},
         {"column", d.span.column},
         {"message", d.message},
         {"expected", d.expected}};
  if (d.cause) j["cause"] = to_string(*d.cause);
  return j;
}

json to_json(const ParseResult& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  json j{{"representable", r.representable}, {"diagnostics", diags}};
  j["ast"] = r.requirement ? to_json(*r.requirement) : json();
  return j;
}

}  // namespace rimay
