#include "rimay/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "rimay/error.hpp"
#include "text_util.hpp"

namespace rimay {

using nlohmann::json;

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::format: return "format";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::validation: return "validation";
    case ErrorCode::unresolved_class: return "unresolved_class";
    case ErrorCode::usage: return "usage";
    case ErrorCode::degenerate_input: return "degenerate_input";
    case ErrorCode::incomplete_annotation: return "incomplete_annotation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

const char* to_string(Origin origin) { return origin == Origin::verbnet ? "verbnet" : "proposed"; }

const char* to_string(SlotRole role) {
  switch (role) {
    case SlotRole::theme: return "theme";
    case SlotRole::initial_location: return "initial_location";
    case SlotRole::destination: return "destination";
    case SlotRole::channel: return "channel";
    case SlotRole::compliance: return "compliance";
    case SlotRole::described_in: return "described_in";
    case SlotRole::value: return "value";
    case SlotRole::instrument: return "instrument";
    case SlotRole::beneficiary: return "beneficiary";
  }
  return "theme";
}

const char* to_string(OperandKind kind) {
  switch (kind) {
    case OperandKind::symbol: return "symbol";
    case OperandKind::text: return "text";
    case OperandKind::number: return "number";
    case OperandKind::value: return "value";
  }
  return "symbol";
}

namespace {

template <typename Enum, std::size_t N>
bool parse_enum(std::string_view text, const Enum (&values)[N], Enum& out) {
  for (Enum v : values) {
    if (text == to_string(v)) {
      out = v;
      return true;
    }
  }
  return false;
}

constexpr SlotRole kRoles[] = {SlotRole::theme,      SlotRole::initial_location, SlotRole::destination,
                               SlotRole::channel,    SlotRole::compliance,       SlotRole::described_in,
                               SlotRole::value,      SlotRole::instrument,       SlotRole::beneficiary};
constexpr OperandKind kOperandKinds[] = {OperandKind::symbol, OperandKind::text, OperandKind::number,
                                         OperandKind::value};

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void validate_template(const std::string& id, const SlotTemplate& tmpl) {
  std::set<SlotRole> seen;
  for (std::size_t i = 0; i < tmpl.slots.size(); ++i) {
    const Slot& slot = tmpl.slots[i];
    if (!seen.insert(slot.role).second) {
      throw Error(ErrorCode::validation,
                  "code '" + id + "' declares role '" + to_string(slot.role) + "' more than once");
    }
    if (slot.keyword.empty() && i != 0) {
      throw Error(ErrorCode::validation, "code '" + id + "': a slot without keyword must come first");
    }
    if (slot.operands.empty()) {
      throw Error(ErrorCode::validation,
                  "code '" + id + "': slot '" + to_string(slot.role) + "' accepts no operand kinds");
    }
  }
}

void validate_code(const VerbCode& code) {
  if (code.id.empty()) throw Error(ErrorCode::validation, "verb code with empty id");
  if (code.members.empty()) throw Error(ErrorCode::validation, "code '" + code.id + "' has no members");
  bool suffix = has_hierarchy_suffix(code.id);
  if (suffix != (code.origin == Origin::verbnet)) {
    throw Error(ErrorCode::validation, "code '" + code.id + "': origin '" + to_string(code.origin) +
                                           "' does not match its id (hierarchy suffix " +
                                           (suffix ? "present" : "absent") + ")");
  }
  for (const VerbMember& m : code.members) {
    if (m.lemma.empty()) throw Error(ErrorCode::validation, "code '" + code.id + "' has an empty lemma");
    if (!m.surface_forms.contains(m.lemma)) {
      throw Error(ErrorCode::validation, "code '" + code.id + "': lemma '" + m.lemma + "' missing from its forms");
    }
  }
  validate_template(code.id, code.slot_template);
}

std::size_t line_of_offset(std::string_view source, std::size_t offset) {
  offset = std::min(offset, source.size());
  return 1 + static_cast<std::size_t>(std::count(source.begin(), source.begin() + offset, '\n'));
}

Slot slot_from_json(const std::string& id, const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::format, "code '" + id + "': slot must be an object");
  Slot slot;
  std::string role = j.value("role", "");
  if (!parse_enum(role, kRoles, slot.role)) {
    throw Error(ErrorCode::format, "code '" + id + "': unknown slot role '" + role + "'");
  }
  slot.keyword = text::normalize_spaces(text::lower(j.value("keyword", "")));
  if (j.contains("operands")) {
    for (const json& op : j.at("operands")) {
      OperandKind kind{};
      if (!op.is_string() || !parse_enum(op.get<std::string>(), kOperandKinds, kind)) {
        throw Error(ErrorCode::format, "code '" + id + "': unknown operand kind " + op.dump());
      }
      slot.operands.insert(kind);
    }
  } else {
    slot.operands = {OperandKind::symbol, OperandKind::text};
  }
  slot.optional = j.value("optional", false);
  slot.repeatable = j.value("repeatable", false);
  return slot;
}

json slot_to_json(const Slot& slot) {
  json ops = json::array();
  for (OperandKind k : slot.operands) ops.push_back(to_string(k));
  return json{{"role", to_string(slot.role)},
              {"keyword", slot.keyword},
              {"operands", ops},
              {"optional", slot.optional},
              {"repeatable", slot.repeatable}};
}

}  // namespace

SlotTemplate SlotTemplate::standard() {
  const std::set<OperandKind> any{OperandKind::symbol, OperandKind::text, OperandKind::number, OperandKind::value};
  const std::set<OperandKind> place{OperandKind::symbol, OperandKind::text, OperandKind::value};
  SlotTemplate t;
  t.slots.push_back({SlotRole::theme, "", any, false, true});
  t.slots.push_back({SlotRole::initial_location, "from", place, true, true});
  t.slots.push_back({SlotRole::destination, "to", place, true, true});
  t.slots.push_back({SlotRole::channel, "through", place, true, true});
  t.slots.push_back({SlotRole::compliance, "in compliance with", {OperandKind::text}, true, false});
  return t;
}

const Slot* SlotTemplate::find(SlotRole role) const {
  for (const Slot& s : slots) {
    if (s.role == role) return &s;
  }
  return nullptr;
}

const VerbMember* VerbCode::member(std::string_view lemma) const {
  for (const VerbMember& m : members) {
    if (m.lemma == lemma) return &m;
  }
  return nullptr;
}

std::set<std::string> conjugate(std::string_view lemma_in) {
  std::string lemma = text::lower(lemma_in);
  std::set<std::string> forms{lemma};
  if (lemma.empty()) return forms;
  const bool consonant_y = lemma.size() >= 2 && lemma.back() == 'y' && !is_vowel(lemma[lemma.size() - 2]);
  const std::string stem_y = lemma.substr(0, lemma.size() - 1);

  if (consonant_y) {
    forms.insert(stem_y + "ies");
  } else if (ends_with(lemma, "s") || ends_with(lemma, "x") || ends_with(lemma, "z") || ends_with(lemma, "ch") ||
             ends_with(lemma, "sh") || ends_with(lemma, "o")) {
    forms.insert(lemma + "es");
  } else {
    forms.insert(lemma + "s");
  }

  if (consonant_y) {
    forms.insert(stem_y + "ied");
  } else if (lemma.back() == 'e') {
    forms.insert(lemma + "d");
  } else {
    forms.insert(lemma + "ed");
  }
  return forms;
}

bool has_hierarchy_suffix(std::string_view id) {
  auto dash = id.find('-');
  while (dash != std::string_view::npos) {
    if (dash + 1 < id.size() && std::isdigit(static_cast<unsigned char>(id[dash + 1]))) return true;
    dash = id.find('-', dash + 1);
  }
  return false;
}

Lexicon::Lexicon(std::vector<VerbCode> codes) {
  for (VerbCode& code : codes) {
    validate_code(code);
    std::string id = code.id;
    if (!codes_.emplace(id, std::move(code)).second) {
      throw Error(ErrorCode::conflict, "duplicate verb code id '" + id + "'");
    }
  }
  for (const auto& [id, code] : codes_) {
    for (const VerbMember& m : code.members) {
      for (const std::string& form : m.surface_forms) {
        auto& hits = index_[form];
        VerbHit hit{id, m.lemma};
        if (std::find(hits.begin(), hits.end(), hit) == hits.end()) hits.push_back(hit);
      }
    }
  }
  for (auto& [form, hits] : index_) std::sort(hits.begin(), hits.end());
}

const VerbCode* Lexicon::find(std::string_view id) const {
  auto it = codes_.find(std::string(id));
  return it == codes_.end() ? nullptr : &it->second;
}

std::vector<VerbHit> Lexicon::lookup(std::string_view word) const {
  auto it = index_.find(text::lower(word));
  if (it == index_.end()) return {};
  return it->second;
}

bool Lexicon::is_verb(std::string_view word) const { return index_.contains(text::lower(word)); }

std::vector<std::string> Lexicon::surface_forms() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [form, hits] : index_) out.push_back(form);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VerbHit> lookup_verb(const Lexicon& lex, std::string_view word) { return lex.lookup(word); }

Lexicon load_lexicon(const json& doc, const LoadOptions& options) {
  if (!doc.is_object() || !doc.contains("codes") || !doc.at("codes").is_array()) {
    throw Error(ErrorCode::format, "lexicon document must be an object with a \"codes\" array", 1);
  }
  std::vector<VerbCode> codes;
  std::set<std::string> ids;
  for (const json& jc : doc.at("codes")) {
    if (!jc.is_object() || !jc.contains("id") || !jc.at("id").is_string()) {
      throw Error(ErrorCode::format, "every code needs a string \"id\"");
    }
    VerbCode code;
    code.id = jc.at("id").get<std::string>();
    if (!ids.insert(code.id).second) throw Error(ErrorCode::conflict, "duplicate verb code id '" + code.id + "'");

    std::string origin = jc.value("origin", has_hierarchy_suffix(code.id) ? "verbnet" : "proposed");
    if (origin == "verbnet") {
      code.origin = Origin::verbnet;
    } else if (origin == "proposed") {
      code.origin = Origin::proposed;
    } else {
      throw Error(ErrorCode::format, "code '" + code.id + "': unknown origin '" + origin + "'");
    }

    if (!jc.contains("members") || !jc.at("members").is_array()) {
      throw Error(ErrorCode::format, "code '" + code.id + "' needs a \"members\" array");
    }
    for (const json& jm : jc.at("members")) {
      VerbMember member;
      if (jm.is_string()) {
        member.lemma = text::lower(jm.get<std::string>());
        member.surface_forms = conjugate(member.lemma);
      } else if (jm.is_object() && jm.contains("lemma") && jm.at("lemma").is_string()) {
        if (jm.value("provisional", false) && !options.include_provisional) continue;
        member.lemma = text::lower(jm.at("lemma").get<std::string>());
        if (jm.contains("forms")) {
          member.surface_forms.insert(member.lemma);
          for (const json& f : jm.at("forms")) {
            if (!f.is_string()) throw Error(ErrorCode::format, "code '" + code.id + "': forms must be strings");
            member.surface_forms.insert(text::lower(f.get<std::string>()));
          }
        } else {
          member.surface_forms = conjugate(member.lemma);
        }
      } else {
        throw Error(ErrorCode::format, "code '" + code.id + "': member must be a string or {\"lemma\": ...}");
      }
      if (code.member(member.lemma) == nullptr) code.members.push_back(std::move(member));
    }

    if (jc.contains("slots")) {
      if (!jc.at("slots").is_array()) throw Error(ErrorCode::format, "code '" + code.id + "': slots must be an array");
      for (const json& js : jc.at("slots")) code.slot_template.slots.push_back(slot_from_json(code.id, js));
      code.explicit_slots = true;
    } else {
      code.slot_template = SlotTemplate::standard();
    }
    codes.push_back(std::move(code));
  }
  return Lexicon(std::move(codes));
}

Lexicon load_lexicon(std::string_view source, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::format, std::string("malformed lexicon: ") + e.what(), line_of_offset(source, e.byte));
  }
  return load_lexicon(doc, options);
}

Lexicon load_lexicon_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read lexicon file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_lexicon(ss.str(), options);
}

const Lexicon& default_lexicon() {
  static const Lexicon lex = load_lexicon(default_lexicon_source());
  return lex;
}

Lexicon merge_lexicons(const Lexicon& base, const Lexicon& overlay) {
  std::map<std::string, VerbCode> merged = base.codes();
  for (const auto& [id, code] : overlay.codes()) {
    auto it = merged.find(id);
    if (it == merged.end()) {
      merged.emplace(id, code);
      continue;
    }
    VerbCode& target = it->second;
    if (code.explicit_slots) {
      target.slot_template = code.slot_template;
      target.explicit_slots = true;
    }
    for (const VerbMember& m : code.members) {
      auto existing = std::find_if(target.members.begin(), target.members.end(),
                                   [&](const VerbMember& t) { return t.lemma == m.lemma; });
      if (existing == target.members.end()) {
        target.members.push_back(m);
      } else {
        existing->surface_forms.insert(m.surface_forms.begin(), m.surface_forms.end());
      }
    }
  }
  std::vector<VerbCode> codes;
  codes.reserve(merged.size());
  for (auto& [id, code] : merged) codes.push_back(std::move(code));
  return Lexicon(std::move(codes));
}

json to_json(const Lexicon& lex) {
  json codes = json::array();
  for (const auto& [id, code] : lex.codes()) {
    json members = json::array();
    for (const VerbMember& m : code.members) {
      members.push_back({{"lemma", m.lemma}, {"forms", m.surface_forms}});
    }
    json slots = json::array();
    for (const Slot& s : code.slot_template.slots) slots.push_back(slot_to_json(s));
    json entry = {{"id", id}, {"origin", to_string(code.origin)}, {"members", members}};
    if (code.explicit_slots) entry["slots"] = slots;
    codes.push_back(std::move(entry));
  }
  return json{{"codes", codes}};
}

}  // namespace rimay
