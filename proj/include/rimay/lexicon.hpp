#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace rimay {

enum class Origin { verbnet, proposed };

enum class SlotRole {
  theme,
  initial_location,
  destination,
  channel,
  compliance,
  described_in,
  value,
  instrument,
  beneficiary,
};

/// Operand categories a slot accepts.
enum class OperandKind { symbol, text, number, value };

const char* to_string(Origin origin);
const char* to_string(SlotRole role);
const char* to_string(OperandKind kind);

struct Slot {
  SlotRole role = SlotRole::theme;
  std::string keyword;  // empty for the direct-object position
  std::set<OperandKind> operands;
  bool optional = false;
  bool repeatable = false;

  bool operator==(const Slot&) const = default;
};

struct SlotTemplate {
  std::vector<Slot> slots;

  /// Mandatory theme plus optional from / to / through / in compliance with.
  static SlotTemplate standard();
  const Slot* find(SlotRole role) const;

  bool operator==(const SlotTemplate&) const = default;
};

struct VerbMember {
  std::string lemma;
  std::set<std::string> surface_forms;

  bool operator==(const VerbMember&) const = default;
};

struct VerbCode {
  std::string id;
  Origin origin = Origin::verbnet;
  std::vector<VerbMember> members;
  SlotTemplate slot_template;
  // False when the file omitted "slots" and the standard template was used.
  bool explicit_slots = false;

  const VerbMember* member(std::string_view lemma) const;

  bool operator==(const VerbCode&) const = default;
};

struct VerbHit {
  std::string code_id;
  std::string lemma;

  bool operator==(const VerbHit&) const = default;
  auto operator<=>(const VerbHit&) const = default;
};

/// Lemma, third-person singular and past forms. Doubling is not modeled.
std::set<std::string> conjugate(std::string_view lemma);

/// True when `id` ends in a VerbNet hierarchy level such as "-13.5.2".
bool has_hierarchy_suffix(std::string_view id);

struct LoadOptions {
  // Members flagged "provisional" in the file are skipped unless set.
  bool include_provisional = false;
};

/// Verb-code registry. Immutable once built; the index is always the exact
/// inverse of the members' surface forms.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<VerbCode> codes);

  const std::map<std::string, VerbCode>& codes() const noexcept { return codes_; }
  const VerbCode* find(std::string_view id) const;
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }

  /// Case-insensitive; an empty result means the word is not a known verb.
  std::vector<VerbHit> lookup(std::string_view word) const;
  bool is_verb(std::string_view word) const;

  /// Every surface form, sorted.
  std::vector<std::string> surface_forms() const;
  const std::unordered_map<std::string, std::vector<VerbHit>>& index() const noexcept { return index_; }

  bool operator==(const Lexicon& other) const { return codes_ == other.codes_; }

 private:
  std::map<std::string, VerbCode> codes_;
  std::unordered_map<std::string, std::vector<VerbHit>> index_;
};

Lexicon load_lexicon(std::string_view source, const LoadOptions& options = {});
inline Lexicon load_lexicon(const std::string& source, const LoadOptions& options = {}) {
  return load_lexicon(std::string_view(source), options);
}
inline Lexicon load_lexicon(const char* source, const LoadOptions& options = {}) {
  return load_lexicon(std::string_view(source), options);
}
Lexicon load_lexicon(const nlohmann::json& doc, const LoadOptions& options = {});
Lexicon load_lexicon_file(const std::string& path, const LoadOptions& options = {});

/// The 48-code lexicon shipped in lexicon/default.json.
const Lexicon& default_lexicon();
std::string_view default_lexicon_source();

std::vector<VerbHit> lookup_verb(const Lexicon& lex, std::string_view word);

/// Overlay codes replace the base slot template (when the overlay states one)
/// and union members; unknown ids are added.
Lexicon merge_lexicons(const Lexicon& base, const Lexicon& overlay);

nlohmann::json to_json(const Lexicon& lex);

}  // namespace rimay
