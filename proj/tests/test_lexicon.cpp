#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rimay/error.hpp"
#include "rimay/lexicon.hpp"

using namespace rimay;

namespace {

std::set<std::string> lemmas(const Lexicon& lex, const std::string& id) {
  std::set<std::string> out;
  const VerbCode* code = lex.find(id);
  if (code == nullptr) return out;
  for (const auto& m : code->members) out.insert(m.lemma);
  return out;
}

Lexicon single(const std::string& id, std::vector<std::string> members) {
  nlohmann::json j = {{"codes", {{{"id", id}, {"members", members}}}}};
  return load_lexicon(j);
}

}  // namespace

TEST(Conjugate, RegularForms) {
  EXPECT_EQ(conjugate("store"), (std::set<std::string>{"store", "stores", "stored"}));
  EXPECT_EQ(conjugate("receive"), (std::set<std::string>{"receive", "receives", "received"}));
  EXPECT_EQ(conjugate("copy"), (std::set<std::string>{"copy", "copies", "copied"}));
  EXPECT_EQ(conjugate("display"), (std::set<std::string>{"display", "displays", "displayed"}));
  EXPECT_EQ(conjugate("pass"), (std::set<std::string>{"pass", "passes", "passed"}));
  EXPECT_EQ(conjugate("publish"), (std::set<std::string>{"publish", "publishes", "published"}));
  EXPECT_EQ(conjugate("search"), (std::set<std::string>{"search", "searches", "searched"}));
}

TEST(HierarchySuffix, Detection) {
  EXPECT_TRUE(has_hierarchy_suffix("obtain-13.5.2"));
  EXPECT_TRUE(has_hierarchy_suffix("admit-65"));
  EXPECT_TRUE(has_hierarchy_suffix("reflexive_appearance-48.1.2"));
  EXPECT_FALSE(has_hierarchy_suffix("validate"));
  EXPECT_FALSE(has_hierarchy_suffix("enable_disable"));
  EXPECT_FALSE(has_hierarchy_suffix("get-from"));
}

TEST(DefaultLexicon, HasFortyEightCodes) {
  const Lexicon& lex = default_lexicon();
  EXPECT_EQ(lex.size(), 48u);
  std::size_t verbnet = 0;
  for (const auto& [id, code] : lex.codes()) verbnet += code.origin == Origin::verbnet;
  // 32 base codes plus establish, search and stop.
  EXPECT_EQ(verbnet, 35u);
}

TEST(DefaultLexicon, MembersMatchTables) {
  const Lexicon& lex = default_lexicon();
  EXPECT_EQ(lemmas(lex, "obtain-13.5.2"), (std::set<std::string>{"accept", "receive", "retrieve", "reject"}));
  EXPECT_EQ(lemmas(lex, "send-11.1"), (std::set<std::string>{"return", "send", "forward", "pass", "export"}));
  EXPECT_EQ(lemmas(lex, "keep-15.2"), (std::set<std::string>{"store"}));
  EXPECT_EQ(lemmas(lex, "turn-26.6.1"), (std::set<std::string>{"convert", "change", "transform"}));
  EXPECT_EQ(lemmas(lex, "calculate"), (std::set<std::string>{"calculate", "recalculate"}));
  EXPECT_EQ(lemmas(lex, "begin-55.1-1"), (std::set<std::string>{"begin", "start"}));
  EXPECT_EQ(lemmas(lex, "update"), (std::set<std::string>{"update", "set"}));
  EXPECT_EQ(lemmas(lex, "remove-10.1"), (std::set<std::string>{"extract", "remove", "delete", "deduct"}));
  EXPECT_EQ(lemmas(lex, "other_cos-45.4"), (std::set<std::string>{"close", "reverse"}));
  EXPECT_EQ(lemmas(lex, "use-105"), (std::set<std::string>{"apply", "use"}));
}

TEST(DefaultLexicon, ProvisionalImportIsOptIn) {
  EXPECT_TRUE(lookup_verb(default_lexicon(), "import").empty());
  Lexicon with = load_lexicon(default_lexicon_source(), LoadOptions{true});
  ASSERT_EQ(lookup_verb(with, "imports").size(), 1u);
  EXPECT_EQ(lookup_verb(with, "imports")[0].code_id, "send-11.1");
}

TEST(DefaultLexicon, ObtainTemplateHasPaperSlots) {
  const VerbCode* obtain = default_lexicon().find("obtain-13.5.2");
  ASSERT_NE(obtain, nullptr);
  ASSERT_NE(obtain->slot_template.find(SlotRole::initial_location), nullptr);
  EXPECT_EQ(obtain->slot_template.find(SlotRole::initial_location)->keyword, "from");
  EXPECT_EQ(obtain->slot_template.find(SlotRole::channel)->keyword, "through");
  EXPECT_EQ(obtain->slot_template.find(SlotRole::compliance)->keyword, "in compliance with");
  EXPECT_EQ(obtain->slot_template.find(SlotRole::destination), nullptr);
  EXPECT_EQ(obtain->slot_template.slots.front().keyword, "");
}

TEST(LookupVerb, Examples) {
  const Lexicon& lex = default_lexicon();
  EXPECT_EQ(lookup_verb(lex, "stores"), (std::vector<VerbHit>{{"keep-15.2", "store"}}));
  EXPECT_EQ(lookup_verb(lex, "STORE"), (std::vector<VerbHit>{{"keep-15.2", "store"}}));
  EXPECT_TRUE(lookup_verb(lex, "frobnicate").empty());
  auto hits = lookup_verb(lex, "receives");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].code_id, "obtain-13.5.2");
  EXPECT_EQ(hits[0].lemma, "receive");
}

TEST(LookupVerb, IndexIsExactInverse) {
  const Lexicon& lex = default_lexicon();
  std::size_t pairs = 0;
  for (const auto& [id, code] : lex.codes()) {
    for (const auto& m : code.members) {
      EXPECT_TRUE(m.surface_forms.contains(m.lemma));
      for (const auto& form : m.surface_forms) {
        auto hits = lookup_verb(lex, form);
        EXPECT_NE(std::find(hits.begin(), hits.end(), VerbHit{id, m.lemma}), hits.end()) << form;
        ++pairs;
      }
    }
  }
  std::size_t indexed = 0;
  for (const auto& [form, hits] : lex.index()) indexed += hits.size();
  EXPECT_EQ(indexed, pairs);
}

TEST(LoadLexicon, EmptyCodes) {
  Lexicon lex = load_lexicon(R"({"codes": []})");
  EXPECT_TRUE(lex.empty());
  EXPECT_TRUE(lookup_verb(lex, "send").empty());
}

TEST(LoadLexicon, ObtainFileIndexesReceives) {
  Lexicon lex = single("obtain-13.5.2", {"accept", "receive", "retrieve", "reject"});
  auto hits = lookup_verb(lex, "receives");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].code_id, "obtain-13.5.2");
}

TEST(LoadLexicon, Errors) {
  try {
    load_lexicon("{\n  \"codes\": [\n    {\"id\": \"x\",, }\n  ]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::format);
    ASSERT_TRUE(e.line().has_value());
    EXPECT_EQ(*e.line(), 3u);
  }
  try {
    load_lexicon(R"({"codes": [{"id": "cancel", "members": ["cancel"]}, {"id": "cancel", "members": ["abort"]}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::conflict);
  }
  try {
    load_lexicon(R"({"codes": [{"id": "cancel", "members": []}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
  }
  try {
    load_lexicon(R"({"codes": [{"id": "cancel", "origin": "verbnet", "members": ["cancel"]}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
  }
  try {
    load_lexicon(R"({"codes": [{"id": "cancel", "members": ["cancel"],
      "slots": [{"role": "theme", "keyword": ""}, {"role": "channel", "keyword": ""}]}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
  }
}

TEST(MergeLexicons, UnionsMembers) {
  Lexicon merged = merge_lexicons(single("begin-55.1-1", {"begin"}), single("begin-55.1-1", {"start"}));
  EXPECT_EQ(lemmas(merged, "begin-55.1-1"), (std::set<std::string>{"begin", "start"}));
  Lexicon upd = merge_lexicons(single("update", {"update"}), single("update", {"set"}));
  EXPECT_EQ(lemmas(upd, "update"), (std::set<std::string>{"update", "set"}));
  EXPECT_EQ(lookup_verb(upd, "sets").size(), 1u);
}

TEST(MergeLexicons, IdentityAndIdempotence) {
  const Lexicon& base = default_lexicon();
  EXPECT_EQ(merge_lexicons(base, Lexicon{}), base);
  Lexicon overlay = load_lexicon(R"({"codes": [
    {"id": "send-11.1", "members": ["import", "transmit"],
     "slots": [{"role": "theme", "keyword": "", "operands": ["symbol"]},
               {"role": "destination", "keyword": "to", "operands": ["symbol"], "optional": true}]},
    {"id": "archive", "members": ["archive"]}]})");
  Lexicon once = merge_lexicons(base, overlay);
  EXPECT_EQ(merge_lexicons(once, overlay), once);
  EXPECT_EQ(once.size(), 49u);
  EXPECT_EQ(once.find("send-11.1")->slot_template.slots.size(), 2u);
  EXPECT_TRUE(lemmas(once, "send-11.1").contains("forward"));
  // Members are never removed, so every base form still resolves.
  for (const auto& form : base.surface_forms()) EXPECT_TRUE(once.is_verb(form)) << form;
}

TEST(MergeLexicons, TemplateKeptWhenOverlayOmitsSlots) {
  Lexicon once = merge_lexicons(default_lexicon(), single("obtain-13.5.2", {"fetch"}));
  EXPECT_EQ(once.find("obtain-13.5.2")->slot_template, default_lexicon().find("obtain-13.5.2")->slot_template);
}

TEST(ToJson, RoundTrips) {
  const Lexicon& lex = default_lexicon();
  EXPECT_EQ(load_lexicon(to_json(lex)), lex);
}
