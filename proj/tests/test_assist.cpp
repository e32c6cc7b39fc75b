#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "completion_oracle.hpp"
#include "rimay/assist.hpp"
#include "support.hpp"

using namespace rimay;
using rimay::testing::fixture_context;
using rimay::testing::fixture_json;

namespace {

std::set<std::string> labels(const std::vector<CompletionItem>& items, std::optional<ItemKind> kind = std::nullopt) {
  std::set<std::string> out;
  for (const auto& i : items) {
    if (!kind || i.kind == *kind) out.insert(i.label);
  }
  return out;
}

std::vector<CompletionItem> at_end(const std::string& text) {
  return complete(text, text.size(), fixture_context());
}

}  // namespace

TEST(Complete, ModalAfterActor) {
  auto items = at_end("System-A ");
  auto l = labels(items, ItemKind::keyword);
  EXPECT_TRUE(l.contains("must"));
  EXPECT_TRUE(l.contains("shall"));
  EXPECT_FALSE(labels(items).contains("create"));
}

TEST(Complete, VerbPrefix) {
  auto items = at_end("System-A must re");
  auto verbs = labels(items, ItemKind::verb);
  std::set<std::string> expected;
  for (const auto& form : default_lexicon().surface_forms()) {
    if (form.rfind("re", 0) == 0) expected.insert(form);
  }
  EXPECT_EQ(verbs, expected);
  EXPECT_TRUE(verbs.contains("receive"));
  EXPECT_TRUE(verbs.contains("reject"));
  EXPECT_FALSE(verbs.contains("send"));
  for (const auto& i : items) EXPECT_EQ(i.replace_from, std::string("System-A must ").size());
}

TEST(Complete, PropertiesAfterDot) {
  auto items = at_end("If Instruction.");
  EXPECT_EQ(labels(items), (std::set<std::string>{"Owner", "Status", "Settlement_Date"}));
  for (const auto& i : items) {
    EXPECT_EQ(i.kind, ItemKind::property);
    EXPECT_EQ(i.detail.value_or(""), "property of Instruction");
  }
}

TEST(Complete, PropertiesOfBoundInstance) {
  auto items = at_end("If Inx1 of type Settlement_Instruction has Status and Inx1.");
  EXPECT_EQ(labels(items), (std::set<std::string>{"Owner", "Status", "Settlement_Date"}));
}

TEST(Complete, EmptyText) {
  auto items = at_end("");
  auto l = labels(items);
  for (const char* k : {"For", "While", "When", "Where", "If", "Before", "After"}) EXPECT_TRUE(l.contains(k)) << k;
  for (const auto& a : fixture_context().symbols->actors) EXPECT_TRUE(l.contains(a)) << a;
  EXPECT_FALSE(l.contains("must"));
}

TEST(Complete, LeadingSpaceInserted) {
  auto items = at_end("System-A");
  bool found = false;
  for (const auto& i : items) {
    if (i.label == "must") {
      found = true;
      EXPECT_EQ(i.insert_text, " must");
    }
  }
  // "System-A" is itself a partial word: must is offered only after the space.
  EXPECT_FALSE(found);
  auto after = at_end("When System-B receives an email alert from System-A,");
  auto it = std::find_if(after.begin(), after.end(), [](const CompletionItem& i) { return i.label == "System-B"; });
  ASSERT_NE(it, after.end());
  EXPECT_EQ(it->insert_text, " System-B");
}

TEST(Complete, PunctuationAfterWord) {
  auto items = at_end("When System-B receives an email alert from System-A");
  auto it = std::find_if(items.begin(), items.end(), [](const CompletionItem& i) { return i.label == ","; });
  ASSERT_NE(it, items.end());
  EXPECT_EQ(it->replace_from, std::string("When System-B receives an email alert from System-A").size());
}

TEST(Complete, RankingIsStable) {
  auto items = at_end("System-A must ");
  for (std::size_t i = 0; i < items.size(); ++i) EXPECT_EQ(items[i].sort_rank, static_cast<int>(i));
  // lemmas before inflected forms
  auto pos = [&](const std::string& l) {
    return std::find_if(items.begin(), items.end(), [&](const CompletionItem& c) { return c.label == l; }) -
           items.begin();
  };
  EXPECT_LT(pos("send"), pos("sends"));
  EXPECT_EQ(items, complete("System-A must ", 14, fixture_context()));
}

TEST(Complete, ExcludesExactMatch) {
  auto items = at_end("System-A must send");
  EXPECT_FALSE(labels(items).contains("send"));
  EXPECT_TRUE(labels(items).contains("sends"));
}

TEST(Complete, OffsetBeyondEnd) {
  try {
    complete("abc", 4, fixture_context());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::usage);
  }
}

TEST(Complete, LexErrorGivesNothing) { EXPECT_TRUE(at_end("System-A must send \"unterminated ").empty()); }

TEST(Complete, ItemizedSnippets) {
  auto items = at_end("System-A must");
  (void)items;
  auto resp = at_end("When System-B receives an email alert from System-A, System-B must ");
  auto it = std::find_if(resp.begin(), resp.end(), [](const CompletionItem& i) { return i.kind == ItemKind::snippet && i.label == ":"; });
  EXPECT_NE(it, resp.end());
}

TEST(Complete, GoldenCompleteness) {
  const auto sentences_doc = fixture_json("golden.json");
  for (const auto& s : sentences_doc["sentences"]) {
    auto misses = rimay::testing::completeness_misses(s.get<std::string>(), fixture_context());
    for (const auto& m : misses) ADD_FAILURE() << s << " @" << m.offset << " '" << m.token << "'";
  }
}

TEST(Complete, GoldenSoundness) {
  const auto& ctx = fixture_context();
  std::size_t checked = 0;
  const auto sentences_doc = fixture_json("golden.json");
  for (const auto& s : sentences_doc["sentences"]) {
    std::string text = s.get<std::string>();
    for (const auto& tok : rimay::testing::real_tokens(text)) {
      std::string prefix = text.substr(0, tok.span.start);
      for (const auto& item : complete(prefix, prefix.size(), ctx)) {
        ++checked;
        EXPECT_TRUE(rimay::testing::item_sound(prefix, item, ctx))
            << "prefix '" << prefix << "' item '" << item.insert_text << "'";
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Hover, VerbCode) {
  std::string t = "When System-B receives an email alert from System-A, System-B must store the email alert";
  auto h = hover(t, t.find("store") + 2, fixture_context());
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, "keep-15.2 — members: store");
  auto r = hover(t, t.find("receives"), fixture_context());
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, "obtain-13.5.2 — members: accept, receive, retrieve, reject");
}

TEST(Hover, Whitespace) {
  std::string t = "System-A must  store the record";
  EXPECT_FALSE(hover(t, t.find("  ") + 1, fixture_context()));
  EXPECT_FALSE(hover(t, t.size(), fixture_context()));
}

TEST(Hover, BoundInstance) {
  std::string t =
      "If Inx1 of type Settlement_Instruction has Status and Status is equal to Valid, System-A must create a MT530 "
      "transaction processing command";
  auto h = hover(t, 4, fixture_context());
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, "instance of Settlement_Instruction");
}

TEST(Hover, Symbols) {
  std::string t = "If Instruction.Settlement_Date conforms to the standard ISO-8601, System-A must create a record";
  const auto& ctx = fixture_context();
  EXPECT_EQ(hover(t, t.find("System-A"), ctx).value_or(""), "actor");
  EXPECT_EQ(hover(t, t.find("Settlement_Date"), ctx).value_or(""), "property of Instruction");
  std::string c = "If Instruction has the properties described in the Section 1.b, System-A must create a record";
  EXPECT_EQ(hover(c, 4, ctx).value_or(""), "class with properties: Owner, Settlement_Date, Status");
  // incomplete input still gets a fallback
  EXPECT_EQ(hover("System-A must", 1, ctx).value_or(""), "actor");
  EXPECT_EQ(hover("System-A must frobnicate", 16, ctx), std::nullopt);
}

TEST(CompletionJson, Shape) {
  auto items = at_end("If Instruction.");
  ASSERT_FALSE(items.empty());
  auto j = to_json(items.front());
  for (const char* k : {"label", "insert_text", "kind", "detail", "sort_rank", "replace_from"}) EXPECT_TRUE(j.contains(k));
  EXPECT_EQ(j["kind"], "property");
}
