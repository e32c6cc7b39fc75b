#include <gtest/gtest.h>

#include "ast_gen.hpp"
#include "rimay/parser.hpp"
#include "support.hpp"

using namespace rimay;

TEST(Printer, ScopedExample) {
  Requirement r;
  SymbolRef subject;
  subject.kind = SymbolKind::class_;
  subject.path = {"depositories"};
  subject.modifier.quantifier = Quantifier::all;
  subject.modifier.article = Article::the;
  r.scope = Scope{subject, {}};
  r.actor.kind = SymbolKind::actor;
  r.actor.path = {"System-A"};
  SymbolRef theme;
  theme.kind = SymbolKind::element;
  theme.path = {"MT530 transaction processing command"};
  theme.modifier.article = Article::a;
  ActionPhrase p{"engender-27", "create", {SlotFill{SlotRole::theme, "", {theme}, {}}}, {}};
  r.response = ResponseExpr::make_leaf(AtomicResponse{p, std::nullopt, {}}, {});
  EXPECT_EQ(pretty_print(r), "For all the depositories, System-A must create a MT530 transaction processing command");
}

TEST(Printer, NegatedModal) {
  EXPECT_EQ(pretty_print(Modal{ModalVerb::must, true}), "must not");
  EXPECT_EQ(pretty_print(Modal{ModalVerb::shall, false}), "shall");
}

TEST(Printer, GoldenSentencesAreFixedPoints) {
  auto golden = rimay::testing::fixture_json("golden.json");
  for (const auto& s : golden["sentences"]) {
    auto r = parse_requirement(s.get<std::string>(), rimay::testing::fixture_context());
    ASSERT_TRUE(r.requirement) << s;
    std::string printed = pretty_print(*r.requirement);
    auto again = parse_requirement(printed, rimay::testing::fixture_context());
    ASSERT_TRUE(again.requirement) << printed;
    EXPECT_TRUE(structurally_equal(*again.requirement, *r.requirement)) << printed;
    EXPECT_EQ(pretty_print(*again.requirement), printed);
  }
}

TEST(Printer, GeneratedRoundTrip) {
  const auto& ctx = rimay::testing::fixture_context();
  rimay::testing::AstGenerator gen(*ctx.lexicon, *ctx.symbols, 20240901);
  int failures = 0;
  for (int i = 0; i < 1500; ++i) {
    Requirement ast = gen.requirement();
    std::string text = pretty_print(ast);
    auto r = parse_requirement(text, ctx);
    bool ok = r.requirement && structurally_equal(*r.requirement, ast);
    if (!ok && ++failures <= 5) {
      ADD_FAILURE() << "case " << i << ":\n" << text << "\n"
                    << (r.requirement ? "parsed differently:\n" + to_json(*r.requirement, false).dump() + "\nexpected:\n" +
                                            to_json(ast, false).dump()
                                      : "not parsed: " + (r.diagnostics.empty() ? "" : r.diagnostics[0].message));
    }
  }
  EXPECT_EQ(failures, 0);
}
