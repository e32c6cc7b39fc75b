#include <gtest/gtest.h>

#include "rimay/parser.hpp"
#include "support.hpp"

using namespace rimay;
using rimay::testing::fixture_context;
using rimay::testing::fixture_json;
using nlohmann::json;

namespace {

ParseResult parse(std::string_view text) { return parse_requirement(text, fixture_context()); }

json ast(std::string_view text) {
  auto r = parse(text);
  EXPECT_TRUE(r.representable) << text;
  return r.requirement ? to_json(*r.requirement, false) : json();
}

json condition_ast(std::string_view text) {
  auto r = parse_fragment(text, Fragment::condition, fixture_context());
  EXPECT_TRUE(r.representable) << text;
  const auto* c = std::get_if<ConditionExpr>(&r.node);
  return c ? to_json(*c, false) : json();
}

json symbol(std::vector<std::string> path, const char* kind, const char* notation = "plain") {
  return json{{"node", "SymbolRef"}, {"path", path}, {"kind", kind}, {"notation", notation}, {"resolved", true}};
}

}  // namespace

TEST(Golden, AllFragmentsRepresentable) {
  json golden = fixture_json("golden.json");
  for (const auto& item : golden["fragments"]) {
    std::string text = item["text"];
    auto r = parse_fragment(text, rimay::testing::fragment_kind(item["kind"]), fixture_context());
    EXPECT_TRUE(r.representable) << text;
    for (const auto& d : r.diagnostics) EXPECT_NE(d.severity, Severity::error) << text << ": " << d.message;
  }
  for (const auto& s : golden["sentences"]) EXPECT_TRUE(parse(s.get<std::string>()).representable) << s;
}

TEST(Golden, ScopedRequirementShape) {
  json j = ast("For all the depositories, System-A must create a MT530 transaction processing command");
  EXPECT_EQ(j["scope"]["subject"]["quantifier"], "all");
  EXPECT_EQ(j["scope"]["subject"]["article"], "the");
  EXPECT_EQ(j["scope"]["subject"]["path"], json::array({"depositories"}));
  EXPECT_TRUE(j["conditions"].is_null());
  EXPECT_EQ(j["actor"], symbol({"System-A"}, "actor"));
  EXPECT_EQ(j["modal"], (json{{"verb", "must"}, {"negated", false}}));
  EXPECT_EQ(j["response"]["phrase"]["code_id"], "engender-27");
  EXPECT_EQ(j["response"]["phrase"]["verb"], "create");
}

TEST(Golden, WhenTriggerShape) {
  json j = ast("When System-B receives an email alert from System-A, System-B must store the email alert");
  const json& when = j["conditions"]["head"];
  EXPECT_EQ(when["node"], "When");
  const json& trig = when["trigger"];
  EXPECT_EQ(trig["actor"]["path"], json::array({"System-B"}));
  EXPECT_EQ(trig["actions"]["code_id"], "obtain-13.5.2");
  const json& slots = trig["actions"]["slots"];
  ASSERT_EQ(slots.size(), 2u);
  EXPECT_EQ(slots[1]["role"], "initial_location");
  EXPECT_EQ(slots[1]["operands"][0]["path"], json::array({"System-A"}));
  EXPECT_EQ(j["response"]["phrase"]["code_id"], "keep-15.2");
}

TEST(Golden, InlineInstanceConjunction) {
  json c = condition_ast("Inx1 of type Settlement_Instruction has Status and Status is equal to Valid");
  ASSERT_EQ(c["node"], "And");
  ASSERT_EQ(c["operands"].size(), 2u);
  const json& has = c["operands"][0];
  EXPECT_EQ(has["node"], "ClassOrPropOpElement");
  EXPECT_EQ(has["op"]["family"], "contains");
  EXPECT_EQ(has["lhs"]["declared_type"], "Settlement_Instruction");
  EXPECT_EQ(has["lhs"]["kind"], "instance");
  const json& cmp = c["operands"][1];
  EXPECT_EQ(cmp["node"], "InstanceOrPropOpValue");
  EXPECT_EQ(cmp["op"]["kind"], "eq");
  EXPECT_EQ(cmp["lhs"], symbol({"Inx1", "Status"}, "property", "implicit_owner"));
  EXPECT_EQ(cmp["rhs"], (json{{"node", "Value"}, {"word", "Valid"}}));
}

TEST(Golden, PropertyComparisonWithUnit) {
  json c = condition_ast("the Transaction.Amount is less than or equal to 20000 Euros");
  EXPECT_EQ(c["node"], "ClassOrPropOpElement");
  json lhs = symbol({"Transaction", "Amount"}, "property", "dotted");
  lhs["article"] = "the";
  EXPECT_EQ(c["lhs"], lhs);
  EXPECT_EQ(c["op"]["kind"], "le");
  EXPECT_EQ(c["rhs"], (json{{"node", "Number"}, {"raw", "20000"}, {"unit", "Euros"}}));
}

TEST(Golden, UiComponentCondition) {
  json c = condition_ast("the Account Number field contains 0000");
  EXPECT_EQ(c["node"], "UiComponentOp");
  EXPECT_EQ(c["label"]["raw"], "Account Number");
  EXPECT_EQ(c["component_type"], "field");
  EXPECT_EQ(c["op"]["kind"], "contains");
  EXPECT_EQ(c["rhs"]["raw"], "0000");
}

TEST(Golden, HasPropertiesVariants) {
  json inline_list = condition_ast("Instruction has the properties: Owner, Status and Settlement_Date");
  EXPECT_EQ(inline_list["node"], "HasProperties");
  EXPECT_EQ(inline_list["properties"], json::array({"Owner", "Status", "Settlement_Date"}));
  json doc = condition_ast("Instruction has the properties described in the Section 1.b");
  EXPECT_EQ(doc["node"], "HasProperties");
  EXPECT_EQ(doc["document"]["raw"], "the Section 1.b");
}

TEST(Golden, OwnerOfNotation) {
  json c = condition_ast("Transaction Type of Settlement Request is equal to Z-Value");
  EXPECT_EQ(c["node"], "InstanceOrPropOpValue");
  EXPECT_EQ(c["lhs"], symbol({"Settlement Request", "Transaction Type"}, "property", "of_owner"));
  EXPECT_EQ(c["rhs"]["word"], "Z-Value");
}

TEST(Golden, ConventionCondition) {
  json c = condition_ast("Instruction.Settlement_Date conforms to the standard ISO-8601");
  EXPECT_EQ(c["node"], "Convention");
  EXPECT_EQ(c["standard"]["raw"], "ISO-8601");
}

TEST(Golden, ComplianceSlot) {
  auto r = parse_fragment("reject the \"Message\" in compliance with \"current validation rules\"",
                          Fragment::action_phrase, fixture_context());
  ASSERT_TRUE(r.representable);
  const auto& phrase = std::get<ActionPhrase>(r.node);
  EXPECT_EQ(phrase.code_id, "obtain-13.5.2");
  ASSERT_EQ(phrase.slots.size(), 2u);
  EXPECT_EQ(phrase.slots[1].role, SlotRole::compliance);
  const auto& text = std::get<TextOperand>(phrase.slots[1].operands[0]);
  EXPECT_EQ(text.text.raw, "current validation rules");
}

TEST(Golden, FrequencyAndTemporal) {
  json j = ast("System-A must send the email alert to System-B every 3 seconds");
  EXPECT_EQ(j["response"]["frequency"], (json{{"every", "3"}, {"unit", "second"}}));
  json t = ast("Before 1h00 CET, System-A must send the file to System-B");
  EXPECT_EQ(t["conditions"]["head"]["anchor"], (json{{"node", "Time"}, {"time", "1h00"}, {"zone", "CET"}}));
}

TEST(Parser, EmptyInput) {
  auto r = parse("");
  EXPECT_FALSE(r.representable);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "expected scope, condition, or actor");
}

TEST(Parser, UnknownVerb) {
  auto r = parse("System-A must frobnicate the record");
  EXPECT_FALSE(r.representable);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].cause, Cause::cause1_unknown_verb);
  EXPECT_EQ(r.diagnostics[0].span.start, 14u);
  EXPECT_EQ(r.diagnostics[0].span.end, 24u);
  EXPECT_EQ(classify_failure(r, fixture_context()), FailureClass::cause1);
}

TEST(Parser, UnsupportedPreposition) {
  // "beyond" is not a slot keyword of send-11.1.
  const VerbCode* send = default_lexicon().find("send-11.1");
  ASSERT_NE(send, nullptr);
  for (const Slot& s : send->slot_template.slots) EXPECT_NE(s.keyword, "beyond");
  auto r = parse("System-A must send the file beyond the firewall");
  EXPECT_EQ(classify_failure(r, fixture_context()), FailureClass::cause2);
}

TEST(Parser, LexFailureIsUnknown) {
  auto r = parse("System-A must send the \"file");
  EXPECT_FALSE(r.representable);
  EXPECT_EQ(classify_failure(r, fixture_context()), FailureClass::unknown);
}

TEST(Parser, ClassifyRepresentableIsUsageError) {
  auto r = parse("System-A must send the file");
  try {
    classify_failure(r, fixture_context());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::usage);
  }
}

TEST(Parser, RecoveryReportsSeveralErrors) {
  auto r = parse("System-A must send the file beyond the firewall and frobnicate the record, System-B must zap");
  EXPECT_EQ(r.error_count(), 3u);
  EXPECT_EQ(r.diagnostics[0].cause, Cause::cause2_unsupported_content);
  EXPECT_EQ(r.diagnostics[1].cause, Cause::cause1_unknown_verb);
  EXPECT_EQ(r.diagnostics[2].cause, Cause::cause1_unknown_verb);

  ParserContext single(fixture_context().lexicon, fixture_context().symbols, ParserOptions{25, false});
  EXPECT_EQ(parse_requirement("System-A must send the file beyond the firewall and frobnicate the record", single)
                .error_count(),
            1u);
  ParserContext capped(fixture_context().lexicon, fixture_context().symbols, ParserOptions{2, true});
  EXPECT_EQ(parse_requirement("System-A must send the file beyond the firewall and frobnicate the record, System-B "
                              "must zap",
                              capped)
                .error_count(),
            2u);
}

TEST(Parser, ExpectedSetsAndSpansWithinInput) {
  for (std::string text : {"System-A must send the file beyond", "If the", "System-A must", "When System-B , x",
                           "System-A must send the file to", "For all the depositories System-A"}) {
    auto r = parse(text);
    EXPECT_FALSE(r.representable) << text;
    for (const auto& d : r.diagnostics) {
      EXPECT_LE(d.span.start, d.span.end);
      EXPECT_LE(d.span.end, text.size());
      EXPECT_FALSE(d.message.empty());
      if (d.severity == Severity::error) EXPECT_FALSE(d.expected.empty()) << text;
    }
  }
}

TEST(Parser, UnresolvedNamesAreWarnings) {
  auto r = parse("System-Z must send the widget to System-B");
  EXPECT_TRUE(r.representable);
  ASSERT_EQ(r.diagnostics.size(), 2u);
  for (const auto& d : r.diagnostics) EXPECT_EQ(d.severity, Severity::warning);
  EXPECT_EQ(r.requirement->actor.kind, SymbolKind::actor);
  EXPECT_FALSE(r.requirement->actor.resolved);
}

TEST(Parser, ItemizedBlocks) {
  std::string text =
      "If the following conditions hold:\n"
      "- Instruction.Status is equal to Valid\n"
      "- Transaction.Amount is greater than 5, or\n"
      "- the Account Number field contains 0000\n"
      "System-A must:\n"
      "- send the file to System-B\n"
      "- store the record";
  auto r = parse(text);
  ASSERT_TRUE(r.representable);
  const auto& pre = std::get<IfStructure>(r.requirement->conditions->head.node).pre;
  const auto& items = std::get<Itemized<ConditionExpr>>(pre);
  EXPECT_EQ(items.items.size(), 3u);
  EXPECT_EQ(items.connectors, (std::vector<Connector>{Connector::and_, Connector::or_}));
  const auto& resp = std::get<Itemized<AtomicResponse>>(r.requirement->response);
  EXPECT_EQ(resp.items.size(), 2u);
  EXPECT_EQ(pretty_print(*r.requirement), text);

  EXPECT_FALSE(parse("System-A must:\n- send the file").representable);
}

TEST(Parser, PrecedenceAndParens) {
  auto r = parse_fragment("Instruction.Status is Valid or Instruction.Owner is X and not (Transaction.Amount is 3)",
                          Fragment::condition, fixture_context());
  ASSERT_TRUE(r.representable);
  json j = to_json(std::get<ConditionExpr>(r.node), false);
  EXPECT_EQ(j["node"], "Or");
  EXPECT_EQ(j["operands"][1]["node"], "And");
  EXPECT_EQ(j["operands"][1]["operands"][1]["node"], "Not");
  EXPECT_EQ(j["operands"][1]["operands"][1]["inner"]["node"], "Paren");
}

TEST(Parser, OperatorSurfacesNormalise) {
  auto op_of = [](const std::string& text) {
    auto r = parse_fragment(text, Fragment::condition, fixture_context());
    EXPECT_TRUE(r.representable) << text;
    return to_json(std::get<ConditionExpr>(r.node), false)["op"];
  };
  EXPECT_EQ(op_of("Instruction.Status equals to Valid")["kind"], "eq");
  EXPECT_EQ(op_of("Transaction.Amount less or equal to 3")["kind"], "le");
  EXPECT_EQ(op_of("Instruction.Status is not Valid")["kind"], "neq");
  json na = op_of("Instruction.Owner is not available");
  EXPECT_EQ(na["kind"], "is_available");
  EXPECT_EQ(na["negated"], true);
  EXPECT_EQ(op_of("Transaction does not contain \"x\"")["negated"], true);
}

TEST(Parser, NegatedModalAndThen) {
  auto r = parse("If the message contains \"FISN\", then the System must not ignore the message.");
  ASSERT_TRUE(r.representable);
  EXPECT_TRUE(r.requirement->modal.negated);
  EXPECT_TRUE(r.requirement->then);
}

TEST(Parser, Deterministic) {
  json golden = fixture_json("golden.json");
  for (const auto& s : golden["sentences"]) {
    auto a = to_json(parse(s.get<std::string>()));
    auto b = to_json(parse(s.get<std::string>()));
    EXPECT_EQ(a.dump(), b.dump());
  }
}

TEST(Parser, MonotoneUnderLexiconGrowth) {
  Lexicon extra = load_lexicon(R"({"codes":[{"id":"archive","origin":"proposed","members":["archive","encrypt"]},
    {"id":"send-11.1","origin":"verbnet","members":["dispatch"]}]})");
  ParserContext grown(merge_lexicons(default_lexicon(), extra), rimay::testing::fixture_model());
  json golden = fixture_json("golden.json");
  for (const auto& s : golden["sentences"]) {
    EXPECT_TRUE(parse_requirement(s.get<std::string>(), grown).representable) << s;
  }
  EXPECT_TRUE(parse_requirement("System-B must archive the file", grown).representable);
}

TEST(Parser, CauseFixture) {
  for (const auto& item : fixture_json("causes.json")) {
    std::string text = item["text"];
    auto r = parse(text);
    ASSERT_FALSE(r.representable) << text;
    EXPECT_EQ(to_string(classify_failure(r, fixture_context())), item["label"].get<std::string>()) << text;
  }
}

TEST(Parser, ResultJson) {
  json j = to_json(parse("System-A must frobnicate the record"));
  EXPECT_FALSE(j["representable"]);
  EXPECT_TRUE(j["ast"].is_null());
  EXPECT_EQ(j["diagnostics"][0]["cause"], "cause1_unknown_verb");
  EXPECT_EQ(j["diagnostics"][0]["line"], 1);
}
