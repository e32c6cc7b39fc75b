#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rimay/parser.hpp"

namespace rimay::testing {

inline std::string fixture_path(const std::string& name) { return std::string(RIMAY_TEST_DATA) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json fixture_json(const std::string& name) { return nlohmann::json::parse(read_fixture(name)); }

inline const SymbolTable& fixture_model() {
  static const SymbolTable table = load_model_file(fixture_path("model.json"));
  return table;
}

inline const ParserContext& fixture_context() {
  static const ParserContext ctx(default_lexicon(), fixture_model());
  return ctx;
}

inline Fragment fragment_kind(const std::string& s) {
  if (s == "requirement") return Fragment::requirement;
  if (s == "condition") return Fragment::condition;
  if (s == "trigger") return Fragment::trigger;
  if (s == "action_phrase") return Fragment::action_phrase;
  if (s == "scope") return Fragment::scope;
  return Fragment::response;
}

}  // namespace rimay::testing
