#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rimay/analytics.hpp"
#include "rimay/document.hpp"
#include "rimay/error.hpp"
#include "rimay/lexicon.hpp"
#include "rimay/model.hpp"
#include "rimay/parser.hpp"
#include "rimay/service.hpp"

using namespace rimay;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string lexicon_path;
  std::string model_path;
  bool json_out = false;

  ParserContext context() const {
    Lexicon lex = lexicon_path.empty() ? default_lexicon() : load_lexicon_file(lexicon_path);
    SymbolTable table = model_path.empty() ? SymbolTable{} : load_model_file(model_path);
    return ParserContext(std::move(lex), std::move(table));
  }
};

int cmd_check(const Common& opts, const std::vector<std::string>& paths) {
  ParserContext ctx = opts.context();
  std::size_t total = 0, ok = 0;
  json files = json::array();
  for (const auto& path : paths) {
    auto records = parse_document(read_file(path), ctx);
    std::string srs_id = std::filesystem::path(path).stem().string();
    if (opts.json_out) {
      json j = records_to_json(srs_id, records, ctx);
      j["file"] = path;
      files.push_back(std::move(j));
    }
    for (const auto& r : records) {
      ++total;
      if (r.result.representable) ++ok;
      if (opts.json_out) continue;
      if (r.result.representable) {
        std::cout << path << ":" << r.line << ": " << r.id << ": representable\n";
        continue;
      }
      auto cause = record_cause(r, ctx);
      std::cout << path << ":" << r.line << ": " << r.id << ": not representable ("
                << (cause ? to_string(*cause) : "unknown") << ")\n";
      for (const auto& d : r.result.diagnostics) {
        std::cout << path << ":" << (r.line + d.span.line - 1) << ":" << d.span.column << ": "
                  << to_string(d.severity) << ": " << d.message;
        if (d.cause) std::cout << " [" << to_string(*d.cause) << "]";
        std::cout << "\n";
      }
    }
  }
  if (opts.json_out) {
    std::cout << json{{"files", files}, {"total", total}, {"representable", ok}}.dump(2) << "\n";
  } else {
    std::cout << ok << "/" << total << " representable\n";
  }
  return ok == total ? kOk : kFindings;
}

int cmd_stats(const Common& opts, const std::vector<std::string>& paths, double alpha) {
  ParserContext ctx = opts.context();
  std::vector<CorpusReport> reports;
  for (const auto& path : paths) {
    reports.push_back(report_from_source(read_file(path), std::filesystem::path(path).stem().string(), ctx));
  }
  std::vector<PairwiseTest> tests;
  if (reports.size() > 1) tests = pairwise_ztests(reports, alpha);
  SaturationStatus sat = saturation(reports);
  if (opts.json_out) {
    json j{{"reports", json::array()}, {"ztests", json::array()}, {"saturation", to_json(sat)}};
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    for (const auto& t : tests) j["ztests"].push_back(to_json(t));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << format_report(reports, tests, sat);
  }
  return kOk;
}

int cmd_parse(const Common& opts, const std::string& input, const std::string& file) {
  ParserContext ctx = opts.context();
  std::string text = file.empty() ? input : read_file(file);
  ParseResult r = parse_requirement(text, ctx);
  if (opts.json_out) {
    json j = to_json(r);
    j["cause"] = r.representable ? json() : json(to_string(classify_failure(r, ctx)));
    std::cout << j.dump(2) << "\n";
  } else if (r.representable) {
    std::cout << to_json(*r.requirement, false).dump(2) << "\n";
  } else {
    for (const auto& d : r.diagnostics) {
      std::cout << d.span.line << ":" << d.span.column << ": " << to_string(d.severity) << ": " << d.message << "\n";
    }
    std::cout << "not representable (" << to_string(classify_failure(r, ctx)) << ")\n";
  }
  return r.representable ? kOk : kFindings;
}

int cmd_lexicon(const Common& opts, const std::string& lookup) {
  Lexicon lex = opts.lexicon_path.empty() ? default_lexicon() : load_lexicon_file(opts.lexicon_path);
  if (!lookup.empty()) {
    auto hits = lookup_verb(lex, lookup);
    for (const auto& h : hits) std::cout << h.code_id << " (" << h.lemma << ")\n";
    return hits.empty() ? kFindings : kOk;
  }
  if (opts.json_out) {
    std::cout << to_json(lex).dump(2) << "\n";
    return kOk;
  }
  for (const auto& [id, code] : lex.codes()) {
    std::cout << id << " [" << to_string(code.origin) << "]:";
    for (const auto& m : code.members) std::cout << " " << m.lemma;
    std::cout << "\n";
  }
  std::cout << lex.size() << " codes\n";
  return kOk;
}

int cmd_serve(const Common& opts, const std::string& config_path, const std::string& bind) {
  ServiceConfig config;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RIMAY_CONFIG")) path = env;
  }
  if (!path.empty()) config = load_config(path);
  if (!bind.empty()) {
    ServiceConfig b = config_from_json(json{{"bind_address", bind}});
    config.host = b.host;
    config.port = b.port;
  }
  if (!opts.model_path.empty()) config.model_path = opts.model_path;
  if (!opts.lexicon_path.empty()) config.lexicon_path = opts.lexicon_path;
  serve(config);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rimay requirements toolkit"};
  app.require_subcommand(1);
  Common opts;
  app.add_option("--lexicon", opts.lexicon_path, "Lexicon file (default: built-in)");
  app.add_option("--model", opts.model_path, "Domain model file");
  app.add_flag("--json", opts.json_out, "Machine-readable output");

  std::vector<std::string> check_paths;
  auto* check = app.add_subcommand("check", "Check requirements documents");
  check->add_option("files", check_paths, "Requirements documents")->required();

  std::vector<std::string> stats_paths;
  double alpha = 0.05;
  auto* stats = app.add_subcommand("stats", "Representability report and z-tests");
  stats->add_option("files", stats_paths, "Record files or requirements documents")->required();
  stats->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));

  std::string text, text_file;
  auto* parse = app.add_subcommand("parse", "Parse one requirement");
  parse->add_option("text", text, "Requirement text");
  parse->add_option("--file", text_file, "Read the requirement from a file");

  std::string lookup;
  auto* lexicon = app.add_subcommand("lexicon", "List verb codes");
  lexicon->add_option("--lookup", lookup, "Show the codes of one verb form");

  std::string config_path, bind;
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  srv->add_option("--config", config_path, "Service config (default: $RIMAY_CONFIG)");
  srv->add_option("--bind", bind, "host:port");

  for (auto* sub : {check, stats, parse, lexicon, srv}) {
    sub->add_option("--lexicon", opts.lexicon_path, "Lexicon file (default: built-in)");
    sub->add_option("--model", opts.model_path, "Domain model file");
    sub->add_flag("--json", opts.json_out, "Machine-readable output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(opts, check_paths);
    if (*stats) return cmd_stats(opts, stats_paths, alpha);
    if (*parse) {
      if (text.empty() && text_file.empty()) {
        std::cerr << "rimay parse: give the requirement text or --file\n";
        return kUsage;
      }
      return cmd_parse(opts, text, text_file);
    }
    if (*lexicon) return cmd_lexicon(opts, lookup);
    if (*srv) return cmd_serve(opts, config_path, bind);
  } catch (const Error& e) {
    std::cerr << "rimay: " << e.what();
    if (e.line()) std::cerr << " (line " << *e.line() << ")";
    if (!e.details().empty()) {
      std::cerr << ":";
      for (const auto& d : e.details()) std::cerr << " " << d;
    }
    std::cerr << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "rimay: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
