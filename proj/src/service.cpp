#include "rimay/service.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <httplib.h>

#include "rimay/analytics.hpp"
#include "rimay/assist.hpp"
#include "rimay/document.hpp"
#include "rimay/error.hpp"
#include "rimay/lexicon.hpp"
#include "rimay/model.hpp"

namespace rimay {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  ApiError error;
};

[[noreturn]] void bad_request(const std::string& message, json details = nullptr) {
  throw HttpError{400, ApiError{ApiErrorCode::bad_request, message, std::move(details)}};
}

const json& field(const json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) bad_request(std::string("missing field '") + name + "'");
  return body.at(name);
}

std::string string_field(const json& body, const char* name) {
  const json& v = field(body, name);
  if (!v.is_string()) bad_request(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::size_t offset_field(const json& body) {
  const json& v = field(body, "offset");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    bad_request("field 'offset' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::optional<Fragment> fragment_from(const std::string& s) {
  static const std::map<std::string, Fragment> kinds{
      {"requirement", Fragment::requirement}, {"condition", Fragment::condition},
      {"trigger", Fragment::trigger},         {"action_phrase", Fragment::action_phrase},
      {"scope", Fragment::scope},             {"response", Fragment::response}};
  auto it = kinds.find(s);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

json fragment_json(const FragmentResult& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  json ast = std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return to_json(n);
        }
      },
      r.node);
  return json{{"representable", r.representable}, {"diagnostics", diags}, {"ast", ast}};
}

HttpError from_library(const Error& e) {
  json details{{"kind", to_string(e.code())}};
  if (!e.details().empty()) details["ids"] = e.details();
  if (e.line()) details["line"] = *e.line();
  switch (e.code()) {
    case ErrorCode::conflict: return {409, {ApiErrorCode::conflict, e.what(), details}};
    case ErrorCode::unresolved_class: return {400, {ApiErrorCode::conflict, e.what(), details}};
    case ErrorCode::io: return {500, {ApiErrorCode::internal, e.what(), details}};
    default: return {400, {ApiErrorCode::bad_request, e.what(), details}};
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string model_text(const SymbolTable& table) { return export_model(table).dump(2) + "\n"; }

}  // namespace

const char* to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::bad_request: return "bad_request";
    case ApiErrorCode::not_found: return "not_found";
    case ApiErrorCode::conflict: return "conflict";
    case ApiErrorCode::internal: return "internal";
  }
  return "internal";
}

json ApiError::to_json() const {
  return json{{"error", {{"code", rimay::to_string(code)}, {"message", message}, {"details", details}}}};
}

ServiceConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::format, "config must be an object");
  ServiceConfig c;
  if (j.contains("bind_address")) {
    std::string addr = j.at("bind_address").get<std::string>();
    auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::validation, "bind_address must be host:port");
    c.host = addr.substr(0, colon);
    try {
      std::size_t used = 0;
      c.port = std::stoi(addr.substr(colon + 1), &used);
      if (used != addr.size() - colon - 1) throw std::invalid_argument("port");
    } catch (const std::exception&) {
      throw Error(ErrorCode::validation, "bind_address port is not a number");
    }
  }
  c.lexicon_path = j.value("lexicon_path", std::string());
  c.model_path = j.value("model_path", std::string());
  if (j.contains("cors_allowed_origin") && j.at("cors_allowed_origin").is_string()) {
    c.cors_allowed_origin = j.at("cors_allowed_origin").get<std::string>();
  }
  std::string level = j.value("log_level", std::string("info"));
  static const std::map<std::string, LogLevel> levels{
      {"error", LogLevel::error}, {"warn", LogLevel::warn}, {"info", LogLevel::info}, {"debug", LogLevel::debug}};
  auto it = levels.find(level);
  if (it == levels.end()) throw Error(ErrorCode::validation, "unknown log_level '" + level + "'");
  c.log_level = it->second;
  return c;
}

ServiceConfig load_config(const std::string& path) {
  try {
    return config_from_json(json::parse(read_text(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::format, "config '" + path + "': " + e.what());
  }
}

void validate(const ServiceConfig& c) {
  if (c.port < 1 || c.port > 65535) throw Error(ErrorCode::validation, "port must lie in [1, 65535]");
  if (c.model_path.empty()) throw Error(ErrorCode::validation, "model_path is required");
  if (!std::filesystem::exists(c.model_path)) {
    throw Error(ErrorCode::io, "model file '" + c.model_path + "' does not exist");
  }
  if (!c.lexicon_path.empty() && !std::filesystem::exists(c.lexicon_path)) {
    throw Error(ErrorCode::io, "lexicon file '" + c.lexicon_path + "' does not exist");
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::io, "cannot replace '" + path + "': " + ec.message());
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  validate(config_);
  Lexicon lex = config_.lexicon_path.empty() ? default_lexicon() : load_lexicon_file(config_.lexicon_path);
  SymbolTable table = load_model_file(config_.model_path);
  snapshot_ = std::make_shared<const ParserContext>(std::move(lex), std::move(table));
}

std::shared_ptr<const ParserContext> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

ApiResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    json parsed;
    if (method == "POST") {
      try {
        parsed = body.empty() ? json::object() : json::parse(body);
      } catch (const json::parse_error& e) {
        bad_request("request body is not valid JSON", json{{"parse_error", e.what()}});
      }
    }
    return ApiResponse{200, route(method, path, parsed).dump()};
  } catch (const HttpError& e) {
    return ApiResponse{e.status, e.error.to_json().dump()};
  } catch (const Error& e) {
    HttpError h = from_library(e);
    return ApiResponse{h.status, h.error.to_json().dump()};
  } catch (const json::exception& e) {
    return ApiResponse{400, ApiError{ApiErrorCode::bad_request, e.what(), nullptr}.to_json().dump()};
  } catch (const std::exception& e) {
    return ApiResponse{500, ApiError{ApiErrorCode::internal, e.what(), nullptr}.to_json().dump()};
  }
}

json Service::route(const std::string& method, const std::string& path, const json& body) {
  auto ctx = snapshot();
  if (method == "GET") {
    if (path == "/health") {
      return json{{"status", "ok"},
                  {"lexicon_codes", ctx->lexicon->size()},
                  {"actors", ctx->symbols->actors.size()},
                  {"classes", ctx->symbols->classes.size()}};
    }
    if (path == "/lexicon") return to_json(*ctx->lexicon);
    if (path == "/model") return export_model(*ctx->symbols);
  } else if (method == "POST") {
    if (path == "/parse") {
      ParserContext local = *ctx;
      if (body.contains("max_errors")) local.options.max_errors = body.at("max_errors").get<int>();
      if (body.contains("recovery")) local.options.recovery = body.at("recovery").get<bool>();
      std::string text = string_field(body, "text");
      std::string kind = body.value("fragment", std::string("requirement"));
      auto frag = fragment_from(kind);
      if (!frag) bad_request("unknown fragment kind '" + kind + "'");
      if (*frag != Fragment::requirement) return fragment_json(parse_fragment(text, *frag, local));
      ParseResult r = parse_requirement(text, local);
      json j = to_json(r);
      j["cause"] = r.representable ? json() : json(to_string(classify_failure(r, local)));
      return j;
    }
    if (path == "/parse-document") {
      std::string srs_id = body.value("srs_id", std::string("SRS"));
      std::vector<RequirementRecord> records;
      if (body.contains("text")) {
        records = parse_document(string_field(body, "text"), *ctx);
      } else if (body.contains("records")) {
        records = parse_document_json(body.at("records"), *ctx);
      } else {
        bad_request("expected 'text' or 'records'");
      }
      return records_to_json(srs_id, records, *ctx);
    }
    if (path == "/complete") {
      std::string text = string_field(body, "text");
      std::size_t offset = offset_field(body);
      if (offset > text.size()) bad_request("offset beyond end of text", json{{"length", text.size()}});
      json items = json::array();
      for (const auto& item : complete(text, offset, *ctx)) items.push_back(to_json(item));
      return items;
    }
    if (path == "/hover") {
      std::string text = string_field(body, "text");
      std::size_t offset = offset_field(body);
      auto h = hover(text, offset, *ctx);
      return json{{"contents", h ? json(*h) : json()}};
    }
    if (path == "/lexicon/merge") return merge_lexicon(body);
    if (path == "/model/declare") return declare(body);
    if (path == "/stats/report") return stats_report(body, *ctx);
    if (path == "/stats/ztest") {
      ZTestInput in;
      for (auto [name, slot] : {std::pair{"n1", &in.n1}, {"x1", &in.x1}, {"n2", &in.n2}, {"x2", &in.x2}}) {
        const json& v = field(body, name);
        if (!v.is_number_integer()) bad_request(std::string("field '") + name + "' must be an integer");
        *slot = v.get<long>();
      }
      return to_json(ztest(in, body.value("alpha", 0.05)));
    }
  }
  throw HttpError{404, ApiError{ApiErrorCode::not_found, "no endpoint " + method + " " + path, nullptr}};
}

json Service::declare(const json& body) {
  std::string kind_name = string_field(body, "kind");
  auto kind = symbol_kind_from_string(kind_name);
  if (!kind) bad_request("unknown symbol kind '" + kind_name + "'");
  std::string name = string_field(body, "name");
  DeclDetail detail;
  if (*kind == SymbolKind::instance) {
    detail = string_field(body, "class");
  } else if (*kind == SymbolKind::class_) {
    std::set<std::string> props;
    if (body.contains("properties")) props = body.at("properties").get<std::set<std::string>>();
    detail = std::move(props);
  }

  std::lock_guard writer(writer_mutex_);
  auto current = snapshot();
  SymbolTable next = rimay::declare(*current->symbols, *kind, name, detail);
  if (!(next == *current->symbols)) {
    write_file_atomic(config_.model_path, model_text(next));
    auto updated = std::make_shared<const ParserContext>(current->lexicon,
                                                         std::make_shared<const SymbolTable>(std::move(next)),
                                                         current->options);
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = updated;
  }
  return export_model(*snapshot()->symbols);
}

json Service::merge_lexicon(const json& body) {
  Lexicon overlay = load_lexicon(body);
  std::lock_guard writer(writer_mutex_);
  auto current = snapshot();
  auto merged = std::make_shared<const Lexicon>(merge_lexicons(*current->lexicon, overlay));
  auto updated = std::make_shared<const ParserContext>(merged, current->symbols, current->options);
  {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = updated;
  }
  return json{{"codes", merged->size()}};
}

json Service::stats_report(const json& body, const ParserContext& ctx) {
  const json& sources = field(body, "sources");
  if (!sources.is_array() || sources.empty()) bad_request("'sources' must be a non-empty array");
  double alpha = body.value("alpha", 0.05);
  std::vector<CorpusReport> reports;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    reports.push_back(report_from_json(sources[i], "SRS" + std::to_string(i + 1), ctx));
  }
  std::vector<PairwiseTest> tests;
  if (reports.size() > 1) tests = pairwise_ztests(reports, alpha);
  SaturationStatus sat = saturation(reports);
  json j;
  j["reports"] = json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  j["ztests"] = json::array();
  for (const auto& t : tests) j["ztests"].push_back(to_json(t));
  j["saturation"] = to_json(sat);
  j["text"] = format_report(reports, tests, sat);
  return j;
}

void Service::mount(httplib::Server& server) {
  auto cors = config_.cors_allowed_origin;
  auto dispatch = [this, cors](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    if (cors) res.set_header("Access-Control-Allow-Origin", *cors);
    res.set_content(r.body, "application/json");
  };
  for (const char* p : {"/health", "/lexicon", "/model"}) server.Get(p, dispatch);
  for (const char* p : {"/parse", "/parse-document", "/complete", "/hover", "/lexicon/merge", "/model/declare",
                        "/stats/report", "/stats/ztest"}) {
    server.Post(p, dispatch);
  }
  server.Options(".*", [cors](const httplib::Request&, httplib::Response& res) {
    if (cors) {
      res.set_header("Access-Control-Allow-Origin", *cors);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
    res.status = 204;
  });
  server.set_error_handler([cors](const httplib::Request& req, httplib::Response& res) {
    if (res.status != 404) return;
    if (cors) res.set_header("Access-Control-Allow-Origin", *cors);
    res.set_content(ApiError{ApiErrorCode::not_found, "no endpoint " + req.method + " " + req.path, nullptr}
                        .to_json()
                        .dump(),
                    "application/json");
  });
  if (config_.log_level >= LogLevel::info) {
    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
      std::cerr << req.method << " " << req.path << " " << res.status << "\n";
    });
  }
}

void serve(const ServiceConfig& config) {
  Service service(config);
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(config.host, config.port)) {
    throw Error(ErrorCode::io, "cannot bind " + config.host + ":" + std::to_string(config.port));
  }
  if (config.log_level >= LogLevel::info) {
    std::cerr << "rimay: listening on " << config.host << ":" << config.port << "\n";
  }
  server.listen_after_bind();
}

}  // namespace rimay
