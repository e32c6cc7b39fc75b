#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rimay/parser.hpp"

namespace httplib {
class Server;
}

namespace rimay {

enum class LogLevel { error, warn, info, debug };

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string lexicon_path;  // empty: built-in lexicon
  std::string model_path;
  std::optional<std::string> cors_allowed_origin;
  LogLevel log_level = LogLevel::info;
};

/// Reads {"bind_address": "host:port", "lexicon_path", "model_path",
/// "cors_allowed_origin", "log_level"}. Throws Error(format/validation).
ServiceConfig load_config(const std::string& path);
ServiceConfig config_from_json(const nlohmann::json& j);
void validate(const ServiceConfig& config);

enum class ApiErrorCode { bad_request, not_found, conflict, internal };

const char* to_string(ApiErrorCode code);

struct ApiError {
  ApiErrorCode code = ApiErrorCode::internal;
  std::string message;
  nlohmann::json details;  // null when absent

  nlohmann::json to_json() const;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON text
};

/// Endpoint logic independent of the HTTP transport. Reads go through
/// immutable snapshots; model and lexicon writes are serialized.
class Service {
 public:
  explicit Service(ServiceConfig config);

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

  std::shared_ptr<const ParserContext> snapshot() const;
  const ServiceConfig& config() const noexcept { return config_; }

  /// Registers every endpoint (and CORS handling) on `server`.
  void mount(httplib::Server& server);

 private:
  nlohmann::json route(const std::string& method, const std::string& path, const nlohmann::json& body);
  nlohmann::json declare(const nlohmann::json& body);
  nlohmann::json merge_lexicon(const nlohmann::json& body);
  nlohmann::json stats_report(const nlohmann::json& body, const ParserContext& ctx);

  ServiceConfig config_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const ParserContext> snapshot_;
  std::mutex writer_mutex_;
};

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Blocks until the server stops. Throws Error(io) if the address cannot be bound.
void serve(const ServiceConfig& config);

}  // namespace rimay
