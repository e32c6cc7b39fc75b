#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rimay {

enum class ErrorCode {
  format,
  conflict,
  validation,
  unresolved_class,
  usage,
  degenerate_input,
  incomplete_annotation,
  io,
};

const char* to_string(ErrorCode code);

/// Base error for every failure surfaced by the library. `line` is set for
/// document format errors; `details` carries offending ids where relevant.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line = std::nullopt,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), line_(line), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::vector<std::string> details_;
};

}  // namespace rimay
