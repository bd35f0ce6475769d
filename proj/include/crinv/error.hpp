#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crinv {

enum class ErrorCode {
  parse_error,
  precondition,
  domain,
  no_solution,
  internal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::domain: return "domain";
    case ErrorCode::no_solution: return "no_solution";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

// Base of every error thrown by the library. The code is stable and
// machine-readable; what() is the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::parse_error,
              message + " at column " + std::to_string(position + 1)),
        position_(position) {}

  // Zero-based character offset into the input.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error(ErrorCode::precondition, message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::domain, message) {}
};

}  // namespace crinv
