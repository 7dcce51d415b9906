#pragma once

#include <stdexcept>
#include <string>

namespace holoforge {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDegreeMismatch,
  kThresholdExceeded,
  kBudgetExhausted,
  kParseError,
  kUndeclaredGenerator,
  kNotSubgroup,
  kNotNormal,
  kOutOfRange,
  kUnknownClaim,
  kInternal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column,
             ErrorCode code = ErrorCode::kParseError)
      : Error(code, msg + " at line " + std::to_string(line) +
                                          ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace holoforge
