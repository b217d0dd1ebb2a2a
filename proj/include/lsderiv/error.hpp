#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lsderiv {

enum class ErrorCode {
  InvalidArgument,
  DegreeTooHigh,
  DegenerateWindow,
  WindowTooSmall,
  WindowTooLarge,
  SeriesTooShort,
  EmptyDefinedRange,
  SvdFailure,
  InvalidSpec,
  ParseError,
  DuplicateTimestamp,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::EmptyDefinedRange: return "EmptyDefinedRange";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// CSV ingestion failure pinned to a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lsderiv
