#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbi {

enum class ErrorCode {
  Syntax,
  InvalidMultiplicity,
  InvalidDegree,
  InfiniteMultiplicity,
  SubsetTooLarge,
  DimOne,
  InfiniteQuotient,
  NonlinearLocus,
  NotUniformizable,
  NonIntegerResult,
  ConservationViolation,
  InvalidCovering,
  EmptyLocus,
  Precondition,
  Io,
  Schema,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Error raised by every core operation. The message names the violated
/// precondition; `code()` lets callers branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Signature text that does not match the grammar. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t column, const std::string& what)
      : Error(code, "column " + std::to_string(column) + ": " + what),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace orbi
