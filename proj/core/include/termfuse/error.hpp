#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace termfuse {

enum class ErrorKind {
  DuplicateId,
  InvariantViolation,
  XmlError,
  DialectError,
  LevelError,
  MappingError,
  NotFound,
  AmbiguousId,
  SyntaxError,
  DuplicateCategory,
  BadPicklist,
  DuplicateNativeId,
  DanglingReference,
  IoError,
  RegistryClash,
  UnknownSource,
  NoTermsInLanguages,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library. `line` is 1-based and only set for
// errors tied to a position in a text input (TSF, DCS, mapping files, XML).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
  std::string message_;
};

}  // namespace termfuse
