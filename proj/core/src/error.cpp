#include "termfuse/error.hpp"

namespace termfuse {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::XmlError: return "XmlError";
    case ErrorKind::DialectError: return "DialectError";
    case ErrorKind::LevelError: return "LevelError";
    case ErrorKind::MappingError: return "MappingError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::AmbiguousId: return "AmbiguousId";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateCategory: return "DuplicateCategory";
    case ErrorKind::BadPicklist: return "BadPicklist";
    case ErrorKind::DuplicateNativeId: return "DuplicateNativeId";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::RegistryClash: return "RegistryClash";
    case ErrorKind::UnknownSource: return "UnknownSource";
    case ErrorKind::NoTermsInLanguages: return "NoTermsInLanguages";
  }
  return "Error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, std::size_t line) {
  std::string out{to_string(kind)};
  out += ": ";
  if (line != 0) {
    out += "line " + std::to_string(line) + ": ";
  }
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(compose(kind, message, line)),
      kind_(kind),
      line_(line),
      message_(message) {}

}  // namespace termfuse
