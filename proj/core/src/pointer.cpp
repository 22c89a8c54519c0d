#include "termfuse/pointer.hpp"

#include <charconv>

#include "termfuse/error.hpp"

namespace termfuse {

Pointer Pointer::shorthand(std::string id, std::optional<std::string> file) {
  return Pointer{std::move(file), std::move(id)};
}

Pointer Pointer::child_sequence(ChildSequence steps, std::optional<std::string> file) {
  if (steps.empty()) {
    throw Error(ErrorKind::InvariantViolation, "child sequence must not be empty");
  }
  for (auto step : steps) {
    if (step == 0) {
      throw Error(ErrorKind::InvariantViolation, "child sequence steps are 1-based");
    }
  }
  return Pointer{std::move(file), std::move(steps)};
}

std::string format_pointer(const Pointer& pointer) {
  std::string out = pointer.file.value_or("");
  out += '#';
  if (pointer.is_shorthand()) {
    out += pointer.id();
  } else {
    out += "element(/1";
    for (auto step : pointer.steps()) {
      out += '/';
      out += std::to_string(step);
    }
    out += ')';
  }
  return out;
}

Pointer parse_pointer(std::string_view text) {
  auto hash = text.find('#');
  if (hash == std::string_view::npos) {
    throw Error(ErrorKind::SyntaxError, "pointer '" + std::string(text) + "' lacks '#'");
  }
  std::optional<std::string> file;
  if (hash > 0) {
    file = std::string(text.substr(0, hash));
  }
  auto fragment = text.substr(hash + 1);
  if (fragment.empty()) {
    throw Error(ErrorKind::SyntaxError, "pointer '" + std::string(text) + "' has empty fragment");
  }

  constexpr std::string_view kScheme = "element(";
  if (!fragment.starts_with(kScheme)) {
    if (fragment.find_first_of("()/ ") != std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "unsupported pointer scheme in '" + std::string(text) + "'");
    }
    return Pointer::shorthand(std::string(fragment), std::move(file));
  }
  if (!fragment.ends_with(")")) {
    throw Error(ErrorKind::SyntaxError, "unterminated element() in '" + std::string(text) + "'");
  }
  auto body = fragment.substr(kScheme.size(), fragment.size() - kScheme.size() - 1);
  Pointer::ChildSequence steps;
  bool root_seen = false;
  while (!body.empty()) {
    if (body.front() != '/') {
      throw Error(ErrorKind::SyntaxError, "element() steps must start with '/' in '" + std::string(text) + "'");
    }
    body.remove_prefix(1);
    auto end = body.find('/');
    auto token = body.substr(0, end);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
      throw Error(ErrorKind::SyntaxError, "bad element() step '" + std::string(token) + "'");
    }
    if (!root_seen) {
      if (value != 1) {
        throw Error(ErrorKind::SyntaxError, "element() must start at the root step /1");
      }
      root_seen = true;
    } else {
      steps.push_back(value);
    }
    body = end == std::string_view::npos ? std::string_view{} : body.substr(end);
  }
  if (steps.empty()) {
    throw Error(ErrorKind::SyntaxError, "element() pointer must address a node below the root");
  }
  return Pointer::child_sequence(std::move(steps), std::move(file));
}

}  // namespace termfuse
