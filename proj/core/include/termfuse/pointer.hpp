#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace termfuse {

// Reference into a GMT document: either a shorthand xml:id or a sequence of
// 1-based element-child steps starting below the document root.
//
// Text form: `[file]#<id>` or `[file]#element(/1/<step>/<step>...)`, where the
// leading `/1` of the element() scheme addresses the root itself.
struct Pointer {
  using ChildSequence = std::vector<std::size_t>;

  std::optional<std::string> file;
  std::variant<std::string, ChildSequence> form;

  static Pointer shorthand(std::string id, std::optional<std::string> file = std::nullopt);
  static Pointer child_sequence(ChildSequence steps,
                                std::optional<std::string> file = std::nullopt);

  bool is_shorthand() const noexcept { return std::holds_alternative<std::string>(form); }
  const std::string& id() const { return std::get<std::string>(form); }
  const ChildSequence& steps() const { return std::get<ChildSequence>(form); }

  bool operator==(const Pointer&) const = default;
};

std::string format_pointer(const Pointer& pointer);

// Throws Error{SyntaxError} on malformed text, empty sequences or zero steps.
Pointer parse_pointer(std::string_view text);

}  // namespace termfuse
