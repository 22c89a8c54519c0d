#pragma once

// GMT: the canonical XML instantiation of the meta-model. Four elements:
//   <struct type=".." xml:id="..">  structural level (six-level vocabulary)
//   <feat type="..">                basic information unit
//   <brack>                         compound unit, first child is a <feat>
//   <annot type="..">               typed span inside a <feat>
// Presentational <b> inside feat/annot is stripped on parse.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termfuse/pointer.hpp"

namespace termfuse {

enum class NodeKind { Structure, Feature, Bracket, Annotation, Text };

struct GmtNode {
  NodeKind kind = NodeKind::Text;
  std::string type;               // struct/feat/annot @type
  std::optional<std::string> id;  // struct @xml:id
  std::string text;               // Text spans only
  std::vector<GmtNode> children;

  static GmtNode structure(std::string type, std::optional<std::string> id = std::nullopt);
  static GmtNode feature(std::string type, std::string text = {});
  static GmtNode bracket();
  static GmtNode annotation(std::string type, std::string text = {});
  static GmtNode text_span(std::string text);

  bool is_element() const noexcept { return kind != NodeKind::Text; }
  // Concatenated character data of a feature or annotation.
  std::string flat_text() const;

  bool operator==(const GmtNode&) const = default;
};

// Parses a GMT document. Struct children are stored in canonical order
// (feats, bracks, structs; document order within each group).
// Throws Error{XmlError, DialectError, LevelError}.
GmtNode parse_gmt(std::string_view document);

// Canonical form: XML declaration, two-space indentation, feat content
// inline. Throws Error{InvariantViolation} if the tree breaks the dialect.
std::string serialize_gmt(const GmtNode& root);

// Throws Error{InvariantViolation} describing the first dialect breach.
void check_gmt(const GmtNode& root);

// Throws Error{NotFound} or Error{AmbiguousId}. The pointer's file part is
// ignored: callers pick the document.
const GmtNode& resolve_pointer(const GmtNode& root, const Pointer& pointer);

// Element-child path from the root to the node carrying `id`.
// Throws Error{NotFound}.
Pointer::ChildSequence child_sequence_of(const GmtNode& root, std::string_view id);

}  // namespace termfuse
