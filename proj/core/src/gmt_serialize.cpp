#include <algorithm>

#include "termfuse/error.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/model.hpp"

namespace termfuse {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvariantViolation, message);
}

// Accepts well-formed UTF-8 restricted to XML 1.0 characters.
bool is_xml_text(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      len = 4;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong) return false;
    const bool allowed = cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
                         (cp >= 0xE000 && cp <= 0xFFFD) || (cp >= 0x10000 && cp <= 0x10FFFF);
    if (!allowed) return false;
    i += len;
  }
  return true;
}

void check_node(const GmtNode& node, bool is_root) {
  auto require_text = [](const std::string& s, const char* what) {
    if (!is_xml_text(s)) invalid(std::string(what) + " is not valid XML character data");
  };
  if (node.kind != NodeKind::Structure && node.id) invalid("only <struct> may carry xml:id");
  if (node.id) require_text(*node.id, "xml:id");
  if (node.kind != NodeKind::Text && node.kind != NodeKind::Bracket) {
    if (node.type.empty()) invalid("element without type attribute");
    require_text(node.type, "type attribute");
  }
  if (node.kind != NodeKind::Text && !node.text.empty()) invalid("element nodes carry no direct text");

  switch (node.kind) {
    case NodeKind::Text:
      if (!node.children.empty()) invalid("text span with children");
      require_text(node.text, "text");
      return;
    case NodeKind::Structure:
      if (!parse_level(node.type)) invalid("struct type '" + node.type + "' is not a meta-model level");
      if (is_root && node.type != level_name(Level::Collection)) {
        invalid("root must be a terminologicalDataCollection struct");
      }
      for (const auto& c : node.children) {
        if (c.kind == NodeKind::Text || c.kind == NodeKind::Annotation) {
          invalid("struct may only contain struct, feat and brack");
        }
      }
      break;
    case NodeKind::Bracket:
      if (node.children.empty() || node.children.front().kind != NodeKind::Feature) {
        invalid("a bracket must start with a feature");
      }
      for (const auto& c : node.children) {
        if (c.kind != NodeKind::Feature && c.kind != NodeKind::Bracket) {
          invalid("bracket may only contain feat and brack");
        }
      }
      break;
    case NodeKind::Feature:
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& c = node.children[i];
        if (c.kind != NodeKind::Text && c.kind != NodeKind::Annotation) {
          invalid("feat may only contain text and annot");
        }
        if (c.kind == NodeKind::Text &&
            (c.text.empty() || (i > 0 && node.children[i - 1].kind == NodeKind::Text))) {
          invalid("text spans must be non-empty and not adjacent");
        }
      }
      break;
    case NodeKind::Annotation:
      if (node.children.size() > 1) invalid("annot holds a single text span");
      for (const auto& c : node.children) {
        if (c.kind != NodeKind::Text) invalid("annot may only contain text");
        if (c.text.empty()) invalid("text spans must be non-empty");
      }
      break;
  }
  if (is_root && node.kind != NodeKind::Structure) invalid("root must be a struct");
  for (const auto& c : node.children) check_node(c, false);
}

void escape_text(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

void escape_attr(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

void open_tag(std::string& out, const GmtNode& node, std::string_view name) {
  out += '<';
  out += name;
  if (node.kind != NodeKind::Bracket) {
    out += " type=\"";
    escape_attr(out, node.type);
    out += '"';
  }
  if (node.id) {
    out += " xml:id=\"";
    escape_attr(out, *node.id);
    out += '"';
  }
}

void write_inline(std::string& out, const GmtNode& node, std::string_view name) {
  open_tag(out, node, name);
  if (node.children.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const auto& c : node.children) {
    if (c.kind == NodeKind::Text) {
      escape_text(out, c.text);
    } else {
      write_inline(out, c, "annot");
    }
  }
  out += "</";
  out += name;
  out += '>';
}

void write_block(std::string& out, const GmtNode& node, std::size_t depth) {
  const std::string indent(depth * 2, ' ');
  out += indent;
  if (node.kind == NodeKind::Feature) {
    write_inline(out, node, "feat");
    out += '\n';
    return;
  }
  const std::string_view name = node.kind == NodeKind::Structure ? "struct" : "brack";
  open_tag(out, node, name);
  if (node.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  if (node.kind == NodeKind::Structure) {
    for (auto kind : {NodeKind::Feature, NodeKind::Bracket, NodeKind::Structure}) {
      for (const auto& c : node.children) {
        if (c.kind == kind) write_block(out, c, depth + 1);
      }
    }
  } else {
    for (const auto& c : node.children) write_block(out, c, depth + 1);
  }
  out += indent;
  out += "</";
  out += name;
  out += ">\n";
}

const GmtNode* find_id(const GmtNode& node, std::string_view id, std::size_t& hits) {
  const GmtNode* found = nullptr;
  if (node.id && *node.id == id) {
    ++hits;
    found = &node;
  }
  for (const auto& c : node.children) {
    if (const auto* f = find_id(c, id, hits); f && !found) found = f;
  }
  return found;
}

bool path_to(const GmtNode& node, std::string_view id, Pointer::ChildSequence& path) {
  std::size_t position = 0;
  for (const auto& c : node.children) {
    if (!c.is_element()) continue;
    ++position;
    path.push_back(position);
    if ((c.id && *c.id == id) || path_to(c, id, path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

void check_gmt(const GmtNode& root) { check_node(root, true); }

std::string serialize_gmt(const GmtNode& root) {
  check_gmt(root);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_block(out, root, 0);
  return out;
}

const GmtNode& resolve_pointer(const GmtNode& root, const Pointer& pointer) {
  if (pointer.is_shorthand()) {
    std::size_t hits = 0;
    const GmtNode* found = find_id(root, pointer.id(), hits);
    if (!found) throw Error(ErrorKind::NotFound, "no node with xml:id '" + pointer.id() + "'");
    if (hits > 1) throw Error(ErrorKind::AmbiguousId, "xml:id '" + pointer.id() + "' is not unique");
    return *found;
  }
  const GmtNode* node = &root;
  for (auto step : pointer.steps()) {
    std::size_t position = 0;
    const GmtNode* next = nullptr;
    for (const auto& c : node->children) {
      if (c.is_element() && ++position == step) {
        next = &c;
        break;
      }
    }
    if (!next) throw Error(ErrorKind::NotFound, "child sequence " + format_pointer(pointer) + " leaves the tree");
    node = next;
  }
  return *node;
}

Pointer::ChildSequence child_sequence_of(const GmtNode& root, std::string_view id) {
  Pointer::ChildSequence path;
  if (!path_to(root, id, path)) {
    throw Error(ErrorKind::NotFound, "no element with xml:id '" + std::string(id) + "' below the root");
  }
  return path;
}

}  // namespace termfuse
