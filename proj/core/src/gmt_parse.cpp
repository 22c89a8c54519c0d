#include <expat.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <set>

#include "termfuse/error.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/model.hpp"

namespace termfuse {

GmtNode GmtNode::structure(std::string type, std::optional<std::string> id) {
  GmtNode n;
  n.kind = NodeKind::Structure;
  n.type = std::move(type);
  n.id = std::move(id);
  return n;
}

GmtNode GmtNode::feature(std::string type, std::string text) {
  GmtNode n;
  n.kind = NodeKind::Feature;
  n.type = std::move(type);
  if (!text.empty()) n.children.push_back(text_span(std::move(text)));
  return n;
}

GmtNode GmtNode::bracket() {
  GmtNode n;
  n.kind = NodeKind::Bracket;
  return n;
}

GmtNode GmtNode::annotation(std::string type, std::string text) {
  GmtNode n;
  n.kind = NodeKind::Annotation;
  n.type = std::move(type);
  if (!text.empty()) n.children.push_back(text_span(std::move(text)));
  return n;
}

GmtNode GmtNode::text_span(std::string text) {
  GmtNode n;
  n.kind = NodeKind::Text;
  n.text = std::move(text);
  return n;
}

std::string GmtNode::flat_text() const {
  if (kind == NodeKind::Text) return text;
  std::string out;
  for (const auto& c : children) out += c.flat_text();
  return out;
}

namespace {

struct ParserDeleter {
  void operator()(XML_Parser p) const noexcept { XML_ParserFree(p); }
};

bool is_whitespace(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

// Builds the tree from expat callbacks. Errors are captured and rethrown
// after XML_StopParser returns control.
class TreeBuilder {
 public:
  explicit TreeBuilder(XML_Parser parser) : parser_(parser) {}

  GmtNode take() {
    if (!root_) throw Error(ErrorKind::DialectError, "document has no root element");
    return std::move(*root_);
  }
  const std::optional<Error>& failure() const { return failure_; }

  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<TreeBuilder*>(self)->guard([&](TreeBuilder& b) { b.start(name, attrs); });
  }
  static void XMLCALL on_end(void* self, const XML_Char* name) {
    static_cast<TreeBuilder*>(self)->guard([&](TreeBuilder& b) { b.end(name); });
  }
  static void XMLCALL on_text(void* self, const XML_Char* s, int len) {
    static_cast<TreeBuilder*>(self)->pending_.append(s, static_cast<std::size_t>(len));
  }
  static void XMLCALL on_doctype(void* self, const XML_Char*, const XML_Char*, const XML_Char*, int) {
    static_cast<TreeBuilder*>(self)->guard([](TreeBuilder& b) {
      b.fail(ErrorKind::DialectError, "DOCTYPE declarations are not part of GMT");
    });
  }

 private:
  enum class Frame { Node, Bold };

  template <typename Fn>
  void guard(Fn&& fn) {
    if (failure_) return;
    try {
      fn(*this);
    } catch (const Error& e) {
      failure_ = e;
      XML_StopParser(parser_, XML_FALSE);
    }
  }

  [[noreturn]] void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message, XML_GetCurrentLineNumber(parser_));
  }

  GmtNode* current() { return nodes_.empty() ? nullptr : nodes_.back(); }

  bool in_text_context() {
    auto* c = current();
    return c && (c->kind == NodeKind::Feature || c->kind == NodeKind::Annotation);
  }

  void flush_text() {
    if (pending_.empty()) return;
    std::string text = std::move(pending_);
    pending_.clear();
    if (in_text_context()) {
      auto& children = current()->children;
      if (!children.empty() && children.back().kind == NodeKind::Text) {
        children.back().text += text;
      } else {
        children.push_back(GmtNode::text_span(std::move(text)));
      }
      return;
    }
    if (!is_whitespace(text)) {
      fail(ErrorKind::DialectError, "character data is only allowed inside <feat> or <annot>");
    }
  }

  void start(const XML_Char* name, const XML_Char** attrs) {
    flush_text();
    std::string_view element{name};

    if (element == "b") {
      if (!in_text_context()) fail(ErrorKind::DialectError, "<b> is only allowed inside <feat> or <annot>");
      if (attrs[0] != nullptr) fail(ErrorKind::DialectError, "<b> takes no attributes");
      frames_.push_back(Frame::Bold);
      return;
    }

    GmtNode node;
    bool wants_type = true;
    bool allows_id = false;
    if (element == "struct") {
      node.kind = NodeKind::Structure;
      allows_id = true;
    } else if (element == "feat") {
      node.kind = NodeKind::Feature;
    } else if (element == "brack") {
      node.kind = NodeKind::Bracket;
      wants_type = false;
    } else if (element == "annot") {
      node.kind = NodeKind::Annotation;
    } else {
      fail(ErrorKind::DialectError, "unknown element <" + std::string(element) + ">");
    }

    bool has_type = false;
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      std::string_view key{attrs[i]};
      if (key == "type" && wants_type) {
        node.type = attrs[i + 1];
        has_type = true;
      } else if (key == "xml:id" && allows_id) {
        node.id = attrs[i + 1];
      } else {
        fail(ErrorKind::DialectError,
             "attribute '" + std::string(key) + "' not allowed on <" + std::string(element) + ">");
      }
    }
    if (wants_type && (!has_type || node.type.empty())) {
      fail(ErrorKind::DialectError, "<" + std::string(element) + "> requires a type attribute");
    }
    if (node.kind == NodeKind::Structure && !parse_level(node.type)) {
      fail(ErrorKind::LevelError, "struct type '" + node.type + "' is not a meta-model level");
    }

    GmtNode* parent = current();
    if (!parent) {
      if (root_) fail(ErrorKind::DialectError, "multiple root elements");
      if (node.kind != NodeKind::Structure || node.type != level_name(Level::Collection)) {
        fail(ErrorKind::DialectError, "root must be <struct type=\"terminologicalDataCollection\">");
      }
      root_.emplace(std::move(node));
      nodes_.push_back(&*root_);
      frames_.push_back(Frame::Node);
      return;
    }

    switch (parent->kind) {
      case NodeKind::Structure:
        if (node.kind == NodeKind::Annotation) fail(ErrorKind::DialectError, "<annot> is only allowed inside <feat>");
        break;
      case NodeKind::Bracket:
        if (node.kind == NodeKind::Structure || node.kind == NodeKind::Annotation) {
          fail(ErrorKind::DialectError, "<brack> may only contain <feat> and <brack>");
        }
        if (parent->children.empty() && node.kind != NodeKind::Feature) {
          fail(ErrorKind::DialectError, "a <brack> must start with a <feat>");
        }
        break;
      case NodeKind::Feature:
        if (node.kind != NodeKind::Annotation) fail(ErrorKind::DialectError, "<feat> may only contain text and <annot>");
        break;
      case NodeKind::Annotation:
        fail(ErrorKind::DialectError, "<annot> may only contain text");
      case NodeKind::Text:
        break;
    }
    parent->children.push_back(std::move(node));
    nodes_.push_back(&parent->children.back());
    frames_.push_back(Frame::Node);
  }

  void end(const XML_Char*) {
    flush_text();
    const Frame frame = frames_.back();
    frames_.pop_back();
    if (frame == Frame::Bold) return;
    GmtNode* node = nodes_.back();
    if (node->kind == NodeKind::Bracket && node->children.empty()) {
      fail(ErrorKind::DialectError, "a <brack> must start with a <feat>");
    }
    if (node->kind == NodeKind::Structure) {
      std::stable_partition(node->children.begin(), node->children.end(),
                            [](const GmtNode& c) { return c.kind == NodeKind::Feature; });
      auto bracks = std::find_if(node->children.begin(), node->children.end(),
                                 [](const GmtNode& c) { return c.kind != NodeKind::Feature; });
      std::stable_partition(bracks, node->children.end(),
                            [](const GmtNode& c) { return c.kind == NodeKind::Bracket; });
    }
    nodes_.pop_back();
  }

  XML_Parser parser_;
  std::optional<GmtNode> root_;
  std::vector<GmtNode*> nodes_;
  std::vector<Frame> frames_;
  std::string pending_;
  std::optional<Error> failure_;
};

void collect_ids(const GmtNode& node, std::set<std::string, std::less<>>& ids) {
  if (node.id && !ids.insert(*node.id).second) {
    throw Error(ErrorKind::DialectError, "duplicate xml:id '" + *node.id + "'");
  }
  for (const auto& c : node.children) collect_ids(c, ids);
}

}  // namespace

GmtNode parse_gmt(std::string_view document) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser{XML_ParserCreate("UTF-8")};
  if (!parser) throw Error(ErrorKind::XmlError, "cannot allocate XML parser");

  TreeBuilder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), &TreeBuilder::on_doctype);

  const auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (builder.failure()) throw *builder.failure();
  if (status != XML_STATUS_OK) {
    throw Error(ErrorKind::XmlError, XML_ErrorString(XML_GetErrorCode(parser.get())),
                XML_GetCurrentLineNumber(parser.get()));
  }
  GmtNode root = builder.take();
  std::set<std::string, std::less<>> ids;
  collect_ids(root, ids);
  return root;
}

}  // namespace termfuse
