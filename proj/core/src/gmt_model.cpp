#include "termfuse/gmt_model.hpp"

#include <algorithm>

#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"

namespace termfuse {

namespace {

namespace cat = category;

[[noreturn]] void mapping_error(const std::string& message) {
  throw Error(ErrorKind::MappingError, message);
}

bool is_struct(const GmtNode& n, Level level) {
  return n.kind == NodeKind::Structure && n.type == level_name(level);
}

// ---- tree -> model ----------------------------------------------------

Feature read_plain(const GmtNode& feat) {
  Feature f;
  f.category = feat.type;
  for (const auto& c : feat.children) {
    if (c.kind == NodeKind::Text) {
      f.value += c.text;
    } else {
      Annotation a{c.type, f.value.size(), 0};
      f.value += c.flat_text();
      a.end = f.value.size();
      f.annotations.push_back(std::move(a));
    }
  }
  return f;
}

std::string feat_value(const GmtNode& feat) {
  if (feat.kind != NodeKind::Feature) mapping_error("expected a <feat>");
  return feat.flat_text();
}

ProvenanceBlock read_provenance(const GmtNode& brack) {
  ProvenanceBlock p;
  p.institution = feat_value(brack.children.front());
  bool has_db = false;
  for (std::size_t i = 1; i < brack.children.size(); ++i) {
    const auto& m = brack.children[i];
    if (m.kind != NodeKind::Feature) mapping_error("nested bracket inside a provenance block");
    auto once = [&](bool present) {
      if (present) mapping_error("repeated " + m.type + " in provenance block");
    };
    if (m.type == cat::kOriginatingDatabaseName) {
      once(has_db);
      has_db = true;
      p.database = m.flat_text();
    } else if (m.type == cat::kSource) {
      once(p.bibliographic_source.has_value());
      p.bibliographic_source = m.flat_text();
    } else if (m.type == cat::kLastModificationDate) {
      once(p.last_modified.has_value());
      p.last_modified = m.flat_text();
    } else if (m.type == cat::kNativePointer) {
      once(p.native_pointer.has_value());
      try {
        p.native_pointer = parse_pointer(m.flat_text());
      } catch (const Error& e) {
        mapping_error("bad nativePointer: " + e.message());
      }
    } else {
      mapping_error("unexpected '" + m.type + "' in provenance block");
    }
  }
  return p;
}

bool is_provenance(const GmtNode& brack) {
  return brack.children.front().type == cat::kOriginatingInstitution;
}

Feature read_bracketed(const GmtNode& brack) {
  Feature f = read_plain(brack.children.front());
  for (std::size_t i = 1; i < brack.children.size(); ++i) {
    const auto& m = brack.children[i];
    if (m.kind == NodeKind::Feature && m.type == cat::kSource) {
      if (f.source) mapping_error("repeated source for " + f.category);
      f.source = m.flat_text();
    } else if (m.kind == NodeKind::Bracket && is_provenance(m)) {
      f.provenance.push_back(read_provenance(m));
    } else {
      mapping_error("unexpected '" + (m.kind == NodeKind::Bracket ? std::string("brack") : m.type) +
                    "' in " + f.category + " bracket");
    }
  }
  return f;
}

// Reads the members shared by relation brackets: optional typology and one
// provenance block.
void read_relation_members(const GmtNode& brack, std::string* typology, ProvenanceBlock& provenance) {
  bool has_provenance = false;
  bool has_typology = false;
  for (std::size_t i = 1; i < brack.children.size(); ++i) {
    const auto& m = brack.children[i];
    if (m.kind == NodeKind::Feature && m.type == cat::kTypology && typology && !has_typology) {
      *typology = m.flat_text();
      has_typology = true;
    } else if (m.kind == NodeKind::Bracket && is_provenance(m) && !has_provenance) {
      provenance = read_provenance(m);
      has_provenance = true;
    } else {
      mapping_error("unexpected member in " + brack.children.front().type + " relation");
    }
  }
  if (!has_provenance) mapping_error(brack.children.front().type + " relation without provenance");
  if (typology && !has_typology) mapping_error(brack.children.front().type + " relation without typology");
}

void reject_id(const GmtNode& node) {
  if (node.id) mapping_error(node.type + " cannot carry xml:id '" + *node.id + "'");
}

TermComponentSection read_component(const GmtNode& node) {
  reject_id(node);
  TermComponentSection c;
  bool has_text = false;
  for (const auto& child : node.children) {
    if (child.kind == NodeKind::Feature) {
      if (!has_text && child.type == cat::kTermComponent) {
        c.text = child.flat_text();
        has_text = true;
      } else {
        c.features.push_back(read_plain(child));
      }
    } else if (child.kind == NodeKind::Bracket) {
      c.features.push_back(read_bracketed(child));
    } else {
      mapping_error("termComponentSection cannot contain " + child.type);
    }
  }
  if (!has_text) mapping_error("termComponentSection without termComponent feature");
  return c;
}

TermSection read_term_section(const GmtNode& node) {
  TermSection ts;
  ts.id = node.id.value_or("");
  bool has_term = false;
  for (const auto& child : node.children) {
    if (child.kind == NodeKind::Feature) {
      if (!has_term && child.type == cat::kTerm) {
        ts.term = child.flat_text();
        has_term = true;
      } else {
        ts.features.push_back(read_plain(child));
      }
    } else if (child.kind == NodeKind::Bracket) {
      const auto& head = child.children.front();
      if (is_provenance(child)) {
        ts.provenance.push_back(read_provenance(child));
      } else if (head.type == cat::kDescriptorOf) {
        TermRelation r;
        r.target = head.flat_text();
        read_relation_members(child, nullptr, r.provenance);
        ts.relations.push_back(std::move(r));
      } else {
        ts.features.push_back(read_bracketed(child));
      }
    } else if (is_struct(child, Level::TermComponentSection)) {
      ts.components.push_back(read_component(child));
    } else {
      mapping_error("termSection cannot contain struct " + child.type);
    }
  }
  if (!has_term) mapping_error("termSection " + ts.id + " without term feature");
  return ts;
}

LangSection read_lang_section(const GmtNode& node) {
  reject_id(node);
  LangSection ls;
  bool has_language = false;
  for (const auto& child : node.children) {
    if (child.kind == NodeKind::Feature) {
      if (child.type == cat::kLanguageIdentifier) {
        if (has_language) mapping_error("languageSection with two languageIdentifier features");
        ls.language = child.flat_text();
        has_language = true;
      } else {
        ls.features.push_back(read_plain(child));
      }
    } else if (child.kind == NodeKind::Bracket) {
      ls.features.push_back(read_bracketed(child));
    } else if (is_struct(child, Level::TermSection)) {
      ls.term_sections.push_back(read_term_section(child));
    } else {
      mapping_error("languageSection cannot contain struct " + child.type);
    }
  }
  if (!has_language) mapping_error("languageSection without languageIdentifier");
  return ls;
}

TermEntry read_entry(const GmtNode& node) {
  TermEntry e;
  e.id = node.id.value_or("");
  for (const auto& child : node.children) {
    if (child.kind == NodeKind::Feature) {
      e.features.push_back(read_plain(child));
    } else if (child.kind == NodeKind::Bracket) {
      const auto& head = child.children.front();
      if (head.type == cat::kBroaderConcept || head.type == cat::kRelatedConcept) {
        ConceptRelation r;
        r.kind = head.type == cat::kBroaderConcept ? ConceptRelationKind::Broader
                                                   : ConceptRelationKind::Related;
        r.target = head.flat_text();
        read_relation_members(child, &r.typology, r.provenance);
        e.relations.push_back(std::move(r));
      } else {
        e.features.push_back(read_bracketed(child));
      }
    } else if (is_struct(child, Level::LanguageSection)) {
      e.lang_sections.push_back(read_lang_section(child));
    } else {
      mapping_error("terminologicalEntry cannot contain struct " + child.type);
    }
  }
  return e;
}

GlobalInfo read_global(const GmtNode& node) {
  reject_id(node);
  GlobalInfo g;
  for (const auto& child : node.children) {
    if (child.kind == NodeKind::Feature && child.type == cat::kTitle) {
      g.title = child.flat_text();
    } else if (child.kind == NodeKind::Feature && child.type == cat::kDcsName) {
      g.dcs_ref = child.flat_text();
    } else if (child.kind == NodeKind::Bracket && is_provenance(child)) {
      ResourceDescriptor r;
      r.institution = child.children.front().flat_text();
      for (std::size_t i = 1; i < child.children.size(); ++i) {
        const auto& m = child.children[i];
        if (m.kind != NodeKind::Feature) mapping_error("nested bracket in resource descriptor");
        if (m.type == cat::kOriginatingDatabaseName) {
          r.database = m.flat_text();
        } else if (m.type == cat::kSource) {
          r.citation = m.flat_text();
        } else if (m.type == cat::kNativeFile) {
          r.native_file = m.flat_text();
        } else {
          mapping_error("unexpected '" + m.type + "' in resource descriptor");
        }
      }
      g.resources.push_back(std::move(r));
    } else {
      mapping_error("unexpected " + child.type + " in globalInformation");
    }
  }
  return g;
}

// ---- model -> tree ----------------------------------------------------

GmtNode write_value(std::string category, const std::string& value,
                    const std::vector<Annotation>& annotations) {
  GmtNode feat = GmtNode::feature(std::move(category));
  std::size_t cursor = 0;
  auto text = [&](std::size_t end) {
    if (end > cursor) feat.children.push_back(GmtNode::text_span(value.substr(cursor, end - cursor)));
    cursor = std::max(cursor, end);
  };
  for (const auto& a : annotations) {
    text(a.begin);
    feat.children.push_back(GmtNode::annotation(a.type, value.substr(a.begin, a.end - a.begin)));
    cursor = a.end;
  }
  text(value.size());
  return feat;
}

GmtNode write_provenance(const ProvenanceBlock& p) {
  GmtNode b = GmtNode::bracket();
  b.children.push_back(GmtNode::feature(std::string(cat::kOriginatingInstitution), p.institution));
  if (!p.database.empty()) {
    b.children.push_back(GmtNode::feature(std::string(cat::kOriginatingDatabaseName), p.database));
  }
  if (p.bibliographic_source) {
    b.children.push_back(GmtNode::feature(std::string(cat::kSource), *p.bibliographic_source));
  }
  if (p.last_modified) {
    b.children.push_back(GmtNode::feature(std::string(cat::kLastModificationDate), *p.last_modified));
  }
  if (p.native_pointer) {
    b.children.push_back(GmtNode::feature(std::string(cat::kNativePointer), format_pointer(*p.native_pointer)));
  }
  return b;
}

GmtNode write_feature(const Feature& f) {
  GmtNode head = write_value(f.category, f.value, f.annotations);
  if (f.is_plain()) return head;
  GmtNode b = GmtNode::bracket();
  b.children.push_back(std::move(head));
  if (f.source) b.children.push_back(GmtNode::feature(std::string(cat::kSource), *f.source));
  for (const auto& p : f.provenance) b.children.push_back(write_provenance(p));
  return b;
}

void write_features(GmtNode& parent, const std::vector<Feature>& features) {
  for (const auto& f : features) {
    if (f.is_plain()) parent.children.push_back(write_feature(f));
  }
  for (const auto& f : features) {
    if (!f.is_plain()) parent.children.push_back(write_feature(f));
  }
}

GmtNode write_term_section(const TermSection& ts) {
  GmtNode node = GmtNode::structure(std::string(level_name(Level::TermSection)),
                                    ts.id.empty() ? std::nullopt : std::optional(ts.id));
  node.children.push_back(GmtNode::feature(std::string(cat::kTerm), ts.term));
  write_features(node, ts.features);
  for (const auto& p : ts.provenance) node.children.push_back(write_provenance(p));
  for (const auto& r : ts.relations) {
    GmtNode b = GmtNode::bracket();
    b.children.push_back(GmtNode::feature(std::string(cat::kDescriptorOf), r.target));
    b.children.push_back(write_provenance(r.provenance));
    node.children.push_back(std::move(b));
  }
  for (const auto& c : ts.components) {
    GmtNode cs = GmtNode::structure(std::string(level_name(Level::TermComponentSection)));
    cs.children.push_back(GmtNode::feature(std::string(cat::kTermComponent), c.text));
    write_features(cs, c.features);
    node.children.push_back(std::move(cs));
  }
  return node;
}

GmtNode write_entry(const TermEntry& e) {
  GmtNode node = GmtNode::structure(std::string(level_name(Level::Entry)),
                                    e.id.empty() ? std::nullopt : std::optional(e.id));
  write_features(node, e.features);
  for (const auto& r : e.relations) {
    GmtNode b = GmtNode::bracket();
    b.children.push_back(GmtNode::feature(std::string(category_of(r.kind)), r.target));
    b.children.push_back(GmtNode::feature(std::string(cat::kTypology), r.typology));
    b.children.push_back(write_provenance(r.provenance));
    node.children.push_back(std::move(b));
  }
  for (const auto& ls : e.lang_sections) {
    GmtNode lnode = GmtNode::structure(std::string(level_name(Level::LanguageSection)));
    lnode.children.push_back(GmtNode::feature(std::string(cat::kLanguageIdentifier), ls.language));
    write_features(lnode, ls.features);
    for (const auto& ts : ls.term_sections) lnode.children.push_back(write_term_section(ts));
    node.children.push_back(std::move(lnode));
  }
  return node;
}

GmtNode write_global(const GlobalInfo& g) {
  GmtNode node = GmtNode::structure(std::string(level_name(Level::GlobalInformation)));
  if (!g.title.empty()) node.children.push_back(GmtNode::feature(std::string(cat::kTitle), g.title));
  if (!g.dcs_ref.empty()) node.children.push_back(GmtNode::feature(std::string(cat::kDcsName), g.dcs_ref));
  for (const auto& r : g.resources) {
    GmtNode b = GmtNode::bracket();
    b.children.push_back(GmtNode::feature(std::string(cat::kOriginatingInstitution), r.institution));
    b.children.push_back(GmtNode::feature(std::string(cat::kOriginatingDatabaseName), r.database));
    if (r.citation) b.children.push_back(GmtNode::feature(std::string(cat::kSource), *r.citation));
    if (r.native_file) b.children.push_back(GmtNode::feature(std::string(cat::kNativeFile), *r.native_file));
    node.children.push_back(std::move(b));
  }
  return node;
}

}  // namespace

TermCollection to_model(const GmtNode& tree, std::string id_prefix) {
  if (!is_struct(tree, Level::Collection)) mapping_error("root is not a terminologicalDataCollection");
  reject_id(tree);
  TermCollection collection(GlobalInfo{}, std::move(id_prefix));
  bool has_global = false;
  for (const auto& child : tree.children) {
    if (is_struct(child, Level::GlobalInformation)) {
      if (has_global) mapping_error("more than one globalInformation");
      collection.mutable_global() = read_global(child);
      has_global = true;
    } else if (is_struct(child, Level::Entry)) {
      collection.add_entry(read_entry(child));
    } else {
      mapping_error("terminologicalDataCollection cannot contain " + child.type);
    }
  }
  return collection;
}

GmtNode from_model(const TermCollection& collection) {
  GmtNode root = GmtNode::structure(std::string(level_name(Level::Collection)));
  if (!collection.global().empty()) root.children.push_back(write_global(collection.global()));
  for (const auto& e : collection.entries()) root.children.push_back(write_entry(e));
  return root;
}

}  // namespace termfuse
