#include "termfuse/model.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>

#include "graph.hpp"
#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"

namespace termfuse {

namespace {

constexpr std::array<std::pair<Level, std::string_view>, 6> kLevelNames{{
    {Level::Collection, "terminologicalDataCollection"},
    {Level::GlobalInformation, "globalInformation"},
    {Level::Entry, "terminologicalEntry"},
    {Level::LanguageSection, "languageSection"},
    {Level::TermSection, "termSection"},
    {Level::TermComponentSection, "termComponentSection"},
}};

bool is_blank(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

void check_features(const std::vector<Feature>& features, const std::string& node,
                    std::vector<InvariantViolation>& out) {
  for (const auto& f : features) {
    if (f.category.empty()) {
      out.push_back({node, "feature-category", "feature without category"});
    }
    std::size_t last_end = 0;
    for (const auto& a : f.annotations) {
      if (a.begin > a.end || a.end > f.value.size()) {
        out.push_back({node, "annotation-span",
                       "annotation '" + a.type + "' on " + f.category + " exceeds value bounds"});
      } else if (a.begin < last_end) {
        out.push_back({node, "annotation-span",
                       "annotation '" + a.type + "' on " + f.category + " overlaps its predecessor"});
      } else {
        last_end = a.end;
      }
    }
    for (const auto& p : f.provenance) {
      if (p.institution.empty()) {
        out.push_back({node, "provenance-institution",
                       "provenance on " + f.category + " lacks an institution"});
      }
    }
  }
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  for (const auto& [l, name] : kLevelNames) {
    if (l == level) return name;
  }
  return {};
}

std::optional<Level> parse_level(std::string_view name) noexcept {
  for (const auto& [l, n] : kLevelNames) {
    if (n == name) return l;
  }
  return std::nullopt;
}

std::string_view category_of(ConceptRelationKind kind) noexcept {
  return kind == ConceptRelationKind::Broader ? category::kBroaderConcept
                                              : category::kRelatedConcept;
}

const Feature* TermSection::feature(std::string_view category) const noexcept {
  for (const auto& f : features) {
    if (f.category == category) return &f;
  }
  return nullptr;
}

const LangSection* TermEntry::section(std::string_view language) const noexcept {
  for (const auto& ls : lang_sections) {
    if (ls.language == language) return &ls;
  }
  return nullptr;
}

const ResourceDescriptor* GlobalInfo::find_resource(std::string_view institution,
                                                    std::string_view database) const noexcept {
  for (const auto& r : resources) {
    if (r.institution == institution && r.database == database) return &r;
  }
  return nullptr;
}

bool is_language_code(std::string_view code) noexcept {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' &&
         code[1] <= 'z';
}

std::string entry_id(std::string_view prefix, std::size_t serial) {
  std::string id{prefix};
  id += '.';
  id += std::to_string(serial);
  return id;
}

std::string term_section_id(std::string_view entry_id, std::size_t serial) {
  std::string id{entry_id};
  id += ".TS.";
  id += std::to_string(serial);
  return id;
}

void canonicalize(TermEntry& entry) {
  auto order = [](std::vector<Feature>& features) {
    std::stable_partition(features.begin(), features.end(),
                          [](const Feature& f) { return f.is_plain(); });
  };
  order(entry.features);
  for (auto& ls : entry.lang_sections) {
    order(ls.features);
    for (auto& ts : ls.term_sections) {
      order(ts.features);
      for (auto& c : ts.components) order(c.features);
    }
  }
}

std::vector<InvariantViolation> check_entry(const TermEntry& entry) {
  std::vector<InvariantViolation> out;
  const std::string& eid = entry.id;
  if (entry.lang_sections.empty()) {
    out.push_back({eid, "min-language-sections", "entry has no language section"});
  }
  check_features(entry.features, eid, out);
  for (const auto& r : entry.relations) {
    if (r.provenance.institution.empty()) {
      out.push_back({eid, "provenance-institution", "concept relation provenance lacks an institution"});
    }
  }

  std::set<std::string, std::less<>> languages;
  for (const auto& ls : entry.lang_sections) {
    const std::string node = eid + "/" + ls.language;
    if (!languages.insert(ls.language).second) {
      out.push_back({eid, "duplicate-language-section", "duplicate language section " + ls.language});
    }
    if (!is_language_code(ls.language)) {
      out.push_back({node, "language-code",
                     "language '" + ls.language + "' is not a two-letter code"});
    }
    if (ls.term_sections.empty()) {
      out.push_back({node, "min-term-sections", "language section has no term section"});
    }
    check_features(ls.features, node, out);

    for (const auto& ts : ls.term_sections) {
      const std::string tnode = ts.id.empty() ? node + "/" + ts.term : ts.id;
      if (is_blank(ts.term)) {
        out.push_back({tnode, "empty-term", "term is empty"});
      }
      for (std::size_t i = 0; i < ts.provenance.size(); ++i) {
        const auto& p = ts.provenance[i];
        if (p.institution.empty()) {
          out.push_back({tnode, "provenance-institution", "provenance lacks an institution"});
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (ts.provenance[j].same_source(p)) {
            out.push_back({tnode, "duplicate-provenance",
                           "duplicate provenance " + p.institution + "|" + p.database});
            break;
          }
        }
      }
      for (const auto& r : ts.relations) {
        if (r.provenance.institution.empty()) {
          out.push_back({tnode, "provenance-institution", "term relation provenance lacks an institution"});
        }
      }
      check_features(ts.features, tnode, out);
      for (const auto& c : ts.components) {
        if (is_blank(c.text)) {
          out.push_back({tnode, "empty-component", "term component text is empty"});
        }
        check_features(c.features, tnode, out);
      }
    }
  }
  return out;
}

TermCollection::TermCollection(GlobalInfo global, std::string id_prefix)
    : global_(std::move(global)), id_prefix_(std::move(id_prefix)) {}

TermCollection new_collection(GlobalInfo global, std::string id_prefix) {
  return TermCollection(std::move(global), std::move(id_prefix));
}

void TermCollection::ensure_mutable() const {
  if (frozen_) {
    throw Error(ErrorKind::InvariantViolation, "collection is frozen");
  }
}

GlobalInfo& TermCollection::mutable_global() {
  ensure_mutable();
  return global_;
}

std::string TermCollection::add_entry(TermEntry entry) {
  ensure_mutable();
  if (auto violations = check_entry(entry); !violations.empty()) {
    throw Error(ErrorKind::InvariantViolation,
                violations.front().node + ": " + violations.front().message);
  }

  std::set<std::string, std::less<>> local;
  auto taken = [&](std::string_view id) {
    return index_.find(id) != index_.end() || local.find(id) != local.end();
  };

  if (!entry.id.empty()) {
    if (taken(entry.id)) throw Error(ErrorKind::DuplicateId, "id '" + entry.id + "' already registered");
  } else {
    std::size_t serial = entries_.size() + 1;
    while (taken(entry_id(id_prefix_, serial))) ++serial;
    entry.id = entry_id(id_prefix_, serial);
  }
  local.insert(entry.id);

  for (const auto& ls : entry.lang_sections) {
    for (const auto& ts : ls.term_sections) {
      if (ts.id.empty()) continue;
      if (taken(ts.id)) throw Error(ErrorKind::DuplicateId, "id '" + ts.id + "' already registered");
      local.insert(ts.id);
    }
  }
  std::size_t position = 0;
  for (auto& ls : entry.lang_sections) {
    for (auto& ts : ls.term_sections) {
      ++position;
      if (!ts.id.empty()) continue;
      std::size_t serial = position;
      while (taken(term_section_id(entry.id, serial))) ++serial;
      ts.id = term_section_id(entry.id, serial);
      local.insert(ts.id);
    }
  }

  const std::size_t e = entries_.size();
  entries_.push_back(std::move(entry));
  const auto& added = entries_.back();
  index_.emplace(added.id, NodePath{e, std::nullopt, std::nullopt});
  for (std::size_t l = 0; l < added.lang_sections.size(); ++l) {
    const auto& sections = added.lang_sections[l].term_sections;
    for (std::size_t t = 0; t < sections.size(); ++t) {
      index_.emplace(sections[t].id, NodePath{e, l, t});
    }
  }
  return added.id;
}

void TermCollection::reindex() {
  std::map<std::string, NodePath, std::less<>> index;
  auto put = [&](const std::string& id, NodePath path) {
    if (id.empty()) return;
    if (!index.emplace(id, path).second) {
      throw Error(ErrorKind::DuplicateId, "id '" + id + "' registered twice");
    }
  };
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& entry = entries_[e];
    if (entry.id.empty()) {
      throw Error(ErrorKind::InvariantViolation, "entry without id at position " + std::to_string(e + 1));
    }
    put(entry.id, {e, std::nullopt, std::nullopt});
    for (std::size_t l = 0; l < entry.lang_sections.size(); ++l) {
      const auto& sections = entry.lang_sections[l].term_sections;
      for (std::size_t t = 0; t < sections.size(); ++t) put(sections[t].id, {e, l, t});
    }
  }
  index_ = std::move(index);
}

std::optional<NodePath> TermCollection::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const TermEntry* TermCollection::entry(std::string_view id) const {
  auto path = find(id);
  if (!path || path->lang) return nullptr;
  return &entries_[path->entry];
}

const TermSection* TermCollection::term_section(std::string_view id) const {
  auto path = find(id);
  if (!path || !path->term) return nullptr;
  return &at(*path);
}

const TermSection& TermCollection::at(const NodePath& path) const {
  if (!path.lang || !path.term) {
    throw Error(ErrorKind::NotFound, "path does not address a term section");
  }
  return entries_.at(path.entry).lang_sections.at(*path.lang).term_sections.at(*path.term);
}

std::vector<InvariantViolation> check_structure(const TermCollection& collection) {
  std::vector<InvariantViolation> out;
  const auto entries = collection.entries();

  std::unordered_map<std::string, std::size_t> entry_pos;
  std::unordered_map<std::string, std::size_t> ts_entry;
  std::set<std::string> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& entry = entries[e];
    if (entry.id.empty()) {
      out.push_back({"#" + std::to_string(e + 1), "entry-id", "entry has no identifier"});
    } else if (!seen.insert(entry.id).second) {
      out.push_back({entry.id, "unique-id", "identifier used more than once"});
    }
    entry_pos.emplace(entry.id, e);
    for (const auto& ls : entry.lang_sections) {
      for (const auto& ts : ls.term_sections) {
        if (ts.id.empty()) continue;
        if (!seen.insert(ts.id).second) {
          out.push_back({ts.id, "unique-id", "identifier used more than once"});
        }
        ts_entry.emplace(ts.id, e);
      }
    }
    auto local = check_entry(entry);
    out.insert(out.end(), local.begin(), local.end());
  }

  // Relations
  std::map<std::string, detail::Adjacency> broader;  // per typology
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& entry = entries[e];
    for (const auto& r : entry.relations) {
      auto it = entry_pos.find(r.target);
      if (it == entry_pos.end()) {
        out.push_back({entry.id, "relation-target",
                       std::string(category_of(r.kind)) + " target '" + r.target + "' does not resolve"});
        continue;
      }
      if (r.kind == ConceptRelationKind::Broader) {
        auto& adj = broader[r.typology];
        if (adj.empty()) adj.resize(entries.size());
        adj[e].push_back(it->second);
      } else if (it->second == e) {
        out.push_back({entry.id, "relation-self", "relatedConcept points at its own entry"});
      }
    }
    for (const auto& ls : entry.lang_sections) {
      for (const auto& ts : ls.term_sections) {
        for (const auto& r : ts.relations) {
          auto it = ts_entry.find(r.target);
          if (it == ts_entry.end()) {
            out.push_back({ts.id, "relation-target", "descriptorOf target '" + r.target + "' does not resolve"});
          } else if (it->second == e) {
            out.push_back({ts.id, "relation-own-entry",
                           "descriptorOf target '" + r.target + "' lies in the same entry"});
          }
        }
      }
    }
  }
  for (const auto& [typology, adj] : broader) {
    for (const auto& component : detail::strongly_connected(adj)) {
      if (!detail::is_cyclic(adj, component)) continue;
      out.push_back({entries[component.front()].id, "acyclic-typology", "cycle in typology " + typology});
    }
  }

  // Resource registry
  std::set<std::pair<std::string, std::string>> reported;
  for (const auto& entry : entries) {
    for_each_provenance(entry, [&](const ProvenanceBlock& p) {
      if (collection.global().find_resource(p.institution, p.database)) return;
      if (reported.emplace(p.institution, p.database).second) {
        out.push_back({entry.id, "registered-resource",
                       "resource " + p.institution + "|" + p.database + " missing from global information"});
      }
    });
  }
  return out;
}

}  // namespace termfuse
