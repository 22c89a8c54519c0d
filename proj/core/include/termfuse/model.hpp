#pragma once

// In-memory terminological data collection: collection -> entries -> language
// sections -> term sections -> term component sections, plus global
// information. Independent of any file syntax.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termfuse/pointer.hpp"

namespace termfuse {

enum class Level {
  Collection,
  GlobalInformation,
  Entry,
  LanguageSection,
  TermSection,
  TermComponentSection,
};

// Camel-case level names as they appear in GMT `struct/@type`.
std::string_view level_name(Level level) noexcept;
std::optional<Level> parse_level(std::string_view name) noexcept;

// Typed span over a feature value, in UTF-8 byte offsets [begin, end).
struct Annotation {
  std::string type;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Annotation&) const = default;
};

struct ProvenanceBlock {
  std::string institution;
  std::string database;
  std::optional<std::string> bibliographic_source;
  std::optional<std::string> last_modified;  // YYYY-MM-DD
  std::optional<Pointer> native_pointer;

  bool same_source(const ProvenanceBlock& other) const noexcept {
    return institution == other.institution && database == other.database;
  }
  bool operator==(const ProvenanceBlock&) const = default;
};

struct Feature {
  std::string category;
  std::string value;
  std::optional<std::string> source;
  std::vector<Annotation> annotations;
  std::vector<ProvenanceBlock> provenance;

  // A plain feature serializes as a bare <feat>; others need a <brack>.
  bool is_plain() const noexcept { return !source && provenance.empty(); }
  bool operator==(const Feature&) const = default;
};

enum class TermRelationKind { DescriptorOf };

// Term-level link from a non-preferred concept's term to the descriptor term.
struct TermRelation {
  TermRelationKind kind = TermRelationKind::DescriptorOf;
  std::string target;  // term section id in another entry
  ProvenanceBlock provenance;

  bool operator==(const TermRelation&) const = default;
};

enum class ConceptRelationKind { Broader, Related };

std::string_view category_of(ConceptRelationKind kind) noexcept;

struct ConceptRelation {
  ConceptRelationKind kind = ConceptRelationKind::Broader;
  std::string target;  // entry id
  std::string typology;
  ProvenanceBlock provenance;

  bool operator==(const ConceptRelation&) const = default;
};

struct TermComponentSection {
  std::string text;
  std::vector<Feature> features;

  bool operator==(const TermComponentSection&) const = default;
};

struct TermSection {
  std::string id;  // empty until registered in a collection
  std::string term;
  std::vector<Feature> features;
  std::vector<ProvenanceBlock> provenance;
  std::vector<TermRelation> relations;
  std::vector<TermComponentSection> components;

  // Value of the first feature with `category`, if any.
  const Feature* feature(std::string_view category) const noexcept;
  bool operator==(const TermSection&) const = default;
};

struct LangSection {
  std::string language;
  std::vector<Feature> features;
  std::vector<TermSection> term_sections;

  bool operator==(const LangSection&) const = default;
};

struct TermEntry {
  std::string id;
  std::vector<Feature> features;
  std::vector<ConceptRelation> relations;
  std::vector<LangSection> lang_sections;

  const LangSection* section(std::string_view language) const noexcept;
  bool operator==(const TermEntry&) const = default;
};

struct ResourceDescriptor {
  std::string institution;
  std::string database;
  std::optional<std::string> citation;
  std::optional<std::string> native_file;

  bool operator==(const ResourceDescriptor&) const = default;
};

struct GlobalInfo {
  std::string title;
  std::string dcs_ref;
  std::vector<ResourceDescriptor> resources;

  const ResourceDescriptor* find_resource(std::string_view institution,
                                          std::string_view database) const noexcept;
  bool empty() const noexcept { return title.empty() && dcs_ref.empty() && resources.empty(); }
  bool operator==(const GlobalInfo&) const = default;
};

// Location of a registered node. `term` is only set together with `lang`.
struct NodePath {
  std::size_t entry = 0;
  std::optional<std::size_t> lang;
  std::optional<std::size_t> term;

  bool operator==(const NodePath&) const = default;
  auto operator<=>(const NodePath&) const = default;
};

// One broken rule found by check_structure.
struct InvariantViolation {
  std::string node;
  std::string rule;
  std::string message;

  bool operator==(const InvariantViolation&) const = default;
};

std::string entry_id(std::string_view prefix, std::size_t serial);
std::string term_section_id(std::string_view entry_id, std::size_t serial);

class TermCollection {
 public:
  explicit TermCollection(GlobalInfo global = {}, std::string id_prefix = "BV");

  const GlobalInfo& global() const noexcept { return global_; }
  GlobalInfo& mutable_global();
  const std::string& id_prefix() const noexcept { return id_prefix_; }
  std::span<const TermEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Appends `entry`, assigning `<prefix>.<serial>` / `<entry>.TS.<serial>`
  // ids to nodes that have none. Throws DuplicateId or InvariantViolation.
  std::string add_entry(TermEntry entry);

  // Applies `edit` to the entry list, then rebuilds the id index.
  template <typename Fn>
  void edit_entries(Fn&& edit) {
    ensure_mutable();
    edit(entries_);
    reindex();
  }

  const std::map<std::string, NodePath, std::less<>>& id_index() const noexcept { return index_; }
  std::optional<NodePath> find(std::string_view id) const;
  const TermEntry* entry(std::string_view id) const;
  const TermSection* term_section(std::string_view id) const;
  const TermSection& at(const NodePath& path) const;

  // Rebuilds id_index from the entries; throws DuplicateId.
  void reindex();

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  // Content equality: global information and entries. The id index is
  // derived and the prefix only drives future id assignment.
  friend bool operator==(const TermCollection& a, const TermCollection& b) {
    return a.global_ == b.global_ && a.entries_ == b.entries_;
  }

 private:
  void ensure_mutable() const;

  GlobalInfo global_;
  std::string id_prefix_;
  std::vector<TermEntry> entries_;
  std::map<std::string, NodePath, std::less<>> index_;
  bool frozen_ = false;
};

TermCollection new_collection(GlobalInfo global, std::string id_prefix = "BV");

// Local invariants of one entry (cardinalities, language codes, terms,
// provenance uniqueness, annotation spans). Relation targets are not checked.
std::vector<InvariantViolation> check_entry(const TermEntry& entry);

// Every invariant of the model, including relation resolution, per-typology
// acyclicity and resource registration. Empty iff the collection is valid.
std::vector<InvariantViolation> check_structure(const TermCollection& collection);

bool is_language_code(std::string_view code) noexcept;

// Moves plain features ahead of bracketed ones, keeping relative order,
// which is the order the GMT mapping reproduces.
void canonicalize(TermEntry& entry);

template <typename Fn>
void for_each_provenance(const std::vector<Feature>& features, Fn&& fn) {
  for (const auto& f : features) {
    for (const auto& p : f.provenance) fn(p);
  }
}

// Visits every provenance block owned by `entry`, wherever it is attached.
template <typename Fn>
void for_each_provenance(const TermEntry& entry, Fn&& fn) {
  for_each_provenance(entry.features, fn);
  for (const auto& r : entry.relations) fn(r.provenance);
  for (const auto& ls : entry.lang_sections) {
    for_each_provenance(ls.features, fn);
    for (const auto& ts : ls.term_sections) {
      for (const auto& p : ts.provenance) fn(p);
      for_each_provenance(ts.features, fn);
      for (const auto& r : ts.relations) fn(r.provenance);
      for (const auto& c : ts.components) for_each_provenance(c.features, fn);
    }
  }
}

}  // namespace termfuse
