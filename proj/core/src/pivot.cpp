#include <algorithm>
#include <unordered_map>

#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"
#include "termfuse/ingest.hpp"
#include "termfuse/normalize.hpp"

namespace termfuse {

namespace {

namespace cat = category;

Feature plain(std::string_view category, std::string_view value) {
  return Feature{std::string(category), std::string(value), std::nullopt, {}, {}};
}

Feature sourced(std::string_view category, const SourcedText& text, const ProvenanceBlock& provenance) {
  return Feature{std::string(category), text.text, text.source, text.annotations, {provenance}};
}

TermSection make_term(std::string_view term, bool preferred, const ProvenanceBlock& provenance) {
  TermSection ts;
  ts.term = std::string(term);
  ts.features.push_back(plain(cat::kTermType, cat::kFullForm));
  ts.features.push_back(plain(cat::kAdministrativeStatus, preferred ? cat::kPreferredTerm : cat::kAdmittedTerm));
  ts.provenance.push_back(provenance);
  return ts;
}

LangSection& section(TermEntry& entry, std::string_view language) {
  for (auto& ls : entry.lang_sections) {
    if (ls.language == language) return ls;
  }
  entry.lang_sections.push_back(LangSection{std::string(language), {}, {}});
  return entry.lang_sections.back();
}

// A USE record restating a UF line of its descriptor.
bool reciprocal(const SourceRecord& use, const SourceRecord& target) {
  return use.language == target.language &&
         std::find(target.uf_terms.begin(), target.uf_terms.end(), use.descriptor_term) != target.uf_terms.end();
}

class Pivoter {
 public:
  Pivoter(const SourceResource& resource, const PivotPolicy& policy)
      : resource_(resource),
        split_(policy.uf_handling == UfHandling::SplitNonPreferred),
        typology_(policy.typology_label.empty() ? resource.descriptor.database : policy.typology_label),
        prefix_(policy.id_prefix.empty() ? default_id_prefix(resource.descriptor) : policy.id_prefix) {
    provenance_.institution = resource.descriptor.institution;
    provenance_.database = resource.descriptor.database;
    for (std::size_t i = 0; i < resource.records.size(); ++i) {
      by_id_.emplace(resource.records[i].native_id, i);
    }
  }

  TermCollection run() {
    check_use_targets();
    assign_ids();

    for (std::size_t i = 0; i < resource_.records.size(); ++i) {
      const auto& r = resource_.records[i];
      if (r.is_descriptor()) {
        build_concept(i);
        if (split_) {
          for (const auto& uf : r.uf_terms) {
            if (!restated(r, uf)) build_non_preferred(uf, r.language, i);
          }
        }
      } else if (split_) {
        build_concept(i);
      }
    }
    add_relations();

    GlobalInfo global;
    global.title = resource_.descriptor.database;
    global.dcs_ref = "default";
    global.resources.push_back(resource_.descriptor);
    TermCollection collection(std::move(global), prefix_);
    for (auto& e : entries_) collection.add_entry(std::move(e));
    return collection;
  }

 private:
  // Whether a USE record already carries this UF term of `descriptor`.
  bool restated(const SourceRecord& descriptor, const std::string& uf) const {
    return std::any_of(resource_.records.begin(), resource_.records.end(), [&](const SourceRecord& r) {
      return r.use_target == descriptor.native_id && r.descriptor_term == uf && r.language == descriptor.language;
    });
  }

  void check_use_targets() const {
    for (const auto& r : resource_.records) {
      if (!r.use_target) continue;
      auto it = by_id_.find(*r.use_target);
      if (it == by_id_.end()) {
        throw Error(ErrorKind::DanglingReference,
                    "record " + r.native_id + ": USE target '" + *r.use_target + "' not found", r.line);
      }
      if (!resource_.records[it->second].is_descriptor()) {
        throw Error(ErrorKind::DanglingReference,
                    "record " + r.native_id + ": USE target '" + *r.use_target + "' is not a descriptor", r.line);
      }
    }
  }

  // Entry ids follow record order; under splitNonPreferred each UF term gets
  // its own entry right after its descriptor.
  void assign_ids() {
    std::size_t serial = 0;
    entry_of_.assign(resource_.records.size(), 0);
    for (std::size_t i = 0; i < resource_.records.size(); ++i) {
      const auto& r = resource_.records[i];
      if (!r.is_descriptor() && !split_) continue;
      entry_of_[i] = entries_.size();
      entries_.emplace_back();
      entries_.back().id = entry_id(prefix_, ++serial);
      if (r.is_descriptor() && split_) {
        for (const auto& uf : r.uf_terms) {
          if (restated(r, uf)) continue;
          entries_.emplace_back();
          entries_.back().id = entry_id(prefix_, ++serial);
        }
      }
    }
    if (!split_) {
      for (std::size_t i = 0; i < resource_.records.size(); ++i) {
        const auto& r = resource_.records[i];
        if (!r.is_descriptor()) entry_of_[i] = entry_of_[by_id_.at(*r.use_target)];
      }
    }
  }

  void add_texts(TermEntry& entry, const SourceRecord& r, bool entry_level_definition) {
    for (const auto& d : r.definitions) {
      auto f = sourced(cat::kDefinition, d, provenance_);
      if (entry_level_definition) {
        entry.features.push_back(std::move(f));
      } else {
        section(entry, r.language).features.push_back(std::move(f));
      }
    }
    for (const auto& c : r.contexts) {
      section(entry, r.language).features.push_back(sourced(cat::kContext, c, provenance_));
    }
  }

  // Descriptor record (both policies) or USE record (splitNonPreferred).
  void build_concept(std::size_t index) {
    const auto& r = resource_.records[index];
    TermEntry& entry = entries_[entry_of_[index]];
    const bool preferred = r.is_descriptor();

    std::vector<const SourceRecord*> folded;
    if (!split_) {
      for (const auto& other : resource_.records) {
        if (other.use_target && *other.use_target == r.native_id) folded.push_back(&other);
      }
    }
    std::size_t definitions = r.definitions.size();
    for (const auto* f : folded) definitions += f->definitions.size();

    auto& home = section(entry, r.language);
    home.term_sections.push_back(make_term(r.descriptor_term, preferred, provenance_));
    if (!preferred) {
      const auto target = entry_of_[by_id_.at(*r.use_target)];
      home.term_sections.back().relations.push_back(
          TermRelation{TermRelationKind::DescriptorOf, term_section_id(entries_[target].id, 1), provenance_});
    }
    if (!split_) {
      for (const auto& uf : r.uf_terms) home.term_sections.push_back(make_term(uf, false, provenance_));
      for (const auto* f : folded) {
        if (reciprocal(*f, r)) continue;
        section(entry, f->language).term_sections.push_back(make_term(f->descriptor_term, false, provenance_));
      }
    }
    for (const auto& [lang, term] : r.translations) {
      section(entry, lang).term_sections.push_back(make_term(term, preferred, provenance_));
    }
    for (const auto* f : folded) {
      for (const auto& [lang, term] : f->translations) {
        section(entry, lang).term_sections.push_back(make_term(term, false, provenance_));
      }
    }
    add_texts(entry, r, definitions == 1);
    for (const auto* f : folded) add_texts(entry, *f, definitions == 1);
  }

  void build_non_preferred(const std::string& term, const std::string& language, std::size_t descriptor) {
    // UF entries follow their descriptor entry in id order.
    std::size_t slot = entry_of_[descriptor] + 1;
    while (!entries_[slot].lang_sections.empty()) ++slot;
    TermEntry& entry = entries_[slot];
    auto& ls = section(entry, language);
    ls.term_sections.push_back(make_term(term, false, provenance_));
    ls.term_sections.back().relations.push_back(TermRelation{
        TermRelationKind::DescriptorOf, term_section_id(entries_[entry_of_[descriptor]].id, 1), provenance_});
  }

  std::optional<std::size_t> resolve(const std::string& native_id) const {
    auto it = by_id_.find(native_id);
    if (it == by_id_.end()) return std::nullopt;
    return entry_of_[it->second];
  }

  void relate(std::size_t from, std::size_t to, ConceptRelationKind kind) {
    if (from == to) return;
    auto& rels = entries_[from].relations;
    const auto& target = entries_[to].id;
    const bool exists = std::any_of(rels.begin(), rels.end(), [&](const ConceptRelation& c) {
      return c.kind == kind && c.target == target && c.typology == typology_;
    });
    if (!exists) rels.push_back(ConceptRelation{kind, target, typology_, provenance_});
  }

  // NT is stored inverted, as broaderConcept on the narrower entry.
  void add_relations() {
    for (std::size_t i = 0; i < resource_.records.size(); ++i) {
      const auto& r = resource_.records[i];
      const auto self = entry_of_[i];
      for (const auto& id : r.bt) {
        if (auto t = resolve(id)) relate(self, *t, ConceptRelationKind::Broader);
      }
      for (const auto& id : r.nt) {
        if (auto t = resolve(id)) relate(*t, self, ConceptRelationKind::Broader);
      }
      for (const auto& id : r.rt) {
        if (auto t = resolve(id)) relate(self, *t, ConceptRelationKind::Related);
      }
    }
  }

  const SourceResource& resource_;
  bool split_;
  std::string typology_;
  std::string prefix_;
  ProvenanceBlock provenance_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<std::size_t> entry_of_;
  std::vector<TermEntry> entries_;
};

}  // namespace

std::string slugify(std::string_view text) {
  NormalizationOptions options;
  options.strip_diacritics = true;
  options.strip_punctuation = false;
  const auto folded = normalize_term(text, options);
  std::string slug;
  bool dash = false;
  for (unsigned char c : folded) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      if (dash && !slug.empty()) slug += '-';
      slug += static_cast<char>(c);
      dash = false;
    } else {
      dash = true;
    }
  }
  return slug.empty() ? "resource" : slug;
}

std::string default_id_prefix(const ResourceDescriptor& descriptor) {
  auto prefix = slugify(descriptor.institution.empty() ? descriptor.database : descriptor.institution);
  std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (prefix.front() >= '0' && prefix.front() <= '9') prefix.insert(prefix.begin(), 'R');
  return prefix;
}

std::string native_file_name(const ResourceDescriptor& descriptor) {
  return slugify(descriptor.database.empty() ? descriptor.institution : descriptor.database) + ".native.gmt";
}

TermCollection pivot(const SourceResource& resource, const PivotPolicy& policy) {
  return Pivoter(resource, policy).run();
}

}  // namespace termfuse
