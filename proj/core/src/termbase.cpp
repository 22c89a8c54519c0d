#include "termfuse/termbase.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>

#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"
#include "termfuse/fusion.hpp"
#include "termfuse/gmt.hpp"

namespace termfuse {

std::vector<std::string> lookup(const TermCollection& collection, std::string_view term,
                                std::optional<std::string_view> language, const NormalizationOptions& options) {
  const auto key = normalize_term(term, options);
  std::vector<std::string> out;
  for (const auto& e : collection.entries()) {
    const bool hit = std::any_of(e.lang_sections.begin(), e.lang_sections.end(), [&](const LangSection& ls) {
      if (language && ls.language != *language) return false;
      return std::any_of(ls.term_sections.begin(), ls.term_sections.end(),
                         [&](const TermSection& ts) { return normalize_term(ts.term, options) == key; });
    });
    if (hit) out.push_back(e.id);
  }
  return out;
}

namespace {

std::string quote(std::string_view term) {
  std::string out = "\"";
  for (char c : term) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

QueryExpansion expand_query(const TermCollection& collection, std::string_view entry,
                            std::span<const std::string> languages) {
  const auto* e = collection.entry(entry);
  if (!e) throw Error(ErrorKind::NotFound, "no entry " + std::string(entry));
  QueryExpansion q;
  q.concept_id = e->id;
  for (const auto& lang : languages) {
    const auto* ls = e->section(lang);
    if (!ls || std::any_of(q.clauses.begin(), q.clauses.end(), [&](const auto& c) { return c.language == lang; })) {
      continue;
    }
    QueryClause clause{lang, {}};
    for (const auto& ts : ls->term_sections) clause.terms.push_back(ts.term);
    q.clauses.push_back(std::move(clause));
  }
  if (q.clauses.empty()) {
    throw Error(ErrorKind::NoTermsInLanguages, "entry " + e->id + " has no terms in the requested languages");
  }
  for (std::size_t i = 0; i < q.clauses.size(); ++i) {
    if (i) q.rendered += " OR ";
    q.rendered += '(';
    for (std::size_t j = 0; j < q.clauses[i].terms.size(); ++j) {
      if (j) q.rendered += " OR ";
      q.rendered += quote(q.clauses[i].terms[j]);
    }
    q.rendered += ')';
  }
  return q;
}

namespace {

class Exporter {
 public:
  Exporter(std::string_view institution, std::optional<std::string_view> database)
      : institution_(institution), database_(database) {}

  bool matches(const ProvenanceBlock& p) const {
    return p.institution == institution_ && (!database_ || p.database == *database_);
  }

  std::vector<ProvenanceBlock> keep(const std::vector<ProvenanceBlock>& blocks) const {
    std::vector<ProvenanceBlock> out;
    std::copy_if(blocks.begin(), blocks.end(), std::back_inserter(out), [&](const auto& p) { return matches(p); });
    return out;
  }

  // Plain features survive with their owner; sourced ones need a matching block.
  std::vector<Feature> keep(const std::vector<Feature>& features, bool keep_plain) const {
    std::vector<Feature> out;
    for (const auto& f : features) {
      if (f.provenance.empty()) {
        if (keep_plain) out.push_back(f);
        continue;
      }
      auto blocks = keep(f.provenance);
      if (blocks.empty()) continue;
      out.push_back(f);
      out.back().provenance = std::move(blocks);
    }
    return out;
  }

  std::vector<TermSection> terms(const TermSection& ts) const {
    std::vector<TermSection> out;
    TermSection head;
    head.id = ts.id;
    head.term = ts.term;
    head.provenance = keep(ts.provenance);
    for (const auto& r : ts.relations) {
      if (matches(r.provenance)) head.relations.push_back(r);
    }

    std::vector<Feature> carried;
    for (const auto& f : ts.features) {
      if (f.category == category::kVariant && !f.provenance.empty()) {
        auto blocks = keep(f.provenance);
        if (blocks.empty()) continue;
        TermSection restored;
        restored.term = f.value;
        restored.provenance = std::move(blocks);
        out.push_back(std::move(restored));
      } else if (f.provenance.empty()) {
        if (!f.source) head.features.push_back(f);
      } else if (auto blocks = keep(f.provenance); !blocks.empty()) {
        carried.push_back(f);
        carried.back().provenance = std::move(blocks);
      }
    }
    for (const auto& c : ts.components) {
      head.components.push_back(TermComponentSection{c.text, keep(c.features, true)});
    }

    if (!head.provenance.empty()) {
      head.features.insert(head.features.end(), carried.begin(), carried.end());
      out.insert(out.begin(), std::move(head));
    } else if (!out.empty()) {
      // The survivor came from another source: the first restored variant
      // takes over its id, documented features and relations.
      auto& first = out.front();
      first.id = head.id;
      first.features = std::move(carried);
      first.relations = std::move(head.relations);
    }
    return out;
  }

  std::optional<TermEntry> entry(const TermEntry& e) const {
    TermEntry out;
    out.id = e.id;
    out.features = keep(e.features, false);
    for (const auto& r : e.relations) {
      if (matches(r.provenance)) out.relations.push_back(r);
    }
    for (const auto& ls : e.lang_sections) {
      LangSection section{ls.language, keep(ls.features, false), {}};
      for (const auto& ts : ls.term_sections) {
        for (auto& t : terms(ts)) section.term_sections.push_back(std::move(t));
      }
      if (!section.term_sections.empty()) out.lang_sections.push_back(std::move(section));
    }
    if (out.lang_sections.empty()) return std::nullopt;
    return out;
  }

 private:
  std::string_view institution_;
  std::optional<std::string_view> database_;
};

}  // namespace

TermCollection export_by_source(const TermCollection& collection, std::string_view institution,
                                std::optional<std::string_view> database) {
  const Exporter exporter(institution, database);
  GlobalInfo global = collection.global();
  std::erase_if(global.resources, [&](const ResourceDescriptor& r) {
    return !exporter.matches(ProvenanceBlock{r.institution, r.database, {}, {}, {}});
  });
  if (global.resources.empty()) {
    throw Error(ErrorKind::UnknownSource,
                "no resource registered for " + std::string(institution) +
                    (database ? "|" + std::string(*database) : std::string()));
  }

  TermCollection kept(std::move(global), collection.id_prefix());
  for (const auto& e : collection.entries()) {
    if (auto filtered = exporter.entry(e)) kept.add_entry(std::move(*filtered));
  }
  return lift_relations(kept).collection;
}

std::string_view to_string(ChangeKind kind) noexcept {
  switch (kind) {
    case ChangeKind::Modified: return "modified";
    case ChangeKind::Added: return "added";
    case ChangeKind::Removed: return "removed";
  }
  return "modified";
}

std::string UpdateSet::to_text() const {
  std::string out;
  for (const auto& c : changed) {
    out += to_string(c.kind);
    out += ' ';
    out += format_pointer(c.pointer);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<const GmtNode*> native_entries(const GmtNode& root) {
  std::vector<const GmtNode*> out;
  for (const auto& child : root.children) {
    if (child.kind != NodeKind::Structure || child.type != level_name(Level::Entry)) continue;
    if (!child.id) throw Error(ErrorKind::DialectError, "terminologicalEntry without xml:id");
    out.push_back(&child);
  }
  return out;
}

std::string today() {
  const auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  const std::chrono::year_month_day ymd{now};
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buffer;
}

}  // namespace

UpdateSet diff_native(std::string_view old_document, std::string_view new_document, std::optional<std::string> file,
                      std::string snapshot_date) {
  const auto old_tree = parse_gmt(old_document);
  const auto new_tree = parse_gmt(new_document);
  const auto before = native_entries(old_tree);
  const auto after = native_entries(new_tree);

  std::map<std::string_view, const GmtNode*> by_id;
  for (const auto* n : after) by_id.emplace(*n->id, n);

  UpdateSet set;
  set.snapshot_date = snapshot_date.empty() ? today() : std::move(snapshot_date);
  std::set<std::string_view> known;
  for (const auto* n : before) {
    known.insert(*n->id);
    auto it = by_id.find(*n->id);
    if (it == by_id.end()) {
      set.changed.push_back({Pointer::shorthand(*n->id, file), ChangeKind::Removed});
    } else if (!(*it->second == *n)) {
      set.changed.push_back({Pointer::shorthand(*n->id, file), ChangeKind::Modified});
    }
  }
  for (const auto* n : after) {
    if (!known.count(*n->id)) set.changed.push_back({Pointer::shorthand(*n->id, file), ChangeKind::Added});
  }
  return set;
}

}  // namespace termfuse
