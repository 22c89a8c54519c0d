#include "termfuse/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"

namespace termfuse {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::string match_key(std::string_view language, std::string_view term, const NormalizationOptions& options) {
  auto key = normalize_term(term, options);
  if (key.empty()) return {};
  std::string out(language);
  out += '\0';
  out += key;
  return out;
}

// Dedup key within a fused entry; terms that normalize to nothing only
// collapse with identical spellings.
std::string dedup_key(std::string_view term, const NormalizationOptions& options) {
  auto key = normalize_term(term, options);
  if (key.empty()) return "\x01" + std::string(term);
  return key;
}

struct Occurrence {
  std::size_t node;
  bool preferred;
  const TermSection* ts;
  const std::string* language;
};

struct Node {
  std::size_t collection;
  const TermEntry* entry;
};

struct Edge {
  std::size_t to;
  const Occurrence* via;
};

using ProvenanceKey = std::pair<std::string, std::string>;

ProvenanceKey min_source(const TermSection& ts) {
  ProvenanceKey best{"\xff", "\xff"};
  for (const auto& p : ts.provenance) best = std::min(best, ProvenanceKey{p.institution, p.database});
  return best;
}

class Fuser {
 public:
  Fuser(std::span<const TermCollection> inputs, const FusionPolicy& policy)
      : inputs_(inputs), policy_(policy) {}

  FusionResult run() {
    check_inputs();
    index_terms();
    partition();
    auto entries = merge();
    rewrite_relations(entries);

    GlobalInfo global;
    global.title = policy_.title.empty() && !inputs_.empty() ? inputs_.front().global().title : policy_.title;
    global.dcs_ref = inputs_.empty() ? std::string() : inputs_.front().global().dcs_ref;
    for (const auto& c : inputs_) {
      for (const auto& r : c.global().resources) global.resources.push_back(r);
    }
    TermCollection merged(std::move(global), policy_.collection_prefix);
    for (auto& e : entries) merged.add_entry(std::move(e));

    auto lifted = lift_relations(merged);
    report_.dropped_edges = std::move(lifted.dropped);
    if (auto violations = check_structure(lifted.collection); !violations.empty()) {
      const auto& v = violations.front();
      throw Error(ErrorKind::InvariantViolation, "fused collection: " + v.node + ": " + v.message);
    }
    collect_stats(lifted.collection);
    report_.entries_in = nodes_.size();
    report_.partitions = partitions_.size();
    return FusionResult{std::move(lifted.collection), std::move(report_)};
  }

 private:
  void check_inputs() const {
    std::map<ProvenanceKey, std::size_t> owner;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      for (const auto& r : inputs_[i].global().resources) {
        auto [it, fresh] = owner.emplace(ProvenanceKey{r.institution, r.database}, i);
        if (!fresh && it->second != i) {
          throw Error(ErrorKind::RegistryClash, "resource " + r.institution + "|" + r.database +
                                                    " registered by inputs " + std::to_string(it->second) +
                                                    " and " + std::to_string(i));
        }
      }
      if (auto violations = check_structure(inputs_[i]); !violations.empty()) {
        const auto& v = violations.front();
        throw Error(ErrorKind::InvariantViolation,
                    "input " + std::to_string(i) + ": " + v.node + ": " + v.message);
      }
    }
  }

  void index_terms() {
    for (std::size_t c = 0; c < inputs_.size(); ++c) {
      for (const auto& e : inputs_[c].entries()) nodes_.push_back(Node{c, &e});
    }
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      for (const auto& ls : nodes_[n].entry->lang_sections) {
        for (const auto& ts : ls.term_sections) {
          auto key = match_key(ls.language, ts.term, policy_.normalization);
          if (key.empty()) continue;
          auto [it, fresh] = bucket_index_.emplace(std::move(key), buckets_.size());
          if (fresh) buckets_.emplace_back();
          buckets_[it->second].push_back(Occurrence{n, is_preferred(ts), &ts, &ls.language});
          occurrences_of_.resize(nodes_.size());
          occurrences_of_[n].push_back(it->second);
        }
      }
    }
    occurrences_of_.resize(nodes_.size());
  }

  void link(UnionFind& uf, const Occurrence& from, const Occurrence& to) {
    if (uf.unite(from.node, to.node)) {
      edges_.resize(nodes_.size());
      edges_[from.node].push_back(Edge{to.node, &to});
      edges_[to.node].push_back(Edge{from.node, &from});
    }
  }

  void partition() {
    edges_.resize(nodes_.size());
    UnionFind base(nodes_.size());
    for (const auto& bucket : buckets_) {
      const Occurrence* first = nullptr;
      for (const auto& o : bucket) {
        if (!o.preferred) continue;
        if (first) {
          link(base, *first, o);
        } else {
          first = &o;
        }
      }
    }

    std::vector<std::size_t> base_root(nodes_.size());
    for (std::size_t n = 0; n < nodes_.size(); ++n) base_root[n] = base.find(n);

    UnionFind final_uf = base;
    struct Pending {
      std::size_t node;
      ConflictKind kind;
      std::set<std::size_t> roots;
      const Occurrence* via;
    };
    std::vector<Pending> pending;
    // Other base partitions reachable from each entry's terms, with the first
    // occurrence on each side witnessing the bridge.
    using Reach = std::map<std::size_t, std::pair<const Occurrence*, const Occurrence*>>;
    std::vector<Reach> reaches(nodes_.size());
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      auto& reach = reaches[n];
      for (auto b : occurrences_of_[n]) {
        const auto& bucket = buckets_[b];
        const Occurrence* mine = nullptr;
        for (const auto& o : bucket) {
          if (o.node == n) {
            mine = &o;
            break;
          }
        }
        const bool scoped = policy_.match_scope == MatchScope::AllTerms || !mine->preferred;
        if (!scoped) continue;
        for (const auto& o : bucket) {
          if (base_root[o.node] == base_root[n]) continue;
          if (policy_.match_scope == MatchScope::PreferredOnly && mine->preferred) continue;
          reach.emplace(base_root[o.node], std::pair{mine, &o});
        }
      }
    }
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      const auto& reach = reaches[n];
      if (reach.empty()) continue;
      if (policy_.match_scope == MatchScope::AllTerms && reach.size() == 1) {
        // Both ends of the bridge must be unambiguous.
        const auto& [mine, other] = reach.begin()->second;
        if (reaches[other->node].size() == 1) link(final_uf, *mine, *other);
        continue;
      }
      Pending p{n,
                policy_.match_scope == MatchScope::AllTerms ? ConflictKind::AmbiguousMatch
                                                            : ConflictKind::NonPreferredBridge,
                {},
                reach.begin()->second.first};
      for (const auto& [root, witness] : reach) p.roots.insert(root);
      pending.push_back(std::move(p));
    }

    std::map<std::size_t, std::size_t> partition_of_root;
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      auto [it, fresh] = partition_of_root.emplace(final_uf.find(n), partitions_.size());
      if (fresh) partitions_.emplace_back();
      partitions_[it->second].push_back(n);
    }
    partition_of_.resize(nodes_.size());
    for (std::size_t p = 0; p < partitions_.size(); ++p) {
      for (auto n : partitions_[p]) partition_of_[n] = p;
      new_ids_.push_back(entry_id(policy_.collection_prefix, p + 1));
    }

    for (const auto& p : pending) {
      ConflictNote note;
      note.kind = p.kind;
      note.collection = nodes_[p.node].collection;
      note.entry = nodes_[p.node].entry->id;
      std::set<std::size_t> seen;
      for (auto root : p.roots) {
        const auto part = partition_of_[root];
        if (part == partition_of_[p.node] || !seen.insert(part).second) continue;
        note.candidates.push_back(new_ids_[part]);
      }
      if (note.candidates.empty()) continue;
      std::sort(note.candidates.begin(), note.candidates.end());
      note.term = p.via->ts->term;
      note.language = *p.via->language;
      report_.conflicts.push_back(std::move(note));
    }
  }

  std::size_t host_of(const std::vector<std::size_t>& members) const {
    return *std::min_element(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(nodes_[a].entry->id, nodes_[a].collection, a) <
             std::tie(nodes_[b].entry->id, nodes_[b].collection, b);
    });
  }

  void record_merges(std::size_t part) {
    const auto& members = partitions_[part];
    const auto host = host_of(members);
    std::set<std::size_t> visited{host};
    std::vector<std::size_t> queue{host};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto edges = edges_[queue[i]];
      std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
      for (const auto& edge : edges) {
        if (!visited.insert(edge.to).second) continue;
        queue.push_back(edge.to);
        report_.merges.push_back(MergeNote{nodes_[host].collection, nodes_[host].entry->id,
                                           nodes_[edge.to].collection, nodes_[edge.to].entry->id,
                                           edge.via->ts->term, *edge.via->language});
      }
    }
    for (auto n : members) {
      report_.aliases.push_back(AliasNote{nodes_[n].collection, nodes_[n].entry->id, new_ids_[part]});
      entry_alias_[{nodes_[n].collection, nodes_[n].entry->id}] = new_ids_[part];
    }
  }

  struct Member {
    std::size_t node;
    const TermSection* ts;
  };

  // Returns the merged term section and the input collection of each of its
  // term relations.
  std::pair<TermSection, std::vector<std::size_t>> merge_terms(const std::vector<Member>& group) {
    const auto rank = [](const Member& m) {
      return std::make_tuple(is_preferred(*m.ts) ? 0 : 1, std::cref(m.ts->term), min_source(*m.ts), m.node);
    };
    const auto survivor = std::min_element(group.begin(), group.end(), [&](const Member& a, const Member& b) {
                            return rank(a) < rank(b);
                          }) - group.begin();

    std::vector<bool> absorbed(group.size(), false);
    absorbed[survivor] = true;
    std::vector<ProvenanceBlock> claimed = group[survivor].ts->provenance;
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (absorbed[i] || group[i].ts->term != group[survivor].ts->term) continue;
      const bool clash = std::any_of(group[i].ts->provenance.begin(), group[i].ts->provenance.end(),
                                     [&](const ProvenanceBlock& p) {
                                       return std::any_of(claimed.begin(), claimed.end(), [&](const ProvenanceBlock& q) {
                                         return q.same_source(p);
                                       });
                                     });
      if (clash) continue;
      absorbed[i] = true;
      claimed.insert(claimed.end(), group[i].ts->provenance.begin(), group[i].ts->provenance.end());
    }

    TermSection out;
    const auto& head = *group[survivor].ts;
    out.term = head.term;
    out.features = head.features;
    out.relations = head.relations;
    out.components = head.components;
    std::vector<std::size_t> owners(head.relations.size(), nodes_[group[survivor].node].collection);
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (absorbed[i]) {
        out.provenance.insert(out.provenance.end(), group[i].ts->provenance.begin(), group[i].ts->provenance.end());
      }
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (static_cast<std::ptrdiff_t>(i) == survivor) continue;
      const auto& ts = *group[i].ts;
      if (!absorbed[i]) {
        out.features.push_back(Feature{std::string(category::kVariant), ts.term, std::nullopt, {}, ts.provenance});
      }
      for (const auto& f : ts.features) {
        if (!f.is_plain()) out.features.push_back(f);
      }
      out.relations.insert(out.relations.end(), ts.relations.begin(), ts.relations.end());
      owners.insert(owners.end(), ts.relations.size(), nodes_[group[i].node].collection);
      out.components.insert(out.components.end(), ts.components.begin(), ts.components.end());
    }
    return {std::move(out), std::move(owners)};
  }

  std::vector<TermEntry> merge() {
    std::vector<TermEntry> out;
    out.reserve(partitions_.size());
    for (std::size_t part = 0; part < partitions_.size(); ++part) {
      record_merges(part);
      const auto& members = partitions_[part];
      TermEntry entry;
      entry.id = new_ids_[part];

      // language -> dedup key -> members, both in first-appearance order
      std::vector<std::string> languages;
      std::map<std::string, std::vector<Feature>> lang_features;
      std::map<std::string, std::vector<std::string>> key_order;
      std::map<std::pair<std::string, std::string>, std::vector<Member>> groups;
      for (auto n : members) {
        const auto& e = *nodes_[n].entry;
        entry.features.insert(entry.features.end(), e.features.begin(), e.features.end());
        for (auto r : e.relations) {
          relation_origin_.push_back({out.size(), entry.relations.size(), nodes_[n].collection});
          entry.relations.push_back(std::move(r));
        }
        for (const auto& ls : e.lang_sections) {
          if (std::find(languages.begin(), languages.end(), ls.language) == languages.end()) {
            languages.push_back(ls.language);
          }
          auto& lf = lang_features[ls.language];
          lf.insert(lf.end(), ls.features.begin(), ls.features.end());
          for (const auto& ts : ls.term_sections) {
            auto key = dedup_key(ts.term, policy_.normalization);
            auto& g = groups[{ls.language, key}];
            if (g.empty()) key_order[ls.language].push_back(key);
            g.push_back(Member{n, &ts});
          }
        }
      }

      std::size_t serial = 0;
      for (const auto& lang : languages) {
        LangSection ls{lang, std::move(lang_features[lang]), {}};
        for (const auto& key : key_order[lang]) {
          const auto& group = groups[{lang, key}];
          auto [ts, owners] = merge_terms(group);
          ts.id = term_section_id(entry.id, ++serial);
          for (const auto& m : group) term_alias_[{nodes_[m.node].collection, m.ts->id}] = ts.id;
          term_origin_.push_back({out.size(), entry.lang_sections.size(), ls.term_sections.size(), std::move(owners)});
          ls.term_sections.push_back(std::move(ts));
        }
        entry.lang_sections.push_back(std::move(ls));
      }
      canonicalize(entry);
      out.push_back(std::move(entry));
    }
    return out;
  }

  // Relation targets are scoped to their input collection; rewrite them to
  // fused ids before collections are mixed.
  void rewrite_relations(std::vector<TermEntry>& entries) {
    for (const auto& [e, r, c] : relation_origin_) {
      auto& rel = entries[e].relations[r];
      if (auto it = entry_alias_.find({c, rel.target}); it != entry_alias_.end()) rel.target = it->second;
    }
    for (const auto& origin : term_origin_) {
      auto& ts = entries[origin.entry].lang_sections[origin.lang].term_sections[origin.term];
      for (std::size_t k = 0; k < ts.relations.size(); ++k) {
        auto& rel = ts.relations[k];
        if (auto it = term_alias_.find({origin.owners[k], rel.target}); it != term_alias_.end()) {
          rel.target = it->second;
        }
      }
    }
  }

  void collect_stats(const TermCollection& fused) {
    std::map<ProvenanceKey, ResourceStats> stats;
    std::vector<ProvenanceKey> order;
    for (const auto& c : inputs_) {
      for (const auto& r : c.global().resources) {
        ProvenanceKey key{r.institution, r.database};
        if (stats.emplace(key, ResourceStats{r.institution, r.database, 0, 0, 0, 0}).second) order.push_back(key);
      }
    }
    auto bump = [&](const std::vector<ProvenanceBlock>& blocks, std::size_t ResourceStats::*field) {
      std::set<ProvenanceKey> seen;
      for (const auto& p : blocks) {
        ProvenanceKey key{p.institution, p.database};
        if (!seen.insert(key).second) continue;
        if (auto it = stats.find(key); it != stats.end()) ++(it->second.*field);
      }
    };
    for (const auto& c : inputs_) {
      for (const auto& e : c.entries()) {
        std::vector<ProvenanceBlock> all;
        for_each_provenance(e, [&](const ProvenanceBlock& p) { all.push_back(p); });
        bump(all, &ResourceStats::entries_in);
        for (const auto& ls : e.lang_sections) {
          for (const auto& ts : ls.term_sections) bump(ts.provenance, &ResourceStats::terms_in);
        }
      }
    }
    for (const auto& e : fused.entries()) {
      for (const auto& ls : e.lang_sections) {
        for (const auto& ts : ls.term_sections) {
          bump(ts.provenance, &ResourceStats::terms_out);
          for (const auto& f : ts.features) {
            if (f.category == category::kVariant) bump(f.provenance, &ResourceStats::variants_out);
          }
        }
      }
    }
    for (const auto& key : order) report_.stats.push_back(stats[key]);
  }

  struct RelationOrigin {
    std::size_t entry;
    std::size_t relation;
    std::size_t collection;
  };
  struct TermOrigin {
    std::size_t entry;
    std::size_t lang;
    std::size_t term;
    std::vector<std::size_t> owners;
  };

  std::span<const TermCollection> inputs_;
  const FusionPolicy& policy_;
  FusionReport report_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> bucket_index_;
  std::vector<std::vector<Occurrence>> buckets_;
  std::vector<std::vector<std::size_t>> occurrences_of_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<std::size_t>> partitions_;
  std::vector<std::size_t> partition_of_;
  std::vector<std::string> new_ids_;
  std::map<std::pair<std::size_t, std::string>, std::string> entry_alias_;
  std::map<std::pair<std::size_t, std::string>, std::string> term_alias_;
  std::vector<RelationOrigin> relation_origin_;
  std::vector<TermOrigin> term_origin_;
};

}  // namespace

std::string_view to_string(MatchScope scope) noexcept {
  return scope == MatchScope::PreferredOnly ? "preferredOnly" : "allTerms";
}

std::optional<MatchScope> parse_match_scope(std::string_view text) noexcept {
  if (text == "preferredOnly") return MatchScope::PreferredOnly;
  if (text == "allTerms") return MatchScope::AllTerms;
  return std::nullopt;
}

bool is_preferred(const TermSection& ts) noexcept {
  const auto* status = ts.feature(category::kAdministrativeStatus);
  return !status || status->value == category::kPreferredTerm;
}

std::vector<CandidatePair> match_entries(const TermCollection& a, const TermCollection& b,
                                         const FusionPolicy& policy) {
  const bool all = policy.match_scope == MatchScope::AllTerms;
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  const auto entries_b = b.entries();
  for (std::size_t j = 0; j < entries_b.size(); ++j) {
    for (const auto& ls : entries_b[j].lang_sections) {
      for (const auto& ts : ls.term_sections) {
        if (!all && !is_preferred(ts)) continue;
        auto key = match_key(ls.language, ts.term, policy.normalization);
        if (key.empty()) continue;
        auto& slot = index[key];
        if (slot.empty() || slot.back() != j) slot.push_back(j);
      }
    }
  }

  std::vector<CandidatePair> out;
  const auto entries_a = a.entries();
  for (const auto& ea : entries_a) {
    std::map<std::size_t, CandidatePair> found;
    for (const auto& ls : ea.lang_sections) {
      for (const auto& ts : ls.term_sections) {
        if (!all && !is_preferred(ts)) continue;
        auto key = match_key(ls.language, ts.term, policy.normalization);
        if (key.empty()) continue;
        auto it = index.find(key);
        if (it == index.end()) continue;
        for (auto j : it->second) found.emplace(j, CandidatePair{ea.id, entries_b[j].id, ts.term, ls.language});
      }
    }
    for (auto& [j, pair] : found) out.push_back(std::move(pair));
  }
  return out;
}

FusionResult fuse(std::span<const TermCollection> collections, const FusionPolicy& policy) {
  return Fuser(collections, policy).run();
}

}  // namespace termfuse
