#include <algorithm>
#include <set>
#include <tuple>

#include "graph.hpp"
#include "termfuse/categories.hpp"
#include "termfuse/fusion.hpp"

namespace termfuse {

namespace {

void rewrite(std::string& target, const AliasMap& aliases) {
  if (auto it = aliases.find(target); it != aliases.end()) target = it->second;
}

// Locates a cycle inside a cyclic component by walking smallest in-component
// successors from its smallest member. Returns the cycle as (from, to) pairs.
std::vector<std::pair<std::size_t, std::size_t>> find_cycle(const detail::Adjacency& adj,
                                                            const std::vector<std::size_t>& component) {
  const std::set<std::size_t> inside(component.begin(), component.end());
  std::vector<std::size_t> path{component.front()};
  std::vector<std::size_t> seen_at(adj.size(), static_cast<std::size_t>(-1));
  seen_at[component.front()] = 0;
  while (true) {
    const auto u = path.back();
    std::size_t next = static_cast<std::size_t>(-1);
    for (auto w : adj[u]) {
      if (inside.count(w)) next = std::min(next, w);
    }
    if (seen_at[next] != static_cast<std::size_t>(-1)) {
      std::vector<std::pair<std::size_t, std::size_t>> cycle;
      for (std::size_t i = seen_at[next]; i + 1 < path.size(); ++i) cycle.emplace_back(path[i], path[i + 1]);
      cycle.emplace_back(u, next);
      return cycle;
    }
    seen_at[next] = path.size();
    path.push_back(next);
  }
}

}  // namespace

LiftResult lift_relations(const TermCollection& collection, const AliasMap& aliases) {
  LiftResult result{TermCollection(collection.global(), collection.id_prefix()), {}};
  std::vector<TermEntry> entries(collection.entries().begin(), collection.entries().end());

  std::map<std::string, std::size_t, std::less<>> entry_index;
  for (std::size_t i = 0; i < entries.size(); ++i) entry_index.emplace(entries[i].id, i);
  std::map<std::string, std::size_t, std::less<>> term_owner;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& ls : entries[i].lang_sections) {
      for (const auto& ts : ls.term_sections) term_owner.emplace(ts.id, i);
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    std::vector<ConceptRelation> kept;
    for (auto r : e.relations) {
      rewrite(r.target, aliases);
      const std::string category(category_of(r.kind));
      if (r.target == e.id) {
        result.dropped.push_back({e.id, category, r.target, r.typology, DropReason::SelfLoop});
      } else if (!entry_index.count(r.target)) {
        result.dropped.push_back({e.id, category, r.target, r.typology, DropReason::Dangling});
      } else {
        kept.push_back(std::move(r));
      }
    }
    e.relations = std::move(kept);

    for (auto& ls : e.lang_sections) {
      for (auto& ts : ls.term_sections) {
        std::vector<TermRelation> kept_terms;
        for (auto r : ts.relations) {
          rewrite(r.target, aliases);
          const std::string category(category::kDescriptorOf);
          auto owner = term_owner.find(r.target);
          if (owner == term_owner.end()) {
            result.dropped.push_back({ts.id, category, r.target, {}, DropReason::Dangling});
          } else if (owner->second == i) {
            result.dropped.push_back({ts.id, category, r.target, {}, DropReason::OwnEntry});
          } else {
            kept_terms.push_back(std::move(r));
          }
        }
        ts.relations = std::move(kept_terms);
      }
    }
  }

  std::set<std::string> typologies;
  for (const auto& e : entries) {
    for (const auto& r : e.relations) {
      if (r.kind == ConceptRelationKind::Broader) typologies.insert(r.typology);
    }
  }
  for (const auto& typology : typologies) {
    while (true) {
      detail::Adjacency adj(entries.size());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        for (const auto& r : entries[i].relations) {
          if (r.kind == ConceptRelationKind::Broader && r.typology == typology) {
            adj[i].push_back(entry_index.at(r.target));
          }
        }
      }
      const auto components = detail::strongly_connected(adj);
      auto cyclic = std::find_if(components.begin(), components.end(),
                                 [&](const auto& c) { return detail::is_cyclic(adj, c); });
      if (cyclic == components.end()) break;

      const auto cycle = find_cycle(adj, *cyclic);
      const auto worst = *std::max_element(cycle.begin(), cycle.end(), [&](const auto& a, const auto& b) {
        return std::tie(entries[a.first].id, entries[a.second].id) <
               std::tie(entries[b.first].id, entries[b.second].id);
      });
      auto& rels = entries[worst.first].relations;
      const auto& target = entries[worst.second].id;
      auto it = std::find_if(rels.rbegin(), rels.rend(), [&](const ConceptRelation& r) {
        return r.kind == ConceptRelationKind::Broader && r.typology == typology && r.target == target;
      });
      result.dropped.push_back({entries[worst.first].id, std::string(category::kBroaderConcept), target, typology,
                                DropReason::CycleIntroduced});
      rels.erase(std::next(it).base());
    }
  }

  for (auto& e : entries) result.collection.add_entry(std::move(e));
  return result;
}

}  // namespace termfuse
