#pragma once

// Independent reference implementations used to derive expected values.

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "termfuse/fusion.hpp"
#include "termfuse/model.hpp"

namespace termfuse::testing {

// Plain disjoint-set forest with recursive find.
class OracleUnionFind {
 public:
  explicit OracleUnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
};

// Quadratic all-pairs matcher with the same output contract as match_entries.
std::vector<CandidatePair> brute_force_pairs(const TermCollection& a, const TermCollection& b,
                                             const FusionPolicy& policy);

// Member = (input index, entry id). Partitions and members sorted.
using Member = std::pair<std::size_t, std::string>;
using Partitioning = std::set<std::set<Member>>;

// Union-find over all entry pairs sharing a preferred (language, key).
Partitioning oracle_partitions(std::span<const TermCollection> inputs, const FusionPolicy& policy);

// Partitions recovered from a fusion report's alias table.
Partitioning reported_partitions(const FusionReport& report);

// Colour-marking DFS over broaderConcept edges of one typology.
bool has_broader_cycle(const TermCollection& collection, const std::string& typology);

// Latin-1 / Latin Extended-A precomposed letters to their base letter.
std::string strip_diacritics_table(const std::string& utf8);

using ProvenanceTuple = std::tuple<std::string, std::string, std::string, std::string, std::string>;
std::multiset<ProvenanceTuple> provenance_multiset(const TermCollection& collection);

// (term, language, category, value) tuples describing a collection's content
// independently of ids and element order. Relations use the smallest term of
// each endpoint entry; provenance-less term features are left out.
using ContentTuple = std::tuple<std::string, std::string, std::string, std::string>;
std::multiset<ContentTuple> content_multiset(const TermCollection& collection);

std::multiset<std::pair<std::string, std::string>> term_multiset(const TermCollection& collection);

}  // namespace termfuse::testing
