#pragma once

// Cross-resource concept matching and fusion with per-element provenance.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termfuse/model.hpp"
#include "termfuse/normalize.hpp"

namespace termfuse {

enum class MatchScope { PreferredOnly, AllTerms };

std::string_view to_string(MatchScope scope) noexcept;
std::optional<MatchScope> parse_match_scope(std::string_view text) noexcept;

struct FusionPolicy {
  MatchScope match_scope = MatchScope::PreferredOnly;
  NormalizationOptions normalization;
  std::string collection_prefix = "BV";
  std::string title;  // empty: the first input's title
};

// A term section is preferred unless its administrativeStatus says otherwise.
bool is_preferred(const TermSection& ts) noexcept;

struct CandidatePair {
  std::string a_entry;
  std::string b_entry;
  std::string term;  // witnessing term, as written in `a`
  std::string language;

  bool operator==(const CandidatePair&) const = default;
};

// Entry pairs sharing a (language, normalized key), restricted to preferred
// terms under PreferredOnly. One pair per entry pair, ordered by position in
// `a` then `b`; the witness is the first shared term in `a`.
std::vector<CandidatePair> match_entries(const TermCollection& a, const TermCollection& b,
                                         const FusionPolicy& policy = {});

struct MergeNote {
  std::size_t host_collection = 0;
  std::string host;
  std::size_t absorbed_collection = 0;
  std::string absorbed;
  std::string term;
  std::string language;

  bool operator==(const MergeNote&) const = default;
};

enum class ConflictKind { AmbiguousMatch, NonPreferredBridge };

struct ConflictNote {
  ConflictKind kind = ConflictKind::AmbiguousMatch;
  std::size_t collection = 0;
  std::string entry;                    // old id of the bridging entry
  std::vector<std::string> candidates;  // fused ids of the partitions it touches
  std::string term;
  std::string language;

  bool operator==(const ConflictNote&) const = default;
};

enum class DropReason { SelfLoop, Dangling, OwnEntry, CycleIntroduced };

struct DroppedEdge {
  std::string source;  // entry or term section id
  std::string category;
  std::string target;
  std::string typology;  // empty for term relations
  DropReason reason = DropReason::Dangling;

  bool operator==(const DroppedEdge&) const = default;
};

struct AliasNote {
  std::size_t collection = 0;
  std::string old_id;
  std::string new_id;

  bool operator==(const AliasNote&) const = default;
};

struct ResourceStats {
  std::string institution;
  std::string database;
  std::size_t entries_in = 0;
  std::size_t terms_in = 0;
  std::size_t terms_out = 0;
  std::size_t variants_out = 0;

  bool operator==(const ResourceStats&) const = default;
};

struct FusionReport {
  std::vector<MergeNote> merges;
  std::vector<ConflictNote> conflicts;
  std::vector<DroppedEdge> dropped_edges;
  std::vector<AliasNote> aliases;  // entry ids only
  std::vector<ResourceStats> stats;
  std::size_t entries_in = 0;
  std::size_t partitions = 0;

  // Line-oriented text: MERGE, CONFLICT, DROPPED-EDGE and ALIAS lines, then
  // a STATS block.
  std::string to_text() const;
};

struct FusionResult {
  TermCollection collection;
  FusionReport report;
};

// Partitions entries by the transitive closure of candidate matches and
// merges each partition into one entry. Throws RegistryClash when two inputs
// register the same (institution, database) and InvariantViolation if the
// result breaks the model.
FusionResult fuse(std::span<const TermCollection> collections, const FusionPolicy& policy = {});

using AliasMap = std::map<std::string, std::string, std::less<>>;

struct LiftResult {
  TermCollection collection;
  std::vector<DroppedEdge> dropped;
};

// Rewrites relation targets through `aliases` (entry and term section ids),
// then drops self-loops, dangling targets and same-entry descriptorOf links,
// and breaks broader cycles per typology by removing the lexicographically
// greatest (source, target) edge of each cycle found.
LiftResult lift_relations(const TermCollection& collection, const AliasMap& aliases = {});

}  // namespace termfuse
