#pragma once

// Read-side operations over a fused collection.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termfuse/model.hpp"
#include "termfuse/normalize.hpp"
#include "termfuse/pointer.hpp"

namespace termfuse {

// Ids of entries owning a term whose normalized key equals that of `term`,
// in collection order.
std::vector<std::string> lookup(const TermCollection& collection, std::string_view term,
                                std::optional<std::string_view> language = std::nullopt,
                                const NormalizationOptions& options = {});

struct QueryClause {
  std::string language;
  std::vector<std::string> terms;

  bool operator==(const QueryClause&) const = default;
};

struct QueryExpansion {
  std::string concept_id;
  std::vector<QueryClause> clauses;
  std::string rendered;  // ("a" OR "b") OR ("c")
};

// Throws NotFound for an unknown entry and NoTermsInLanguages when none of
// `languages` has a language section in the entry.
QueryExpansion expand_query(const TermCollection& collection, std::string_view entry,
                            std::span<const std::string> languages);

// Keeps the elements documented by (institution[, database]). Terms deduped
// during fusion come back from their variant features. Throws UnknownSource.
TermCollection export_by_source(const TermCollection& collection, std::string_view institution,
                                std::optional<std::string_view> database = std::nullopt);

enum class ChangeKind { Modified, Added, Removed };

std::string_view to_string(ChangeKind kind) noexcept;

struct Change {
  Pointer pointer;
  ChangeKind kind = ChangeKind::Modified;

  bool operator==(const Change&) const = default;
};

struct UpdateSet {
  std::vector<Change> changed;
  std::string snapshot_date;  // YYYY-MM-DD

  // One `<kind> <pointer>` line per change.
  std::string to_text() const;
};

// Per-entry comparison of two versions of a native document, aligned by
// xml:id. Removed and modified entries come in old-document order, then
// additions in new-document order. Throws DialectError for entries without
// xml:id, and whatever parse_gmt throws.
UpdateSet diff_native(std::string_view old_document, std::string_view new_document,
                      std::optional<std::string> file = std::nullopt, std::string snapshot_date = {});

}  // namespace termfuse
