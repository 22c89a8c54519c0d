#pragma once

#include <string>
#include <string_view>

namespace termfuse {

struct NormalizationOptions {
  bool case_fold = true;
  bool strip_diacritics = false;
  bool strip_punctuation = true;
  bool token_sort = false;  // permuted-form matching

  bool operator==(const NormalizationOptions&) const = default;
};

// Match key for a term. Steps, in order: canonical composition (NFC), case
// folding, diacritic stripping, punctuation to space, whitespace collapse,
// lexicographic token sort. Disabled steps are skipped; composition and
// whitespace collapse always apply.
std::string normalize_term(std::string_view term, const NormalizationOptions& options = {});

}  // namespace termfuse
