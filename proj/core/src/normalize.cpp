#include "termfuse/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <vector>

#include "termfuse/error.hpp"

namespace termfuse {

namespace {

const icu::Normalizer2& normalizer(bool compose) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n =
      compose ? icu::Normalizer2::getNFCInstance(status) : icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error(ErrorKind::InvariantViolation, std::string("ICU normalizer unavailable: ") + u_errorName(status));
  }
  return *n;
}

icu::UnicodeString apply(const icu::Normalizer2& n, const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  auto out = n.normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvariantViolation, std::string("normalization failed: ") + u_errorName(status));
  }
  return out;
}

template <typename Keep, typename Map>
icu::UnicodeString filter(const icu::UnicodeString& s, Keep keep, Map map) {
  icu::UnicodeString out;
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (keep(c)) out.append(map(c));
  }
  return out;
}

}  // namespace

std::string normalize_term(std::string_view term, const NormalizationOptions& options) {
  auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(term.data(), static_cast<int32_t>(term.size())));
  text = apply(normalizer(true), text);
  if (options.case_fold) text.foldCase();
  if (options.strip_diacritics) {
    text = apply(normalizer(false), text);
    text = filter(text, [](UChar32 c) { return u_charType(c) != U_NON_SPACING_MARK; },
                  [](UChar32 c) { return c; });
    text = apply(normalizer(true), text);
  }
  if (options.strip_punctuation) {
    text = filter(text, [](UChar32) { return true; },
                  [](UChar32 c) -> UChar32 { return u_ispunct(c) ? static_cast<UChar32>(' ') : c; });
  }

  std::vector<std::string> tokens;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) tokens.push_back(std::move(token));
    token.clear();
  };
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      flush();
    } else {
      icu::UnicodeString(c).toUTF8String(token);
    }
  }
  flush();
  if (options.token_sort) std::sort(tokens.begin(), tokens.end());

  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += ' ';
    key += tokens[i];
  }
  return key;
}

}  // namespace termfuse
