#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

namespace termfuse::testing {

namespace {

constexpr const char* kSyllables[] = {"ba", "ce", "di", "fo", "gu", "ka", "le", "mi",
                                      "no", "pu", "ra", "se", "ti", "vo", "zu", "xe"};

// Surface form of a concept name as written by resource `r`. All forms share
// the default normalization key.
std::string surface(const std::string& name, std::size_t r) {
  std::string out = name;
  switch (r % 3) {
    case 0:
      break;
    case 1:
      out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
      break;
    default:
      std::replace(out.begin(), out.end(), ' ', '-');
      break;
  }
  return out;
}

}  // namespace

std::string concept_name(std::size_t id) {
  std::string word;
  std::size_t n = id;
  do {
    word += kSyllables[n % 16];
    n /= 16;
  } while (n);
  return word + " " + kSyllables[id % 7] + "lin";
}

Corpus make_corpus(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  const auto shared_per_resource = static_cast<std::size_t>(options.overlap * static_cast<double>(options.records));
  // A pool 1.5x the per-resource share spreads shared concepts over 2-3 resources.
  const std::size_t pool = options.resources > 1 ? shared_per_resource * 3 / 2 : 0;

  Corpus corpus;
  std::size_t next_private = pool;
  for (std::size_t r = 0; r < options.resources; ++r) {
    std::vector<std::size_t> ids;
    if (pool) {
      std::vector<std::size_t> shared(pool);
      std::iota(shared.begin(), shared.end(), 0);
      std::shuffle(shared.begin(), shared.end(), rng);
      ids.assign(shared.begin(), shared.begin() + static_cast<std::ptrdiff_t>(shared_per_resource));
    }
    while (ids.size() < options.records) ids.push_back(next_private++);
    std::shuffle(ids.begin(), ids.end(), rng);

    SourceResource res;
    res.descriptor.institution = "INST" + std::to_string(r);
    res.descriptor.database = "Synthetic thesaurus " + std::to_string(r);
    res.descriptor.citation = "Synthetic corpus, volume " + std::to_string(r);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const auto id = ids[j];
      SourceRecord rec;
      rec.native_id = "R" + std::to_string(r) + "-" + std::to_string(j);
      rec.descriptor_term = surface(concept_name(id), r);
      rec.language = "en";
      rec.line = j + 3;
      std::uniform_int_distribution<int> coin(0, 9);
      if (coin(rng) < 5) rec.translations.emplace_back("fr", "le " + concept_name(id) + " é" + std::to_string(id));
      const int ufs = coin(rng) % 3;
      for (int k = 0; k < ufs; ++k) {
        rec.uf_terms.push_back("uf " + std::to_string(r) + " " + std::to_string(j) + " " + std::to_string(k));
      }
      if (options.definitions && coin(rng) < 3) {
        rec.definitions.push_back({"Definition of " + concept_name(id) + " by resource " + std::to_string(r),
                                   "Source " + std::to_string(r), {}});
      }
      if (options.relations && j > 0 && coin(rng) < 6) {
        std::uniform_int_distribution<std::size_t> parent(0, j - 1);
        rec.bt.push_back("R" + std::to_string(r) + "-" + std::to_string(parent(rng)));
      }
      res.records.push_back(std::move(rec));
    }
    corpus.resources.push_back(std::move(res));
    corpus.concepts.push_back(std::move(ids));
  }
  return corpus;
}

std::string to_tsf(const SourceResource& resource) {
  std::ostringstream out;
  const auto& d = resource.descriptor;
  out << "RESOURCE: " << d.institution << '|' << d.database << '|' << d.citation.value_or("") << '\n';
  for (const auto& r : resource.records) {
    out << "\nID: " << r.native_id << "\nDE: " << r.descriptor_term << "\nLANG: " << r.language << '\n';
    for (const auto& uf : r.uf_terms) out << "UF: " << uf << '\n';
    if (r.use_target) out << "USE: " << *r.use_target << '\n';
    for (const auto& t : r.bt) out << "BT: " << t << '\n';
    for (const auto& t : r.nt) out << "NT: " << t << '\n';
    for (const auto& t : r.rt) out << "RT: " << t << '\n';
    for (const auto& def : r.definitions) {
      out << "DEF: " << def.text << '\n';
      if (def.source) out << "DEFSRC: " << *def.source << '\n';
    }
    for (const auto& [lang, term] : r.translations) out << "TR: " << lang << '=' << term << '\n';
  }
  return out.str();
}

}  // namespace termfuse::testing
