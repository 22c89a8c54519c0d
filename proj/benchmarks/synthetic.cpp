#include "synthetic.hpp"

#include <string>

#include "termfuse/ingest.hpp"

namespace termfuse::bench {

std::vector<TermCollection> synthetic_inputs(std::size_t resources, std::size_t records) {
  std::vector<TermCollection> out;
  for (std::size_t r = 0; r < resources; ++r) {
    SourceResource res;
    res.descriptor.institution = "B" + std::to_string(r);
    res.descriptor.database = "Bench " + std::to_string(r);
    for (std::size_t i = 0; i < records; ++i) {
      SourceRecord rec;
      rec.native_id = std::to_string(i);
      const auto concept_id = i % 5 == 0 ? i : i * 31 + r;
      rec.descriptor_term = "concept " + std::to_string(concept_id) + " of kind " + std::to_string(concept_id % 17);
      rec.language = "en";
      rec.uf_terms.push_back("synonym " + std::to_string(r) + "." + std::to_string(i));
      rec.translations.emplace_back("fr", "notion " + std::to_string(concept_id));
      if (i > 0) rec.bt.push_back(std::to_string(i / 2));
      res.records.push_back(std::move(rec));
    }
    out.push_back(pivot(res));
  }
  return out;
}

}  // namespace termfuse::bench
