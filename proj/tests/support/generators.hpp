#pragma once

// Random valid collections for round-trip and property tests.

#include <random>
#include <string>

#include "termfuse/model.hpp"

namespace termfuse::testing {

// Valid under check_structure, in canonical feature order, with ids
// assigned. Values mix XML metacharacters, non-ASCII text, tabs, newlines
// and carriage returns; features carry annotations, sources and provenance.
TermCollection random_collection(std::mt19937_64& rng);

std::string random_text(std::mt19937_64& rng, std::size_t max_pieces = 4);

}  // namespace termfuse::testing
