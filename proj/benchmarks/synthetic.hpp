#pragma once

#include <cstddef>
#include <vector>

#include "termfuse/model.hpp"

namespace termfuse::bench {

// `resources` pivoted thesauri of `records` descriptors each; every fifth
// descriptor names a concept shared by all resources.
std::vector<TermCollection> synthetic_inputs(std::size_t resources, std::size_t records);

}  // namespace termfuse::bench
