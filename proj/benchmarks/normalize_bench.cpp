#include <benchmark/benchmark.h>

#include "termfuse/normalize.hpp"

namespace termfuse::bench {
namespace {

void BM_NormalizeTerm(benchmark::State& state) {
  NormalizationOptions options;
  options.strip_diacritics = state.range(0) != 0;
  options.token_sort = state.range(0) != 0;
  const std::string term = "Transfert intratubaire de gamètes, méthode (GIFT)";
  for (auto _ : state) benchmark::DoNotOptimize(normalize_term(term, options));
}
BENCHMARK(BM_NormalizeTerm)->Arg(0)->Arg(1);

}  // namespace
}  // namespace termfuse::bench
