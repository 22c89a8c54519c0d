#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "termfuse/fusion.hpp"
#include "termfuse/termbase.hpp"

namespace termfuse::bench {
namespace {

void BM_Fuse(benchmark::State& state) {
  const auto inputs = synthetic_inputs(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuse(inputs));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_Fuse)->Arg(100)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_MatchEntries(benchmark::State& state) {
  const auto inputs = synthetic_inputs(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(match_entries(inputs[0], inputs[1]));
}
BENCHMARK(BM_MatchEntries)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ExportBySource(benchmark::State& state) {
  const auto inputs = synthetic_inputs(3, static_cast<std::size_t>(state.range(0)));
  const auto fused = fuse(inputs).collection;
  for (auto _ : state) benchmark::DoNotOptimize(export_by_source(fused, "B1"));
}
BENCHMARK(BM_ExportBySource)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace termfuse::bench
