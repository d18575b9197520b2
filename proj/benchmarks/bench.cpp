#include <benchmark/benchmark.h>

#include "prenex/corpus.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/normalize.hpp"
#include "prenex/oracle.hpp"
#include "prenex/semantics.hpp"

namespace {

const std::vector<prenex::Formula>& corpus() {
  static const auto formulas = [] {
    prenex::RandomCorpusOptions o;
    o.count = 1000;
    return prenex::random_corpus(o);
  }();
  return formulas;
}

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : corpus()) benchmark::DoNotOptimize(prenex::classify(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_Classify);

void BM_ToPrenex(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : corpus()) benchmark::DoNotOptimize(prenex::to_prenex(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_ToPrenex);

void BM_MinimalNormalize(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : corpus()) benchmark::DoNotOptimize(prenex::minimal_normalize(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_MinimalNormalize);

// Fresh graph per formula, as the reachable() entry point does.
void BM_Reachable(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : corpus()) benchmark::DoNotOptimize(prenex::reachable(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_Reachable)->Unit(benchmark::kMillisecond);

void BM_Equivalence(benchmark::State& state) {
  const int domain = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (const auto& f : corpus()) {
      benchmark::DoNotOptimize(prenex::semantically_equivalent(f, prenex::to_prenex(f).result, domain));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_Equivalence)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
