#include <semtab/text.hpp>

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

const std::vector<std::string> kWords{"relational", "conditional", "generalizations", "hopefulness",
                                      "sensations", "palpitation", "agreed", "hopping", "probate",
                                      "electrical", "controlling", "adjustable"};

void BM_PorterStem(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& w : kWords) {
      benchmark::DoNotOptimize(semtab::porter_stem(w));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kWords.size()));
}
BENCHMARK(BM_PorterStem);

void BM_Canonicalize(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& w : kWords) {
      benchmark::DoNotOptimize(semtab::canonicalize(w));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kWords.size()));
}
BENCHMARK(BM_Canonicalize);

void BM_Tokenize(benchmark::State& state) {
  const std::string text =
      "The rate of palpitation was 12.5 per minute, higher than the 1,000 users reported in 2019.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(semtab::tokenize(text, true));
  }
}
BENCHMARK(BM_Tokenize);

} // namespace
