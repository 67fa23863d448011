#include <semtab/heuristics.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

semtab::NormalizedTable make_table(std::size_t rows, std::size_t cols) {
  static const char* words[] = {"boat", "shop", "museum", "sensation", "palpitation",
                                "heartbeat", "lovely", "joyous", "12.5", "users"};
  std::mt19937 rng(3);
  std::vector<std::vector<std::string>> grid(rows, std::vector<std::string>(cols));
  for (auto& row : grid) {
    for (auto& cell : row) {
      cell = std::string(words[rng() % 10]) + " " + words[rng() % 10];
    }
  }
  return semtab::NormalizedTable("bench", "", std::move(grid));
}

void BM_TableScore(benchmark::State& state, semtab::Similarity sim) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto table = make_table(n, n);
  const semtab::Statement s{"bench", "s", "The palpitation on the boat was lovely in 12.5 cases",
                            std::nullopt};
  for (auto _ : state) {
    benchmark::DoNotOptimize(semtab::table_score(sim, s, table).total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

BENCHMARK_CAPTURE(BM_TableScore, binary, semtab::Similarity::binary_match())->Range(4, 64);
BENCHMARK_CAPTURE(BM_TableScore, edit, semtab::Similarity::edit_distance())->Range(4, 64);

} // namespace
