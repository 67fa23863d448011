#include <semtab/metrics.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_F1ThreeWay(benchmark::State& state) {
  const auto tables = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  semtab::LabelMap gold;
  semtab::LabelMap pred;
  for (std::size_t t = 0; t < tables; ++t) {
    for (std::size_t s = 0; s < 10; ++s) {
      const semtab::StatementKey key{"T" + std::to_string(t), "s" + std::to_string(s)};
      gold[key] = *semtab::label_from_int(rng() % 3);
      pred[key] = *semtab::label_from_int(rng() % 3);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(semtab::f1_3way(gold, pred).overall_f1);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(gold.size()));
}
BENCHMARK(BM_F1ThreeWay)->Range(8, 4096);

} // namespace
