#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ridgeclass/classifier.hpp"
#include "ridgeclass/dwt.hpp"
#include "ridgeclass/features.hpp"
#include "ridgeclass/svd.hpp"

using namespace ridgeclass;

namespace {

GrayImage noise_image(std::size_t rows, std::size_t cols) {
  std::mt19937 rng(7);
  std::vector<std::uint8_t> px(rows * cols);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng() & 0xFF);
  return GrayImage(rows, cols, px);
}

void BM_Decompose(benchmark::State& state) {
  const auto m = noise_image(300, 260).to_matrix();
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(m, levels));
}
BENCHMARK(BM_Decompose)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_SingularValues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = noise_image(n, n * 13 / 15).to_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(m));
}
BENCHMARK(BM_SingularValues)->Arg(60)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ExtractFused(benchmark::State& state) {
  const auto img = noise_image(300, 260);
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(img, 6));
}
BENCHMARK(BM_ExtractFused)->Unit(benchmark::kMillisecond);

void BM_KnnScan(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> val(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<LabeledFeature> entries(n);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i].feature.layout = {260, 19};
    entries[i].feature.values.resize(279);
    for (auto& v : entries[i].feature.values) v = val(rng);
    entries[i].gender = i % 2 ? Gender::Male : Gender::Female;
    entries[i].source_id = "e" + std::to_string(i);
  }
  std::vector<double> query(279);
  for (auto& v : query) v = val(rng);
  const KnnConfig cfg{static_cast<std::size_t>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(knn_classify(query, entries, cfg));
}
BENCHMARK(BM_KnnScan)->Args({1000, 1})->Args({1000, 5})->Args({10000, 1})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
