// Copyright 2026 The spinglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "spinglass/bruteforce.hpp"

namespace spinglass {
namespace {

void BM_SpectrumSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = testing::random_qubo(n, 0.5, 1);
  SearchConfig cfg;
  cfg.k = static_cast<std::size_t>(state.range(1));
  cfg.chunk_exp = 12;
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_search(inst, cfg));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_SpectrumSearch)->Args({18, 1})->Args({18, 100})->Args({20, 100})->Unit(benchmark::kMillisecond);

void BM_GraySearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = testing::random_qubo(n, 0.5, 2);
  SearchConfig cfg;
  cfg.chunk_exp = 10;
  cfg.cache_depth = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ground_search_gray(inst, cfg));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_GraySearch)->Args({22, 0})->Args({22, 4})->Args({22, 8})->Args({24, 8})->Unit(benchmark::kMillisecond);

void BM_SelectKLowest(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> energies(size);
  for (auto& e : energies) e = u(rng);
  std::vector<std::uint64_t> states(size);
  for (std::size_t i = 0; i < size; ++i) states[i] = i;
  for (auto _ : state) {
    state.PauseTiming();
    auto e = energies;
    auto s = states;
    state.ResumeTiming();
    select_k_lowest(e, s, k);
    benchmark::DoNotOptimize(e.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}
BENCHMARK(BM_SelectKLowest)->Args({1 << 16, 100})->Args({1 << 20, 100})->Args({1 << 20, 10000});

}  // namespace
}  // namespace spinglass

BENCHMARK_MAIN();
