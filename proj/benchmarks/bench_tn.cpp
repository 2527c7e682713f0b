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

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "spinglass/tn.hpp"

namespace spinglass::tn {
namespace {

ClusterLattice lattice(std::size_t side, std::size_t m) {
  return ClusterLattice(testing::random_lattice_ising(side, side, m, 9), side, side,
                        testing::block_clusters(side * side, m));
}

void BM_BuildPeps(benchmark::State& state) {
  const auto lat = lattice(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_peps(lat, 3.0));
}
BENCHMARK(BM_BuildPeps)->Arg(3)->Arg(5);

void BM_BoundaryContraction(benchmark::State& state) {
  const auto lat = lattice(static_cast<std::size_t>(state.range(0)), 1);
  const auto net = build_peps(lat, 1.0);
  const auto chi = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(contract_boundary(net, chi));
}
BENCHMARK(BM_BoundaryContraction)->Args({4, 4})->Args({6, 8})->Args({6, 16})->Unit(benchmark::kMillisecond);

void BM_BranchAndBound(benchmark::State& state) {
  const auto lat = lattice(3, 2);
  TnConfig cfg;
  cfg.chi = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(branch_and_bound(lat, cfg));
}
BENCHMARK(BM_BranchAndBound)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MpsImaginaryTime(benchmark::State& state) {
  const auto inst = testing::random_ising(12, 1.0, 5);
  MpsConfig cfg;
  cfg.bond_dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mps_imaginary_time(inst, cfg));
}
BENCHMARK(BM_MpsImaginaryTime)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace spinglass::tn
