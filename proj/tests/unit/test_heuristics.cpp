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

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/heuristics.hpp"

namespace spinglass {
namespace {

BetaLadder reference_ladder() { return BetaLadder::geometric(1e-4, 10.0, 25); }

TEST(Ladder, GeometricEndpointsAndOrder) {
  const auto l = reference_ladder();
  ASSERT_EQ(l.size(), 25U);
  EXPECT_DOUBLE_EQ(l.betas().front(), 1e-4);
  EXPECT_DOUBLE_EQ(l.betas().back(), 10.0);
  EXPECT_NEAR(l.betas()[1] / l.betas()[0], l.betas()[24] / l.betas()[23], 1e-9);
  EXPECT_EQ(l.kind(), BetaLadder::Kind::geometric);
  EXPECT_THROW(BetaLadder({}), PreconditionError);
  EXPECT_THROW(BetaLadder({1.0, 1.0}), PreconditionError);
  EXPECT_THROW(BetaLadder({-1.0, 1.0}), PreconditionError);
}

TEST(Ladder, Interpolation) {
  const BetaLadder l({1.0, 3.0});
  EXPECT_DOUBLE_EQ(l.at(0.0), 1.0);
  EXPECT_DOUBLE_EQ(l.at(0.5), 2.0);
  EXPECT_DOUBLE_EQ(l.at(1.0), 3.0);
}

TEST(Annealing, DecoupledSpins) {
  const IsingInstance inst({1.0, -1.0}, {});
  const auto r = simulated_annealing(inst, 1, BetaLadder({50.0}), 3, 9);
  EXPECT_EQ(r.best_state, pack_spins(std::vector<int>{-1, 1}));
  EXPECT_EQ(r.best_energy, -2.0);
  EXPECT_EQ(r.success_count, 3U);
}

TEST(Annealing, Deterministic) {
  const auto inst = testing::random_ising(12, 0.5, 1);
  const auto ladder = BetaLadder::geometric(0.1, 5.0, 10);
  const auto a = simulated_annealing(inst, 50, ladder, 10, 123);
  const auto b = simulated_annealing(inst, 50, ladder, 10, 123);
  EXPECT_EQ(a.best_state, b.best_state);
  EXPECT_EQ(a.best_energy, b.best_energy);
  EXPECT_EQ(a.sample_energies, b.sample_energies);
  EXPECT_EQ(a.success_count, b.success_count);
}

TEST(Annealing, FindsGroundOnRandomInstances) {
  const auto ladder = BetaLadder::geometric(0.5, 3.0, 20);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_ising(12, 0.5, 4000 + seed);
    const double ground = enumerate_spectrum_naive(inst, 1).ground().energy;
    const auto r = simulated_annealing(inst, 200, ladder, 100, seed);
    EXPECT_NEAR(r.best_energy, ground, 1e-9);
    EXPECT_GE(r.success_count, 90U) << "instance " << seed;
    EXPECT_EQ(r.best_energy, ising_energy(inst, r.best_state));
  }
}

TEST(Tempering, EqualBetaSwapAlwaysAccepted) {
  EXPECT_EQ(swap_acceptance(0.7, -3.0, 0.7, 5.0), 1.0);
  EXPECT_EQ(swap_acceptance(0.7, 5.0, 0.7, -3.0), 1.0);
  // Hotter replica holding the lower energy always moves down.
  EXPECT_EQ(swap_acceptance(0.1, -5.0, 1.0, 0.0), 1.0);
  EXPECT_NEAR(swap_acceptance(0.1, 0.0, 1.0, -5.0), std::exp(-4.5), 1e-15);
}

TEST(Tempering, FindsGroundOnRandomInstances) {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_ising(12, 0.5, 5000 + seed);
    const double ground = enumerate_spectrum_naive(inst, 1).ground().energy;
    const auto r = parallel_tempering(inst, reference_ladder(), 500, seed);
    EXPECT_EQ(r.best_energy, ising_energy(inst, r.best_state));
    EXPECT_EQ(r.samples_taken, 500U);
    if (std::abs(r.best_energy - ground) < 1e-9) ++found;
  }
  EXPECT_GE(found, 18);
}

TEST(Tempering, WorkerCountDoesNotChangeResult) {
  const auto inst = testing::random_ising(12, 0.5, 77);
  const auto a = parallel_tempering(inst, reference_ladder(), 50, 3, 1);
  const auto b = parallel_tempering(inst, reference_ladder(), 50, 3, 4);
  EXPECT_EQ(a.best_state, b.best_state);
  EXPECT_EQ(a.sample_energies, b.sample_energies);
}

TEST(Metropolis, EnergyBookkeeping) {
  const auto inst = testing::random_ising(14, 0.6, 31);
  MetropolisChain chain(inst, PackedState{0x2a5}, 17);
  for (int t = 0; t < 200; ++t) {
    chain.sweep(0.3 + 0.01 * t);
    const double e = ising_energy(inst, chain.state());
    EXPECT_NEAR(chain.energy(), e, 1e-9 * (1.0 + std::abs(e)));
  }
}

TEST(Metropolis, DetailedBalanceOnTwoSpins) {
  const IsingInstance inst({0.3, -0.2}, {{0, 1, 0.5}});
  const double beta = 0.8;
  double z = 0.0;
  double weight[4];
  for (std::uint64_t w = 0; w < 4; ++w) {
    weight[w] = std::exp(-beta * ising_energy(inst, PackedState{w}));
    z += weight[w];
  }
  MetropolisChain chain(inst, PackedState{0}, 2024);
  const int samples = 200000;
  int counts[4] = {0, 0, 0, 0};
  for (int t = 0; t < 100; ++t) chain.sweep(beta);
  for (int t = 0; t < samples; ++t) {
    for (int thin = 0; thin < 3; ++thin) chain.sweep(beta);
    ++counts[chain.state().word];
  }
  for (std::uint64_t w = 0; w < 4; ++w) {
    const double p = weight[w] / z;
    const double se = std::sqrt(p * (1.0 - p) / samples);
    EXPECT_NEAR(static_cast<double>(counts[w]) / samples, p, 3.0 * se) << "state " << w;
  }
}

TEST(Tts, Examples) {
  EXPECT_DOUBLE_EQ(*time_to_solution(2.5, 0.99, 0.99), 2.5);
  EXPECT_DOUBLE_EQ(*time_to_solution(2.5, 0.7, 0.7, 3.0), 7.5);
  EXPECT_NEAR(*time_to_solution(1.0, 0.5, 0.99), 6.643856189774724, 1e-9);
  EXPECT_FALSE(time_to_solution(1.0, 0.0, 0.99).has_value());
  EXPECT_DOUBLE_EQ(*time_to_solution(4.0, 1.0, 0.99, 0.5), 2.0);
}

TEST(Tts, DecreasingInSuccessProbability) {
  double prev = *time_to_solution(1.0, 0.01, 0.99);
  for (double p = 0.02; p < 0.995; p += 0.01) {
    const double cur = *time_to_solution(1.0, p, 0.99);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(Tts, DomainErrors) {
  EXPECT_THROW(time_to_solution(0.0, 0.5, 0.99), PreconditionError);
  EXPECT_THROW(time_to_solution(1.0, 1.5, 0.99), PreconditionError);
  EXPECT_THROW(time_to_solution(1.0, 0.5, 1.0), PreconditionError);
  EXPECT_THROW(time_to_solution(1.0, 0.5, 0.9, -1.0), PreconditionError);
}

}  // namespace
}  // namespace spinglass
