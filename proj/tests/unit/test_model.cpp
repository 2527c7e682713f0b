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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/instance_io.hpp"
#include "spinglass/model.hpp"

namespace spinglass {
namespace {

using testing::dense_ising_energy;
using testing::dense_qubo_energy;
using testing::three_spin_ising;
using testing::three_var_qubo;

PackedState spins(int s1, int s2, int s3) {
  const int v[] = {s1, s2, s3};
  return pack_spins(v);
}

PackedState bits(int q1, int q2, int q3) {
  const std::uint8_t v[] = {static_cast<std::uint8_t>(q1), static_cast<std::uint8_t>(q2),
                            static_cast<std::uint8_t>(q3)};
  return pack_bits(v);
}

TEST(IsingEnergy, ThreeSpinTable) {
  const auto inst = three_spin_ising();
  EXPECT_EQ(ising_energy(inst, spins(-1, -1, -1)), -1.0);
  EXPECT_EQ(ising_energy(inst, spins(-1, -1, 1)), 7.0);
  EXPECT_EQ(ising_energy(inst, spins(-1, 1, -1)), -5.0);
  EXPECT_EQ(ising_energy(inst, spins(-1, 1, 1)), -5.0);
  EXPECT_EQ(ising_energy(inst, spins(1, -1, -1)), -5.0);
  EXPECT_EQ(ising_energy(inst, spins(1, -1, 1)), 3.0);
  EXPECT_EQ(ising_energy(inst, spins(1, 1, -1)), 3.0);
  EXPECT_EQ(ising_energy(inst, spins(1, 1, 1)), 3.0);
}

TEST(IsingEnergy, EmptyCoefficientsGiveZero) {
  const IsingInstance inst(std::vector<double>(4, 0.0), {});
  for (std::uint64_t w = 0; w < 16; ++w) EXPECT_EQ(ising_energy(inst, PackedState{w}), 0.0);
}

TEST(IsingEnergy, RejectsBitsBeyondN) {
  EXPECT_THROW(ising_energy(three_spin_ising(), PackedState{8}), InvalidState);
  EXPECT_THROW(qubo_energy(three_var_qubo(), PackedState{1U << 5}), InvalidState);
}

TEST(QuboEnergy, ExampleTable) {
  const auto inst = three_var_qubo();
  EXPECT_EQ(qubo_energy(inst, bits(0, 0, 0)), 0.0);
  EXPECT_EQ(qubo_energy(inst, bits(0, 0, 1)), 8.0);
  EXPECT_EQ(qubo_energy(inst, bits(0, 1, 0)), -4.0);
  EXPECT_EQ(qubo_energy(inst, bits(0, 1, 1)), -4.0);
  EXPECT_EQ(qubo_energy(inst, bits(1, 0, 0)), -4.0);
  EXPECT_EQ(qubo_energy(inst, bits(1, 0, 1)), 4.0);
  EXPECT_EQ(qubo_energy(inst, bits(1, 1, 0)), 4.0);
  EXPECT_EQ(qubo_energy(inst, bits(1, 1, 1)), 4.0);
}

TEST(Conversion, ThreeSpinCoefficients) {
  const auto q = ising_to_qubo(three_spin_ising());
  ASSERT_EQ(q.size(), 3U);
  EXPECT_EQ(q.linear(0), -4.0);
  EXPECT_EQ(q.linear(1), -4.0);
  EXPECT_EQ(q.linear(2), 8.0);
  EXPECT_EQ(q.quadratic(0, 1), 12.0);
  EXPECT_EQ(q.quadratic(1, 2), -8.0);
  EXPECT_EQ(q.quadratic(0, 2), 0.0);
  // Raw F - H is +1; the stored constant cancels it.
  EXPECT_EQ(q.offset(), -1.0);
  const auto raw = QuboInstance({-4.0, -4.0, 8.0}, {{0, 1, 12.0}, {1, 2, -8.0}});
  for (std::uint64_t w = 0; w < 8; ++w) {
    EXPECT_EQ(qubo_energy(raw, PackedState{w}) - ising_energy(three_spin_ising(), PackedState{w}),
              1.0);
    EXPECT_EQ(qubo_energy(q, PackedState{w}), ising_energy(three_spin_ising(), PackedState{w}));
  }
}

TEST(Conversion, EmptyInstance) {
  const auto q = ising_to_qubo(IsingInstance{});
  EXPECT_EQ(q.size(), 0U);
  EXPECT_EQ(q.offset(), 0.0);
}

TEST(Conversion, RandomGapIsConstant) {
  const auto inst = testing::random_ising(8, 0.6, 11);
  const auto q = ising_to_qubo(inst);
  const auto raw = QuboInstance({q.linear().begin(), q.linear().end()},
                                {q.quadratic().begin(), q.quadratic().end()});
  const double gap = qubo_energy(raw, PackedState{0}) - ising_energy(inst, PackedState{0});
  for (std::uint64_t w = 0; w < 256; ++w) {
    const double e = ising_energy(inst, PackedState{w});
    EXPECT_NEAR(qubo_energy(raw, PackedState{w}) - e, gap, 1e-12);
    EXPECT_NEAR(qubo_energy(q, PackedState{w}), e, 1e-12 * (1.0 + std::abs(e)));
  }
}

TEST(Conversion, InverseOfExample) {
  const auto ising = qubo_to_ising(ising_to_qubo(three_spin_ising()));
  EXPECT_EQ(ising.linear(0), 1.0);
  EXPECT_EQ(ising.linear(1), -1.0);
  EXPECT_EQ(ising.linear(2), 2.0);
  EXPECT_EQ(ising.quadratic(0, 1), 3.0);
  EXPECT_EQ(ising.quadratic(1, 2), -2.0);
  EXPECT_EQ(ising.offset(), 0.0);
}

TEST(Conversion, ZeroQuboGivesZeroIsing) {
  const auto ising = qubo_to_ising(QuboInstance(std::vector<double>(5, 0.0), {}));
  for (double h : ising.linear()) EXPECT_EQ(h, 0.0);
  EXPECT_EQ(ising.edge_count(), 0U);
  EXPECT_EQ(ising.offset(), 0.0);
}

TEST(Conversion, RoundTripCoefficients) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_ising(10, 0.5, seed);
    const auto back = qubo_to_ising(ising_to_qubo(inst));
    for (std::size_t i = 0; i < inst.size(); ++i) {
      EXPECT_NEAR(back.linear(i), inst.linear(i), 1e-12 * (1.0 + std::abs(inst.linear(i))));
    }
    ASSERT_EQ(back.edge_count(), inst.edge_count());
    for (const auto& c : inst.quadratic()) {
      EXPECT_NEAR(back.quadratic(c.i, c.j), c.value, 1e-12 * (1.0 + std::abs(c.value)));
    }
    EXPECT_NEAR(back.offset(), 0.0, 1e-12);
  }
}

TEST(Conversion, SpectraAgreeUnderStateMapping) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + rng() % 11;
    const auto q = testing::random_qubo(n, 0.5, 1000 + seed);
    const auto ising = qubo_to_ising(q);
    const std::size_t k = std::size_t{1} << n;
    const auto sq = enumerate_spectrum_naive(q, k);
    const auto si = enumerate_spectrum_naive(ising, k);
    for (std::uint64_t w = 0; w < k; ++w) {
      const double e = qubo_energy(q, PackedState{w});
      EXPECT_NEAR(ising_energy(ising, PackedState{w}), e, 1e-12 * (1.0 + std::abs(e)));
    }
    // Argmin sets agree.
    const double emin = sq.ground().energy;
    for (std::uint64_t w = 0; w < k; ++w) {
      const bool min_q = qubo_energy(q, PackedState{w}) <= emin + 1e-12;
      const bool min_i = ising_energy(ising, PackedState{w}) <= si.ground().energy + 1e-12;
      EXPECT_EQ(min_q, min_i);
    }
  }
}

TEST(Matrix, ExampleEntries) {
  const auto m = to_matrix(three_var_qubo());
  EXPECT_EQ(m(0, 0), -4.0);
  EXPECT_EQ(m(1, 1), -4.0);
  EXPECT_EQ(m(2, 2), 8.0);
  EXPECT_EQ(m(0, 1), 12.0);
  EXPECT_EQ(m(1, 0), 12.0);
  EXPECT_EQ(m(1, 2), -8.0);
  EXPECT_EQ(m(2, 1), -8.0);
  EXPECT_EQ(m(0, 2), 0.0);
}

TEST(Matrix, ZeroInstance) {
  EXPECT_TRUE(to_matrix(QuboInstance(std::vector<double>(3, 0.0), {})).isZero());
}

TEST(Matrix, MatchesMapFormOnRandomStates) {
  const auto q = testing::random_qubo(10, 0.5, 77);
  const auto m = to_matrix(q);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    const PackedState s{rng() & 1023U};
    EXPECT_NEAR(matrix_energy(m, q.offset(), s), qubo_energy(q, s), 1e-12);
  }
}

TEST(Matrix, AllStatesUpToTwelve) {
  const auto q = testing::random_qubo(12, 0.4, 78);
  const auto m = to_matrix(q);
  for (std::uint64_t w = 0; w < 4096; ++w) {
    EXPECT_NEAR(matrix_energy(m, q.offset(), PackedState{w}), dense_qubo_energy(q, w), 1e-12);
  }
}

TEST(Naive, ThreeSpinLowestFive) {
  const auto s = enumerate_spectrum_naive(three_spin_ising(), 5);
  ASSERT_EQ(s.size(), 5U);
  const double expected[] = {-5, -5, -5, -1, 3};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s[i].energy, expected[i]);
  // Ties ordered by word.
  EXPECT_LT(s[0].state.word, s[1].state.word);
  EXPECT_LT(s[1].state.word, s[2].state.word);
}

TEST(Naive, FullEnumerationIsSorted) {
  const auto inst = testing::random_ising(6, 0.7, 3);
  const auto s = enumerate_spectrum_naive(inst, 64);
  ASSERT_EQ(s.size(), 64U);
  EXPECT_TRUE(std::is_sorted(s.entries.begin(), s.entries.end(), entry_less));
  for (const auto& e : s.entries) EXPECT_NEAR(e.energy, dense_ising_energy(inst, e.state.word), 1e-12);
}

TEST(Naive, RefusesLargeN) {
  EXPECT_THROW(enumerate_spectrum_naive(IsingInstance(std::vector<double>(30, 0.0), {}), 1),
               SizingError);
}

TEST(Naive, EdgeOrderDoesNotMatter) {
  const auto inst = testing::random_ising(9, 0.6, 21);
  std::vector<Coupling> edges(inst.quadratic().begin(), inst.quadratic().end());
  std::reverse(edges.begin(), edges.end());
  for (auto& e : edges) std::swap(e.i, e.j);
  const IsingInstance permuted({inst.linear().begin(), inst.linear().end()}, edges);
  EXPECT_EQ(enumerate_spectrum_naive(inst, 40), enumerate_spectrum_naive(permuted, 40));
}

TEST(Instance, RejectsSelfAndDuplicateEdges) {
  EXPECT_THROW(IsingInstance({0, 0}, {{1, 1, 1.0}}), InvalidInstance);
  EXPECT_THROW(IsingInstance({0, 0}, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidInstance);
  EXPECT_THROW(QuboInstance({0, 0}, {{0, 2, 1.0}}), InvalidInstance);
}

TEST(Builder, AccumulatesRepeatedTerms) {
  ModelBuilder b(3);
  b.add_linear(0, 1.0).add_linear(0, 2.0).add_quadratic(2, 1, 1.5).add_quadratic(1, 2, 0.5);
  const auto q = b.build_qubo();
  EXPECT_EQ(q.linear(0), 3.0);
  EXPECT_EQ(q.quadratic(1, 2), 2.0);
}

TEST(TextFormat, ParsesExampleFile) {
  const auto inst = parse_ising_text(
      "# three spins\n3 5\n1 1 1\n2 2 -1\n3 3 2\n1 2 3\n2 3 -2\n");
  EXPECT_EQ(inst, three_spin_ising());
}

TEST(TextFormat, RoundTripKeepsOffset) {
  const auto q = ising_to_qubo(testing::random_ising(7, 0.5, 9));
  EXPECT_EQ(parse_qubo_text(format_text(q)), q);
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_ising_text(""), ParseError);
  EXPECT_THROW(parse_ising_text("2 1\n1 3 1.0\n"), ParseError);
  EXPECT_THROW(parse_ising_text("2 2\n1 2 1.0\n2 1 1.0\n"), ParseError);
  EXPECT_THROW(parse_ising_text("2 2\n1 2 1.0\n"), ParseError);
  EXPECT_THROW(parse_ising_text("2 1\n1 2 x\n"), ParseError);
}

}  // namespace
}  // namespace spinglass
