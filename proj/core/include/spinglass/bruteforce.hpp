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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spinglass/model.hpp"

namespace spinglass {

struct SearchConfig {
  // Chunk exponent. The spectrum search evaluates 2^chunk_exp states per
  // chunk; the Gray solver keeps 2^chunk_exp suffix lanes.
  unsigned chunk_exp = 16;
  std::size_t k = 1;
  unsigned workers = 1;
  // Number of lowest prefix bits whose suffix contributions are tabulated.
  unsigned cache_depth = 4;
  std::size_t steps_per_batch = 4096;
  // Variables fixed per subproblem by the Gray solver (2^fixed_vars runs).
  unsigned fixed_vars = 0;
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
  // Gray lanes recompute their energy exactly after this many flips.
  std::uint64_t resync_interval = std::uint64_t{1} << 20;
  // Skip chunks whose certified lower bound exceeds the current k-th energy.
  bool prune = false;
  // Block width used by the pruning bound.
  unsigned prune_block = 8;
};

struct ChunkRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;

  friend bool operator==(const ChunkRange&, const ChunkRange&) = default;
};

// States [2^m * j, 2^m * (j + 1) - 1] of an n-variable problem.
ChunkRange chunk_range(unsigned n, unsigned m, std::uint64_t j);

// Reorders both arrays so the first k positions hold the k lowest entries by
// (energy, state). The prefix itself is not sorted.
void select_k_lowest(std::span<double> energies, std::span<std::uint64_t> states,
                     std::size_t k);

// Exact k-lowest spectrum. Ising input is searched through its QUBO form and
// reported with Ising energies.
Spectrum spectrum_search(const QuboInstance& inst, const SearchConfig& cfg);
Spectrum spectrum_search(const IsingInstance& inst, const SearchConfig& cfg);

// Bytes held by the merge buffers of spectrum_search.
std::size_t spectrum_search_memory(const SearchConfig& cfg);

constexpr std::uint64_t gray_code(std::uint64_t i) noexcept { return i ^ (i >> 1); }

// 1-based position of the bit that differs between gray_code(i) and
// gray_code(i + 1).
constexpr unsigned flip_index(std::uint64_t i) noexcept {
  return static_cast<unsigned>(std::countr_zero(gray_code(i) ^ gray_code(i + 1))) + 1;
}

// Energy change of flipping variable kbit (1-based).
double delta_energy(const QuboInstance& inst, PackedState q, std::size_t kbit);

struct DeltaParts {
  double prefix = 0.0;
  double suffix = 0.0;
};

// Splits delta_energy for a prefix variable into the contribution of prefix
// neighbours (with the linear term) and of the top suffix_bits variables.
DeltaParts split_delta(const QuboInstance& inst, PackedState q, std::size_t kbit,
                       unsigned suffix_bits);

struct GroundState {
  PackedState state;
  double energy = 0.0;

  friend bool operator==(const GroundState&, const GroundState&) = default;
};

// Per-lane arrays, entry s belongs to suffix s.
struct GrayState {
  std::vector<std::uint64_t> current_states;
  std::vector<double> current_energies;
  std::vector<std::uint64_t> best_states;
  std::vector<double> best_energies;
};

// Walks all prefixes of the low n - chunk_exp variables in Gray order, with
// one lane per assignment of the high chunk_exp variables.
class GrayEngine {
 public:
  GrayEngine(const QuboInstance& inst, const SearchConfig& cfg);

  std::uint64_t total_steps() const noexcept { return total_steps_; }
  std::uint64_t steps_done() const noexcept { return steps_done_; }
  bool done() const noexcept { return steps_done_ == total_steps_; }

  // Advances by at most max_steps flips.
  void run(std::uint64_t max_steps);
  void run_to_end() { run(total_steps_ - steps_done_); }
  // Recomputes every lane's energy from scratch.
  void resync();

  const GrayState& state() const noexcept { return state_; }
  GroundState best() const;

 private:
  void run_batch(std::size_t steps);

  QuboInstance inst_;
  SearchConfig cfg_;
  unsigned prefix_bits_;
  unsigned suffix_bits_;
  std::uint64_t total_steps_;
  std::uint64_t steps_done_ = 0;
  std::uint64_t since_resync_ = 0;
  std::uint64_t prefix_word_ = 0;
  // Sum of a_ij q_j over prefix variables j, for every i.
  std::vector<double> prefix_field_;
  // suffix_neighbors_[p]: (suffix position, a) for each suffix neighbour of p.
  std::vector<std::vector<std::pair<unsigned, double>>> suffix_neighbors_;
  // cache_[p * lanes + s]: sum of a over set suffix bits of s adjacent to p.
  std::vector<double> cache_;
  GrayState state_;
};

GroundState ground_search_gray(const QuboInstance& inst, const SearchConfig& cfg);
// Reports the Ising energy of the QUBO minimizer.
GroundState ground_search_gray(const IsingInstance& inst, const SearchConfig& cfg);

struct FixedValue {
  std::size_t index = 0;
  bool value = false;
};

// Instance on the unassigned variables, kept in ascending index order. Fixed
// terms move into the linear coefficients and the offset.
QuboInstance fix_variables(const QuboInstance& inst, std::span<const FixedValue> assignment);

// Inverse index map of fix_variables: the original index of each kept variable.
std::vector<std::size_t> free_variables(std::size_t n, std::span<const FixedValue> assignment);

}  // namespace spinglass
