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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "spinglass/model.hpp"

namespace spinglass {

class BetaLadder {
 public:
  enum class Kind { geometric, explicit_values };

  // Strictly increasing, all positive.
  explicit BetaLadder(std::vector<double> betas);
  static BetaLadder geometric(double beta_min, double beta_max, std::size_t count);

  std::span<const double> betas() const noexcept { return betas_; }
  std::size_t size() const noexcept { return betas_.size(); }
  Kind kind() const noexcept { return kind_; }
  // Piecewise-linear interpolation at fraction t in [0, 1].
  double at(double t) const;

 private:
  BetaLadder(std::vector<double> betas, Kind kind);

  std::vector<double> betas_;
  Kind kind_ = Kind::explicit_values;
};

struct McResult {
  PackedState best_state;
  double best_energy = 0.0;
  // Annealing: restarts whose final best reached best_energy.
  // Tempering: sweeps after which the coldest replica sat at best_energy.
  std::size_t success_count = 0;
  std::size_t samples_taken = 0;
  double elapsed = 0.0;
  // Best energy of each sample (restart or sweep).
  std::vector<double> sample_energies;
};

McResult simulated_annealing(const IsingInstance& inst, std::size_t sweeps,
                             const BetaLadder& ladder, std::size_t restarts,
                             std::uint64_t seed);

McResult parallel_tempering(const IsingInstance& inst, const BetaLadder& ladder,
                            std::size_t sweeps, std::uint64_t seed, unsigned workers = 1);

// Acceptance probability of exchanging configurations between two replicas.
double swap_acceptance(double beta_a, double energy_a, double beta_b, double energy_b);

// Single-spin Metropolis chain at a given beta, one RNG stream per chain.
class MetropolisChain {
 public:
  MetropolisChain(const IsingInstance& inst, PackedState start, std::uint64_t seed,
                  std::uint64_t stream = 0);

  // n proposals in index order.
  void sweep(double beta);
  // Exchanges configurations (not RNG streams) with another chain.
  void swap_configuration(MetropolisChain& other) noexcept;

  PackedState state() const;
  double energy() const noexcept { return energy_; }

 private:
  const IsingInstance* inst_;
  std::vector<int> spins_;
  double energy_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// T * log(1 - p_target) / log(1 - p_succ) * scale_ratio. Empty when p_succ is
// zero (the run never succeeds).
std::optional<double> time_to_solution(double runtime, double p_succ, double p_target,
                                       double scale_ratio = 1.0);

}  // namespace spinglass
