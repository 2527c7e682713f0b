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

#include "spinglass/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "spinglass/errors.hpp"

namespace spinglass {
namespace {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

bool better(double e, PackedState s, double best_e, PackedState best_s) {
  return e < best_e || (e == best_e && s < best_s);
}

double tolerance(double e) { return 1e-9 * (1.0 + std::abs(e)); }

void check_packable(const IsingInstance& inst) {
  if (inst.size() == 0 || inst.size() > 64) {
    throw PreconditionError("Monte Carlo solvers need 1 <= n <= 64");
  }
}

}  // namespace

BetaLadder::BetaLadder(std::vector<double> betas) : BetaLadder(std::move(betas), Kind::explicit_values) {}

BetaLadder::BetaLadder(std::vector<double> betas, Kind kind) : betas_(std::move(betas)), kind_(kind) {
  if (betas_.empty()) throw PreconditionError("beta ladder is empty");
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    if (!(betas_[i] > 0.0)) throw PreconditionError("beta values must be positive");
    if (i > 0 && !(betas_[i] > betas_[i - 1])) {
      throw PreconditionError("beta ladder must be strictly increasing");
    }
  }
}

BetaLadder BetaLadder::geometric(double beta_min, double beta_max, std::size_t count) {
  if (count == 0) throw PreconditionError("beta ladder is empty");
  if (!(beta_min > 0.0) || !(beta_max >= beta_min)) {
    throw PreconditionError("geometric ladder needs 0 < beta_min <= beta_max");
  }
  std::vector<double> b(count);
  if (count == 1) {
    b[0] = beta_max;
  } else {
    const double ratio = std::pow(beta_max / beta_min, 1.0 / static_cast<double>(count - 1));
    for (std::size_t i = 0; i < count; ++i) b[i] = beta_min * std::pow(ratio, static_cast<double>(i));
    b.back() = beta_max;
  }
  return BetaLadder(std::move(b), Kind::geometric);
}

double BetaLadder::at(double t) const {
  if (betas_.size() == 1) return betas_[0];
  const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(betas_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= betas_.size()) return betas_.back();
  const double frac = pos - static_cast<double>(lo);
  return betas_[lo] + frac * (betas_[lo + 1] - betas_[lo]);
}

MetropolisChain::MetropolisChain(const IsingInstance& inst, PackedState start,
                                 std::uint64_t seed, std::uint64_t stream)
    : inst_(&inst), spins_(unpack_spins(start, inst.size())),
      energy_(ising_energy(inst, start)), rng_(make_stream(seed, stream)) {}

void MetropolisChain::sweep(double beta) {
  const std::size_t n = spins_.size();
  for (std::size_t i = 0; i < n; ++i) {
    double local = inst_->linear(i);
    for (const auto& nb : inst_->neighbors(i)) local += nb.value * spins_[nb.index];
    const double delta = -2.0 * spins_[i] * local;
    if (delta <= 0.0 || unit_(rng_) < std::exp(-beta * delta)) {
      spins_[i] = -spins_[i];
      energy_ += delta;
    }
  }
}

void MetropolisChain::swap_configuration(MetropolisChain& other) noexcept {
  std::swap(spins_, other.spins_);
  std::swap(energy_, other.energy_);
}

PackedState MetropolisChain::state() const { return pack_spins(spins_); }

McResult simulated_annealing(const IsingInstance& inst, std::size_t sweeps,
                             const BetaLadder& ladder, std::size_t restarts,
                             std::uint64_t seed) {
  check_packable(inst);
  if (sweeps == 0) throw PreconditionError("sweeps must be at least 1");
  if (restarts == 0) throw PreconditionError("restarts must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();

  std::vector<PackedState> restart_best(restarts);
  McResult out;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto init_rng = make_stream(seed, 2 * r + 1);
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    MetropolisChain chain(inst, PackedState{init_rng() & mask}, seed, 2 * r);
    PackedState best = chain.state();
    double best_e = chain.energy();
    for (std::size_t t = 0; t < sweeps; ++t) {
      const double frac = sweeps == 1 ? 1.0 : static_cast<double>(t) / static_cast<double>(sweeps - 1);
      chain.sweep(ladder.at(frac));
      if (chain.energy() < best_e - tolerance(best_e)) {
        best_e = chain.energy();
        best = chain.state();
      }
    }
    restart_best[r] = best;
  }
  out.sample_energies.resize(restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    out.sample_energies[r] = ising_energy(inst, restart_best[r]);
    if (r == 0 || better(out.sample_energies[r], restart_best[r], out.best_energy, out.best_state)) {
      out.best_energy = out.sample_energies[r];
      out.best_state = restart_best[r];
    }
  }
  for (double e : out.sample_energies) {
    if (e <= out.best_energy + tolerance(out.best_energy)) ++out.success_count;
  }
  out.samples_taken = restarts;
  out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double swap_acceptance(double beta_a, double energy_a, double beta_b, double energy_b) {
  const double x = (beta_a - beta_b) * (energy_a - energy_b);
  return x >= 0.0 ? 1.0 : std::exp(x);
}

McResult parallel_tempering(const IsingInstance& inst, const BetaLadder& ladder,
                            std::size_t sweeps, std::uint64_t seed, unsigned workers) {
  check_packable(inst);
  const std::size_t replicas = ladder.size();
  if (replicas < 2) throw PreconditionError("parallel tempering needs at least 2 replicas");
  if (sweeps == 0) throw PreconditionError("sweeps must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  std::vector<MetropolisChain> chains;
  chains.reserve(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    auto init_rng = make_stream(seed, 2 * r + 1);
    chains.emplace_back(inst, PackedState{init_rng() & mask}, seed, 2 * r);
  }
  auto swap_rng = make_stream(seed, 2 * replicas);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto betas = ladder.betas();

  McResult out;
  PackedState best = chains[0].state();
  double best_e = chains[0].energy();
  std::vector<PackedState> coldest(sweeps);
  const unsigned pool = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(replicas));
  for (std::size_t t = 0; t < sweeps; ++t) {
    if (pool == 1) {
      for (std::size_t r = 0; r < replicas; ++r) chains[r].sweep(betas[r]);
    } else {
      std::vector<std::jthread> threads;
      for (unsigned w = 0; w < pool; ++w) {
        threads.emplace_back([&, w] {
          for (std::size_t r = w; r < replicas; r += pool) chains[r].sweep(betas[r]);
        });
      }
    }
    for (std::size_t r = 0; r + 1 < replicas; ++r) {
      const double p = swap_acceptance(betas[r], chains[r].energy(), betas[r + 1],
                                       chains[r + 1].energy());
      if (p >= 1.0 || unit(swap_rng) < p) chains[r].swap_configuration(chains[r + 1]);
    }
    for (const auto& c : chains) {
      if (c.energy() < best_e - tolerance(best_e)) {
        best_e = c.energy();
        best = c.state();
      }
    }
    coldest[t] = chains.back().state();
  }
  out.best_state = best;
  out.best_energy = ising_energy(inst, best);
  out.sample_energies.resize(sweeps);
  for (std::size_t t = 0; t < sweeps; ++t) {
    out.sample_energies[t] = ising_energy(inst, coldest[t]);
    if (better(out.sample_energies[t], coldest[t], out.best_energy, out.best_state)) {
      out.best_energy = out.sample_energies[t];
      out.best_state = coldest[t];
    }
  }
  for (double e : out.sample_energies) {
    if (e <= out.best_energy + tolerance(out.best_energy)) ++out.success_count;
  }
  out.samples_taken = sweeps;
  out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::optional<double> time_to_solution(double runtime, double p_succ, double p_target,
                                       double scale_ratio) {
  if (!(runtime > 0.0)) throw PreconditionError("runtime must be positive");
  if (!(p_succ >= 0.0 && p_succ <= 1.0)) throw PreconditionError("p_succ must lie in [0, 1]");
  if (!(p_target > 0.0 && p_target < 1.0)) throw PreconditionError("p_target must lie in (0, 1)");
  if (!(scale_ratio > 0.0)) throw PreconditionError("scale ratio must be positive");
  if (p_succ == 0.0) return std::nullopt;
  if (p_succ == 1.0) return runtime * scale_ratio;
  return runtime * std::log1p(-p_target) / std::log1p(-p_succ) * scale_ratio;
}

}  // namespace spinglass
