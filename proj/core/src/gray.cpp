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
#include <string>
#include <thread>

#include "search_internal.hpp"
#include "spinglass/bruteforce.hpp"
#include "spinglass/errors.hpp"

namespace spinglass {
namespace {

struct BatchStep {
  unsigned bit;
  double sign;
  double prefix_delta;
  std::uint64_t prefix_after;
};

bool better(double e, std::uint64_t w, double best_e, std::uint64_t best_w) {
  return e < best_e || (e == best_e && w < best_w);
}

}  // namespace

GrayEngine::GrayEngine(const QuboInstance& inst, const SearchConfig& cfg)
    : inst_(inst), cfg_(cfg) {
  const std::size_t n = inst.size();
  if (n == 0 || n > 64) throw PreconditionError("Gray search needs 1 <= n <= 64");
  if (cfg.chunk_exp == 0 || cfg.chunk_exp > n) {
    throw PreconditionError("suffix width must satisfy 0 < M <= n (M=" +
                            std::to_string(cfg.chunk_exp) + ", n=" + std::to_string(n) + ")");
  }
  suffix_bits_ = cfg.chunk_exp;
  prefix_bits_ = static_cast<unsigned>(n) - suffix_bits_;
  if (cfg.cache_depth > prefix_bits_) {
    throw PreconditionError("cache depth K=" + std::to_string(cfg.cache_depth) +
                            " exceeds n - M = " + std::to_string(prefix_bits_));
  }
  if (suffix_bits_ > 40) throw SizingError("suffix width above 40 bits");
  const std::size_t lanes = std::size_t{1} << suffix_bits_;
  const std::size_t need = lanes * (2 * sizeof(double) + 2 * sizeof(std::uint64_t) +
                                    cfg.cache_depth * sizeof(double));
  if (need > cfg.memory_cap_bytes) {
    throw SizingError("Gray search needs " + std::to_string(need) + " bytes for 2^" +
                      std::to_string(suffix_bits_) + " lanes, cap is " +
                      std::to_string(cfg.memory_cap_bytes));
  }
  total_steps_ = (std::uint64_t{1} << prefix_bits_) - 1;

  prefix_field_.assign(n, 0.0);
  suffix_neighbors_.resize(prefix_bits_);
  for (unsigned p = 0; p < prefix_bits_; ++p) {
    for (const auto& nb : inst.neighbors(p)) {
      if (nb.index >= prefix_bits_) {
        suffix_neighbors_[p].push_back({static_cast<unsigned>(nb.index - prefix_bits_), nb.value});
      }
    }
  }
  cache_.assign(std::size_t{cfg.cache_depth} * lanes, 0.0);
  for (unsigned p = 0; p < cfg.cache_depth; ++p) {
    double* row = &cache_[p * lanes];
    for (std::size_t s = 0; s < lanes; ++s) {
      double acc = 0.0;
      for (const auto& [pos, a] : suffix_neighbors_[p]) {
        if ((s >> pos) & 1U) acc += a;
      }
      row[s] = acc;
    }
  }

  state_.current_states.resize(lanes);
  state_.current_energies.resize(lanes);
  for (std::size_t s = 0; s < lanes; ++s) {
    state_.current_states[s] = static_cast<std::uint64_t>(s) << prefix_bits_;
  }
  resync();
  state_.best_states = state_.current_states;
  state_.best_energies = state_.current_energies;
}

void GrayEngine::resync() {
  const detail::CompactQubo q(inst_);
  for (std::size_t s = 0; s < state_.current_states.size(); ++s) {
    state_.current_energies[s] = q.energy(state_.current_states[s]);
  }
  since_resync_ = 0;
}

void GrayEngine::run(std::uint64_t max_steps) {
  max_steps = std::min(max_steps, total_steps_ - steps_done_);
  const std::uint64_t batch = std::max<std::size_t>(1, cfg_.steps_per_batch);
  while (max_steps > 0) {
    std::uint64_t len = std::min(max_steps, batch);
    if (cfg_.resync_interval > 0) len = std::min(len, cfg_.resync_interval - since_resync_);
    run_batch(static_cast<std::size_t>(len));
    max_steps -= len;
    since_resync_ += len;
    if (cfg_.resync_interval > 0 && since_resync_ >= cfg_.resync_interval) resync();
  }
}

void GrayEngine::run_batch(std::size_t steps) {
  // Shared across lanes: flip positions and prefix parts of the deltas.
  std::vector<BatchStep> plan(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const unsigned bit = flip_index(steps_done_ + t) - 1;
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const double sign = (prefix_word_ & mask) ? -1.0 : 1.0;
    const double delta = sign * (inst_.linear(bit) + prefix_field_[bit]);
    prefix_word_ ^= mask;
    for (const auto& nb : inst_.neighbors(bit)) prefix_field_[nb.index] += sign * nb.value;
    plan[t] = {bit, sign, delta, prefix_word_};
  }

  const std::size_t lanes = state_.current_states.size();
  const unsigned shift = prefix_bits_;
  const unsigned cached = cfg_.cache_depth;
  auto sweep = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const std::uint64_t high = static_cast<std::uint64_t>(s) << shift;
      double e = state_.current_energies[s];
      double best_e = state_.best_energies[s];
      std::uint64_t best_w = state_.best_states[s];
      for (const auto& step : plan) {
        double suffix;
        if (step.bit < cached) {
          suffix = cache_[step.bit * lanes + s];
        } else {
          suffix = 0.0;
          for (const auto& [pos, a] : suffix_neighbors_[step.bit]) {
            if ((s >> pos) & 1U) suffix += a;
          }
        }
        e += step.prefix_delta + step.sign * suffix;
        const std::uint64_t w = high | step.prefix_after;
        if (better(e, w, best_e, best_w)) {
          best_e = e;
          best_w = w;
        }
      }
      state_.current_energies[s] = e;
      state_.current_states[s] = high | prefix_word_;
      state_.best_energies[s] = best_e;
      state_.best_states[s] = best_w;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg_.workers, 1, lanes);
  if (workers == 1) {
    sweep(0, lanes);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t per = (lanes + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * per;
      const std::size_t hi = std::min(lanes, lo + per);
      if (lo < hi) pool.emplace_back(sweep, lo, hi);
    }
  }
  steps_done_ += steps;
}

GroundState GrayEngine::best() const {
  GroundState out{PackedState{state_.best_states[0]}, 0.0};
  out.energy = qubo_energy(inst_, out.state);
  for (std::size_t s = 1; s < state_.best_states.size(); ++s) {
    const PackedState st{state_.best_states[s]};
    const double e = qubo_energy(inst_, st);
    if (better(e, st.word, out.energy, out.state.word)) out = {st, e};
  }
  return out;
}

GroundState ground_search_gray(const QuboInstance& inst, const SearchConfig& cfg) {
  const std::size_t n = inst.size();
  if (cfg.fixed_vars >= n && n > 0) {
    throw PreconditionError("cannot fix l=" + std::to_string(cfg.fixed_vars) +
                            " of n=" + std::to_string(n) + " variables");
  }
  if (cfg.fixed_vars == 0) {
    GrayEngine engine(inst, cfg);
    engine.run_to_end();
    return engine.best();
  }
  // Fix the top l variables; each subproblem keeps the low variables in order.
  const unsigned l = cfg.fixed_vars;
  const std::size_t low = n - l;
  GroundState best{PackedState{0}, 0.0};
  bool have = false;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << l); ++a) {
    std::vector<FixedValue> fixed;
    for (unsigned t = 0; t < l; ++t) fixed.push_back({low + t, ((a >> t) & 1U) != 0});
    const QuboInstance sub = fix_variables(inst, fixed);
    SearchConfig sub_cfg = cfg;
    sub_cfg.fixed_vars = 0;
    sub_cfg.chunk_exp = std::min<unsigned>(cfg.chunk_exp, static_cast<unsigned>(low));
    sub_cfg.cache_depth = std::min<unsigned>(cfg.cache_depth,
                                             static_cast<unsigned>(low) - sub_cfg.chunk_exp);
    GrayEngine engine(sub, sub_cfg);
    engine.run_to_end();
    const PackedState full{engine.best().state.word | (a << low)};
    const double e = qubo_energy(inst, full);
    if (!have || better(e, full.word, best.energy, best.state.word)) {
      best = {full, e};
      have = true;
    }
  }
  return best;
}

GroundState ground_search_gray(const IsingInstance& inst, const SearchConfig& cfg) {
  GroundState g = ground_search_gray(ising_to_qubo(inst), cfg);
  g.energy = ising_energy(inst, g.state);
  return g;
}

}  // namespace spinglass
