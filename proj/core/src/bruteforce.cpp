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
#include <numeric>
#include <string>
#include <thread>

#include "search_internal.hpp"
#include "spinglass/bruteforce.hpp"
#include "spinglass/errors.hpp"

namespace spinglass {
namespace detail {

CompactQubo::CompactQubo(const QuboInstance& inst)
    : n(inst.size()), offset(inst.offset()), linear(inst.linear().begin(), inst.linear().end()) {
  row_start.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_start[i + 1] = row_start[i] + inst.neighbors(i).size();
  col.reserve(row_start[n]);
  val.reserve(row_start[n]);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : inst.neighbors(i)) {
      col.push_back(static_cast<std::uint32_t>(nb.index));
      val.push_back(nb.value);
    }
  }
}

double CompactQubo::energy(std::uint64_t word) const {
  double e = offset;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((word >> i) & 1U)) continue;
    e += linear[i];
    for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) {
      if (col[p] > i && ((word >> col[p]) & 1U)) e += val[p];
    }
  }
  return e;
}

void fill_energies(const CompactQubo& q, std::uint64_t base, unsigned bits,
                   std::span<SpectrumEntry> out) {
  const std::size_t n = q.n;
  // field[i] = b_i + sum_j a_ij q_j for the current state.
  std::vector<double> field(q.linear);
  for (std::size_t i = 0; i < n; ++i) {
    if (!((base >> i) & 1U)) continue;
    for (std::size_t p = q.row_start[i]; p < q.row_start[i + 1]; ++p) field[q.col[p]] += q.val[p];
  }
  double e = q.energy(base);
  std::uint64_t local = 0;
  out[0] = {e, PackedState{base}};
  const std::uint64_t count = std::uint64_t{1} << bits;
  for (std::uint64_t t = 1; t < count; ++t) {
    const auto bit = static_cast<unsigned>(std::countr_zero(t));
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const bool was_set = (local & mask) != 0;
    local ^= mask;
    const double sign = was_set ? -1.0 : 1.0;
    e += sign * field[bit];
    for (std::size_t p = q.row_start[bit]; p < q.row_start[bit + 1]; ++p) {
      field[q.col[p]] += sign * q.val[p];
    }
    out[local] = {e, PackedState{base | local}};
  }
}

}  // namespace detail

namespace {

constexpr unsigned kTileBits = 16;

void check_config(std::size_t n, const SearchConfig& cfg) {
  if (n == 0 || n > 64) throw PreconditionError("spectrum search needs 1 <= n <= 64");
  if (cfg.chunk_exp == 0 || cfg.chunk_exp > n) {
    throw PreconditionError("chunk exponent must satisfy 0 < M <= n (M=" +
                            std::to_string(cfg.chunk_exp) + ", n=" + std::to_string(n) + ")");
  }
  if (n < 64 && cfg.k > (std::uint64_t{1} << n)) {
    throw PreconditionError("k=" + std::to_string(cfg.k) + " exceeds the 2^" +
                            std::to_string(n) + " states");
  }
  if (cfg.k == 0) throw PreconditionError("k must be positive");
}

// Best k entries over the chunks j = first, first + stride, ...
std::vector<SpectrumEntry> scan_chunks(const detail::CompactQubo& q, const SearchConfig& cfg,
                                       std::uint64_t first, std::uint64_t stride) {
  const unsigned m = cfg.chunk_exp;
  const std::size_t chunk = std::size_t{1} << m;
  const std::uint64_t chunks = std::uint64_t{1} << (q.n - m);
  const unsigned tile = std::min(m, kTileBits);
  std::vector<SpectrumEntry> buffer(cfg.k + chunk);
  std::size_t filled = 0;
  for (std::uint64_t j = first; j < chunks; j += stride) {
    const std::uint64_t base = j << m;
    auto region = std::span(buffer).subspan(cfg.k, chunk);
    for (std::size_t t = 0; t < chunk; t += std::size_t{1} << tile) {
      detail::fill_energies(q, base + t, tile, region.subspan(t, std::size_t{1} << tile));
    }
    // Chunk best k next to the global best k, then reselect.
    std::nth_element(region.begin(), region.begin() + static_cast<std::ptrdiff_t>(
                                                          std::min(cfg.k, chunk - 1)),
                     region.end(), entry_less);
    const std::size_t take = std::min(cfg.k, chunk);
    std::copy_n(region.begin(), take, buffer.begin() + static_cast<std::ptrdiff_t>(filled));
    filled = detail::keep_best(buffer, filled + take, cfg.k);
  }
  buffer.resize(filled);
  return buffer;
}

}  // namespace

ChunkRange chunk_range(unsigned n, unsigned m, std::uint64_t j) {
  if (m > n || n > 64) throw PreconditionError("chunk_range needs m <= n <= 64");
  const unsigned free_bits = n - m;
  if (free_bits < 64 && j >= (std::uint64_t{1} << free_bits)) {
    throw PreconditionError("chunk index " + std::to_string(j) + " out of range");
  }
  const std::uint64_t first = m == 64 ? 0 : j << m;
  const std::uint64_t span = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  return {first, first + span};
}

void select_k_lowest(std::span<double> energies, std::span<std::uint64_t> states,
                     std::size_t k) {
  if (energies.size() != states.size()) {
    throw PreconditionError("energy and state arrays differ in length");
  }
  if (k > energies.size()) throw PreconditionError("k exceeds array length");
  std::vector<SpectrumEntry> entries(energies.size());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = {energies[i], PackedState{states[i]}};
  if (k < entries.size()) {
    std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k),
                     entries.end(), entry_less);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    energies[i] = entries[i].energy;
    states[i] = entries[i].state.word;
  }
}

std::size_t spectrum_search_memory(const SearchConfig& cfg) {
  if (cfg.chunk_exp >= 48) return static_cast<std::size_t>(-1);
  const std::size_t chunk = std::size_t{1} << cfg.chunk_exp;
  const std::size_t workers = std::max(1U, cfg.workers);
  return (cfg.k + chunk) * sizeof(SpectrumEntry) * (cfg.prune ? 1 : workers);
}

Spectrum spectrum_search(const QuboInstance& inst, const SearchConfig& cfg) {
  check_config(inst.size(), cfg);
  const std::size_t need = spectrum_search_memory(cfg);
  if (need > cfg.memory_cap_bytes) {
    throw SizingError("spectrum search needs " + std::to_string(need) +
                      " bytes of merge buffers (k=" + std::to_string(cfg.k) + ", M=" +
                      std::to_string(cfg.chunk_exp) + ", workers=" + std::to_string(cfg.workers) +
                      "), cap is " + std::to_string(cfg.memory_cap_bytes));
  }
  auto exact = [&inst](PackedState s) { return qubo_energy(inst, s); };
  if (cfg.prune) return detail::finalize(detail::pruned_spectrum_search(inst, cfg).entries, exact);

  const detail::CompactQubo q(inst);
  const std::uint64_t chunks = std::uint64_t{1} << (inst.size() - cfg.chunk_exp);
  const auto workers =
      static_cast<std::uint64_t>(std::clamp<std::uint64_t>(cfg.workers, 1, chunks));

  std::vector<std::vector<SpectrumEntry>> partial(workers);
  if (workers == 1) {
    partial[0] = scan_chunks(q, cfg, 0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { partial[w] = scan_chunks(q, cfg, w, workers); });
    }
  }
  std::vector<SpectrumEntry> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  const std::size_t keep = detail::keep_best(merged, merged.size(), cfg.k);
  merged.resize(keep);
  return detail::finalize(std::move(merged), exact);
}

Spectrum spectrum_search(const IsingInstance& inst, const SearchConfig& cfg) {
  const Spectrum s = spectrum_search(ising_to_qubo(inst), cfg);
  return detail::finalize(s.entries, [&inst](PackedState st) { return ising_energy(inst, st); });
}

double delta_energy(const QuboInstance& inst, PackedState q, std::size_t kbit) {
  check_state(q, inst.size());
  if (kbit < 1 || kbit > inst.size()) {
    throw PreconditionError("kbit " + std::to_string(kbit) + " outside 1..n");
  }
  const std::size_t k = kbit - 1;
  double field = inst.linear(k);
  for (const auto& nb : inst.neighbors(k)) {
    if (q.bit(nb.index)) field += nb.value;
  }
  return (q.bit(k) ? -1.0 : 1.0) * field;
}

DeltaParts split_delta(const QuboInstance& inst, PackedState q, std::size_t kbit,
                       unsigned suffix_bits) {
  check_state(q, inst.size());
  const std::size_t n = inst.size();
  if (suffix_bits > n) throw PreconditionError("suffix width exceeds n");
  const std::size_t prefix_len = n - suffix_bits;
  if (kbit < 1 || kbit > prefix_len) {
    throw PreconditionError("kbit " + std::to_string(kbit) + " is not a prefix variable");
  }
  const std::size_t k = kbit - 1;
  double prefix = inst.linear(k);
  double suffix = 0.0;
  for (const auto& nb : inst.neighbors(k)) {
    if (!q.bit(nb.index)) continue;
    (nb.index < prefix_len ? prefix : suffix) += nb.value;
  }
  const double sign = q.bit(k) ? -1.0 : 1.0;
  return {sign * prefix, sign * suffix};
}

std::vector<std::size_t> free_variables(std::size_t n, std::span<const FixedValue> assignment) {
  std::vector<char> fixed(n, 0);
  for (const auto& a : assignment) {
    if (a.index >= n) {
      throw PreconditionError("fixed variable " + std::to_string(a.index) + " outside n=" +
                              std::to_string(n));
    }
    if (fixed[a.index]) {
      throw PreconditionError("variable " + std::to_string(a.index) + " fixed twice");
    }
    fixed[a.index] = 1;
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fixed[i]) kept.push_back(i);
  }
  return kept;
}

QuboInstance fix_variables(const QuboInstance& inst, std::span<const FixedValue> assignment) {
  const std::size_t n = inst.size();
  const auto kept = free_variables(n, assignment);
  constexpr std::size_t kFixed = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot(n, kFixed);
  for (std::size_t r = 0; r < kept.size(); ++r) slot[kept[r]] = r;
  std::vector<int> value(n, 0);
  for (const auto& a : assignment) value[a.index] = a.value ? 1 : 0;

  ModelBuilder builder(kept.size());
  builder.add_offset(inst.offset());
  for (std::size_t i = 0; i < n; ++i) {
    if (slot[i] != kFixed) {
      builder.add_linear(slot[i], inst.linear(i));
    } else if (value[i]) {
      builder.add_offset(inst.linear(i));
    }
  }
  for (const auto& c : inst.quadratic()) {
    const bool fi = slot[c.i] == kFixed;
    const bool fj = slot[c.j] == kFixed;
    if (!fi && !fj) {
      builder.add_quadratic(slot[c.i], slot[c.j], c.value);
    } else if (fi && fj) {
      if (value[c.i] && value[c.j]) builder.add_offset(c.value);
    } else if (fi) {
      if (value[c.i]) builder.add_linear(slot[c.j], c.value);
    } else if (value[c.j]) {
      builder.add_linear(slot[c.i], c.value);
    }
  }
  return builder.build_qubo();
}

}  // namespace spinglass
