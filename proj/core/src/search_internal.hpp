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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "spinglass/bruteforce.hpp"
#include "spinglass/model.hpp"

namespace spinglass::detail {

// Compressed adjacency for inner loops.
struct CompactQubo {
  explicit CompactQubo(const QuboInstance& inst);

  std::size_t n;
  double offset;
  std::vector<double> linear;
  std::vector<std::size_t> row_start;
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  double energy(std::uint64_t word) const;
};

// Writes the energies of states base + t, t in [0, 2^bits), to out[t]. The
// block is walked in Gray order with local fields, starting from an exact
// evaluation of base (which must have its low `bits` bits clear).
void fill_energies(const CompactQubo& q, std::uint64_t base, unsigned bits,
                   std::span<SpectrumEntry> out);

// Keeps the k best of buffer[0, filled) in buffer[0, min(k, filled)); returns
// the new fill level.
inline std::size_t keep_best(std::vector<SpectrumEntry>& buffer, std::size_t filled,
                             std::size_t k) {
  if (filled <= k) return filled;
  std::nth_element(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(k),
                   buffer.begin() + static_cast<std::ptrdiff_t>(filled), entry_less);
  return k;
}

Spectrum pruned_spectrum_search(const QuboInstance& inst, const SearchConfig& cfg);

// Sorts, recomputes energies with `energy`, and re-sorts.
template <typename Energy>
Spectrum finalize(std::vector<SpectrumEntry> entries, Energy&& energy) {
  for (auto& e : entries) e.energy = energy(e.state);
  std::sort(entries.begin(), entries.end(), entry_less);
  return Spectrum{std::move(entries)};
}

}  // namespace spinglass::detail
