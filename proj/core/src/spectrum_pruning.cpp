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

// Depth-first search over the chunk index bits. Each node carries a lower
// bound on every energy in its subtree:
//
//   fixed part + sum over blocks of the exact block minimum under the
//   effective linear terms + sum of min(0, a_ij) over free pairs that cross
//   blocks.
//
// Subtrees whose bound exceeds the current k-th best energy are skipped;
// leaves are whole chunks and are enumerated exhaustively, so the result is
// the exact spectrum.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "search_internal.hpp"
#include "spinglass/errors.hpp"

namespace spinglass::detail {
namespace {

constexpr std::size_t kMaxVars = 64;
constexpr unsigned kMaxBlock = 12;

struct Node {
  std::array<double, kMaxVars> effective{};
  std::array<double, kMaxVars> block_min{};
  std::uint64_t free_mask = 0;
  std::uint64_t word = 0;
  double fixed_energy = 0.0;
  double cross_negative = 0.0;

  double bound(std::size_t blocks) const {
    double b = fixed_energy + cross_negative;
    for (std::size_t i = 0; i < blocks; ++i) b += block_min[i];
    return b;
  }
};

class PrunedSearch {
 public:
  PrunedSearch(const QuboInstance& inst, const SearchConfig& cfg)
      : inst_(inst), compact_(inst), cfg_(cfg), n_(inst.size()),
        width_(std::clamp(cfg.prune_block, 1U, kMaxBlock)),
        blocks_((n_ + width_ - 1) / width_),
        dense_(n_ * n_, 0.0),
        buffer_(cfg.k + (std::size_t{1} << cfg.chunk_exp)) {
    for (const auto& c : inst.quadratic()) {
      dense_[c.i * n_ + c.j] = c.value;
      dense_[c.j * n_ + c.i] = c.value;
    }
  }

  std::vector<SpectrumEntry> run() {
    Node root;
    root.free_mask = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    root.fixed_energy = inst_.offset();
    for (std::size_t i = 0; i < n_; ++i) root.effective[i] = inst_.linear(i);
    for (const auto& c : inst_.quadratic()) {
      if (block_of(c.i) != block_of(c.j)) root.cross_negative += std::min(0.0, c.value);
    }
    for (std::size_t b = 0; b < blocks_; ++b) root.block_min[b] = block_minimum(root, b);
    visit(root, n_);
    buffer_.resize(filled_);
    return std::move(buffer_);
  }

 private:
  std::size_t block_of(std::size_t i) const { return i / width_; }

  // Exact minimum over the free variables of block b.
  double block_minimum(const Node& node, std::size_t b) const {
    std::array<std::size_t, kMaxBlock> vars{};
    unsigned count = 0;
    const std::size_t lo = b * width_;
    const std::size_t hi = std::min(n_, lo + width_);
    for (std::size_t i = lo; i < hi; ++i) {
      if ((node.free_mask >> i) & 1U) vars[count++] = i;
    }
    if (count == 0) return 0.0;
    std::array<double, kMaxBlock> field{};
    for (unsigned t = 0; t < count; ++t) field[t] = node.effective[vars[t]];
    double e = 0.0;
    double best = 0.0;
    std::uint32_t state = 0;
    const std::uint32_t total = std::uint32_t{1} << count;
    for (std::uint32_t t = 1; t < total; ++t) {
      const auto bit = static_cast<unsigned>(std::countr_zero(t));
      const bool was_set = (state >> bit) & 1U;
      state ^= std::uint32_t{1} << bit;
      const double sign = was_set ? -1.0 : 1.0;
      e += sign * field[bit];
      const double* row = &dense_[vars[bit] * n_];
      for (unsigned u = 0; u < count; ++u) field[u] += sign * row[vars[u]];
      best = std::min(best, e);
    }
    return best;
  }

  Node child(const Node& parent, std::size_t var, bool value) const {
    Node node = parent;
    node.free_mask &= ~(std::uint64_t{1} << var);
    const double* row = &dense_[var * n_];
    // Cross-block pairs with var stop being free.
    for (const auto& nb : inst_.neighbors(var)) {
      if ((node.free_mask >> nb.index) & 1U && block_of(nb.index) != block_of(var)) {
        node.cross_negative -= std::min(0.0, nb.value);
      }
    }
    std::array<bool, kMaxVars> touched{};
    touched[block_of(var)] = true;
    if (value) {
      node.word |= std::uint64_t{1} << var;
      node.fixed_energy += node.effective[var];
      for (const auto& nb : inst_.neighbors(var)) {
        if ((node.free_mask >> nb.index) & 1U) {
          node.effective[nb.index] += row[nb.index];
          touched[block_of(nb.index)] = true;
        }
      }
    }
    for (std::size_t b = 0; b < blocks_; ++b) {
      if (touched[b]) node.block_min[b] = block_minimum(node, b);
    }
    return node;
  }

  double threshold() const {
    if (filled_ < cfg_.k) return std::numeric_limits<double>::infinity();
    return kth_energy_;
  }

  bool prunable(const Node& node) const {
    const double t = threshold();
    if (std::isinf(t)) return false;
    return node.bound(blocks_) > t + 1e-9 * (1.0 + std::abs(t));
  }

  void visit(const Node& node, std::size_t remaining_top) {
    const unsigned m = cfg_.chunk_exp;
    if (remaining_top == m) {
      absorb_chunk(node.word);
      return;
    }
    const std::size_t var = remaining_top - 1;
    Node zero = child(node, var, false);
    Node one = child(node, var, true);
    const bool one_first = one.bound(blocks_) < zero.bound(blocks_);
    Node& first = one_first ? one : zero;
    Node& second = one_first ? zero : one;
    if (!prunable(first)) visit(first, var);
    if (!prunable(second)) visit(second, var);
  }

  void absorb_chunk(std::uint64_t base) {
    const unsigned m = cfg_.chunk_exp;
    const std::size_t chunk = std::size_t{1} << m;
    auto region = std::span(buffer_).subspan(cfg_.k, chunk);
    fill_energies(compact_, base, m, region);
    const double t = threshold();
    std::size_t accepted = 0;
    for (const auto& e : region) {
      if (!(e.energy > t)) buffer_[cfg_.k + accepted++] = e;
    }
    if (accepted == 0) return;
    std::move(buffer_.begin() + static_cast<std::ptrdiff_t>(cfg_.k),
              buffer_.begin() + static_cast<std::ptrdiff_t>(cfg_.k + accepted),
              buffer_.begin() + static_cast<std::ptrdiff_t>(filled_));
    filled_ = keep_best(buffer_, filled_ + accepted, cfg_.k);
    if (filled_ == cfg_.k) {
      kth_energy_ = std::max_element(buffer_.begin(),
                                     buffer_.begin() + static_cast<std::ptrdiff_t>(filled_),
                                     entry_less)
                        ->energy;
    }
  }

  const QuboInstance& inst_;
  CompactQubo compact_;
  SearchConfig cfg_;
  std::size_t n_;
  unsigned width_;
  std::size_t blocks_;
  std::vector<double> dense_;
  std::vector<SpectrumEntry> buffer_;
  std::size_t filled_ = 0;
  double kth_energy_ = 0.0;
};

}  // namespace

Spectrum pruned_spectrum_search(const QuboInstance& inst, const SearchConfig& cfg) {
  PrunedSearch search(inst, cfg);
  return Spectrum{search.run()};
}

}  // namespace spinglass::detail
