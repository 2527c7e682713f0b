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
#include <cmath>
#include <vector>

namespace spinglass::tn::detail {

// Node needs members `logp` (log marginal probability) and `word`. Keeps the
// nodes with p / p_max >= cutoff, at most `cap` of them, most probable first
// with ties broken by word. Returns the largest discarded probability.
template <typename Node>
double prune(std::vector<Node>& nodes, double cutoff, std::size_t cap) {
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.logp != b.logp) return a.logp > b.logp;
    return a.word < b.word;
  });
  if (nodes.empty()) return 0.0;
  const double floor = nodes.front().logp + std::log(cutoff);
  std::size_t keep = 0;
  while (keep < nodes.size() && keep < cap && nodes[keep].logp >= floor) ++keep;
  const double discarded = keep < nodes.size() ? std::exp(nodes[keep].logp) : 0.0;
  nodes.resize(keep);
  return discarded;
}

}  // namespace spinglass::tn::detail
