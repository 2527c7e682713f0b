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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinglass/model.hpp"

namespace spinglass {

enum class TopologyKind { chimera, pegasus, zephyr, custom };

std::string_view to_string(TopologyKind kind);
TopologyKind parse_topology_kind(std::string_view name);

using PhysicalEdge = std::pair<std::size_t, std::size_t>;

class WorkingGraph {
 public:
  WorkingGraph() = default;
  // Rejects self-loops and duplicate edges. Edge endpoints are added to the
  // node set.
  WorkingGraph(TopologyKind kind, std::vector<std::size_t> nodes, std::vector<PhysicalEdge> edges);

  TopologyKind kind() const noexcept { return kind_; }
  // Sorted, unique.
  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }
  // Sorted, first < second.
  const std::vector<PhysicalEdge>& edges() const noexcept { return edges_; }
  bool has_node(std::size_t v) const;
  bool has_edge(std::size_t u, std::size_t v) const;
  // One past the largest node index.
  std::size_t index_bound() const noexcept { return nodes_.empty() ? 0 : nodes_.back() + 1; }

  friend bool operator==(const WorkingGraph&, const WorkingGraph&) = default;

 private:
  TopologyKind kind_ = TopologyKind::custom;
  std::vector<std::size_t> nodes_;
  std::vector<PhysicalEdge> edges_;
};

std::size_t chimera_node_count(std::size_t n);
std::size_t chimera_edge_count(std::size_t n);
std::size_t pegasus_node_count(std::size_t n);
std::size_t zephyr_node_count(std::size_t n);

// Chimera C_n with index (row * n + col) * 8 + shore * 4 + k. Shore-0 qubits
// link to the same k in the cell below, shore-1 qubits to the cell on the
// right. Pegasus and Zephyr graphs carry their node set only.
WorkingGraph generate_topology(TopologyKind kind, std::size_t n);

// Lines "u v"; '#' starts a comment.
WorkingGraph load_working_graph(std::string_view text, TopologyKind kind = TopologyKind::custom);
std::string format_edge_list(const WorkingGraph& g);

// Two-colouring if the graph is bipartite.
std::optional<std::vector<int>> two_coloring(const WorkingGraph& g);

// witness[c] is the node of g playing Chimera node c of C_chimera_n.
bool check_chimera_witness(const WorkingGraph& g, std::size_t chimera_n,
                           const std::vector<std::size_t>& witness);

// Logical variable -> chain of physical qubits. Consecutive chain entries
// are the coupled pairs of the chain penalty.
using Embedding = std::map<std::size_t, std::vector<std::size_t>>;

IsingInstance apply_embedding(const IsingInstance& inst, const Embedding& emb,
                              const WorkingGraph& g, double alpha);

double chain_strength_from_scale(const IsingInstance& inst, double css);

enum class ChainStrategy { discard, majority };

ChainStrategy parse_chain_strategy(std::string_view name);

// samples[t][p] is the spin of physical qubit p in sample t. Returns logical
// samples indexed by logical variable.
std::vector<std::vector<int>> resolve_chains(const std::vector<std::vector<int>>& samples,
                                             const Embedding& emb, ChainStrategy strategy,
                                             std::uint64_t seed);

struct EmbeddingReport {
  bool valid = true;
  std::vector<std::string> problems;
};

EmbeddingReport validate_embedding(const Embedding& emb, const WorkingGraph& g,
                                   const IsingInstance& inst);

}  // namespace spinglass
