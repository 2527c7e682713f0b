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

#include "spinglass/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "spinglass/errors.hpp"

namespace spinglass {

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::chimera: return "chimera";
    case TopologyKind::pegasus: return "pegasus";
    case TopologyKind::zephyr: return "zephyr";
    case TopologyKind::custom: return "custom";
  }
  return "custom";
}

TopologyKind parse_topology_kind(std::string_view name) {
  if (name == "chimera") return TopologyKind::chimera;
  if (name == "pegasus") return TopologyKind::pegasus;
  if (name == "zephyr") return TopologyKind::zephyr;
  if (name == "custom") return TopologyKind::custom;
  throw PreconditionError("unknown topology '" + std::string(name) + "'");
}

WorkingGraph::WorkingGraph(TopologyKind kind, std::vector<std::size_t> nodes,
                           std::vector<PhysicalEdge> edges)
    : kind_(kind), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u == v) throw InvalidInstance("self-loop on qubit " + std::to_string(u));
    if (u > v) std::swap(u, v);
    nodes_.push_back(u);
    nodes_.push_back(v);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InvalidInstance("duplicate coupler (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }
}

bool WorkingGraph::has_node(std::size_t v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

bool WorkingGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), PhysicalEdge{u, v});
}

std::size_t chimera_node_count(std::size_t n) { return 8 * n * n; }
std::size_t chimera_edge_count(std::size_t n) { return 16 * n * n + 8 * n * (n - 1); }
std::size_t pegasus_node_count(std::size_t n) { return 24 * n * (n - 1); }
std::size_t zephyr_node_count(std::size_t n) { return 16 * n * (2 * n + 1); }

namespace {

std::vector<std::size_t> iota_nodes(std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i;
  return v;
}

WorkingGraph chimera(std::size_t n) {
  auto index = [n](std::size_t row, std::size_t col, std::size_t shore, std::size_t k) {
    return (row * n + col) * 8 + shore * 4 + k;
  };
  std::vector<PhysicalEdge> edges;
  edges.reserve(chimera_edge_count(n));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) edges.emplace_back(index(row, col, 0, a), index(row, col, 1, b));
      }
      for (std::size_t k = 0; k < 4; ++k) {
        if (row + 1 < n) edges.emplace_back(index(row, col, 0, k), index(row + 1, col, 0, k));
        if (col + 1 < n) edges.emplace_back(index(row, col, 1, k), index(row, col + 1, 1, k));
      }
    }
  }
  return WorkingGraph(TopologyKind::chimera, iota_nodes(chimera_node_count(n)), std::move(edges));
}

}  // namespace

WorkingGraph generate_topology(TopologyKind kind, std::size_t n) {
  if (n == 0) throw PreconditionError("topology size must be at least 1");
  switch (kind) {
    case TopologyKind::chimera:
      return chimera(n);
    case TopologyKind::pegasus:
      if (n < 2) throw PreconditionError("pegasus needs n >= 2");
      return WorkingGraph(kind, iota_nodes(pegasus_node_count(n)), {});
    case TopologyKind::zephyr:
      return WorkingGraph(kind, iota_nodes(zephyr_node_count(n)), {});
    case TopologyKind::custom:
      break;
  }
  throw PreconditionError("custom graphs are loaded, not generated");
}

WorkingGraph load_working_graph(std::string_view text, TopologyKind kind) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<PhysicalEdge> edges;
  std::set<PhysicalEdge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u)) continue;
    std::string extra;
    if (!(fields >> v) || (fields >> extra) || u < 0 || v < 0) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    }
    if (u == v) throw ParseError("line " + std::to_string(lineno) + ": self-loop");
    PhysicalEdge e{static_cast<std::size_t>(std::min(u, v)), static_cast<std::size_t>(std::max(u, v))};
    if (!seen.insert(e).second) throw ParseError("line " + std::to_string(lineno) + ": duplicate edge");
    edges.push_back(e);
  }
  return WorkingGraph(kind, {}, std::move(edges));
}

std::string format_edge_list(const WorkingGraph& g) {
  std::ostringstream out;
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::optional<std::vector<int>> two_coloring(const WorkingGraph& g) {
  const std::size_t bound = g.index_bound();
  std::vector<std::vector<std::size_t>> adj(bound);
  for (const auto& [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(bound, -1);
  for (std::size_t s : g.nodes()) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<std::size_t> todo;
    todo.push(s);
    while (!todo.empty()) {
      const std::size_t u = todo.front();
      todo.pop();
      for (std::size_t v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          todo.push(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

bool check_chimera_witness(const WorkingGraph& g, std::size_t chimera_n,
                           const std::vector<std::size_t>& witness) {
  const auto c = generate_topology(TopologyKind::chimera, chimera_n);
  if (witness.size() != c.nodes().size()) return false;
  std::set<std::size_t> image(witness.begin(), witness.end());
  if (image.size() != witness.size()) return false;
  for (std::size_t w : witness) {
    if (!g.has_node(w)) return false;
  }
  for (const auto& [u, v] : c.edges()) {
    if (!g.has_edge(witness[u], witness[v])) return false;
  }
  return true;
}

IsingInstance apply_embedding(const IsingInstance& inst, const Embedding& emb,
                              const WorkingGraph& g, double alpha) {
  if (alpha < 0.0) throw PreconditionError("chain strength must be non-negative");
  const auto report = validate_embedding(emb, g, inst);
  if (!report.valid) throw PreconditionError("invalid embedding: " + report.problems.front());

  ModelBuilder builder(g.index_bound());
  builder.add_offset(inst.offset());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto it = emb.find(i);
    if (it == emb.end()) continue;
    const auto& chain = it->second;
    const double share = inst.linear(i) / static_cast<double>(chain.size());
    for (std::size_t p : chain) builder.add_linear(p, share);
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
      builder.add_quadratic(chain[t], chain[t + 1], -alpha);
    }
  }
  for (const auto& c : inst.quadratic()) {
    std::optional<PhysicalEdge> chosen;
    for (std::size_t p : emb.at(c.i)) {
      for (std::size_t q : emb.at(c.j)) {
        if (!g.has_edge(p, q)) continue;
        const PhysicalEdge e{std::min(p, q), std::max(p, q)};
        if (!chosen || e < *chosen) chosen = e;
      }
    }
    builder.add_quadratic(chosen->first, chosen->second, c.value);
  }
  return builder.build_ising();
}

double chain_strength_from_scale(const IsingInstance& inst, double css) {
  if (!(css > 0.0)) throw PreconditionError("chain strength scale must be positive");
  double max_j = 0.0;
  for (const auto& c : inst.quadratic()) max_j = std::max(max_j, std::abs(c.value));
  return inst.edge_count() == 0 ? css : css * max_j;
}

ChainStrategy parse_chain_strategy(std::string_view name) {
  if (name == "discard") return ChainStrategy::discard;
  if (name == "majority") return ChainStrategy::majority;
  throw PreconditionError("unknown chain strategy '" + std::string(name) + "'");
}

std::vector<std::vector<int>> resolve_chains(const std::vector<std::vector<int>>& samples,
                                             const Embedding& emb, ChainStrategy strategy,
                                             std::uint64_t seed) {
  const std::size_t logical = emb.empty() ? 0 : emb.rbegin()->first + 1;
  std::vector<std::vector<int>> out;
  out.reserve(samples.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& sample = samples[t];
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
    std::mt19937_64 rng(seq);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> spins(logical, 0);
    bool keep = true;
    for (const auto& [var, chain] : emb) {
      int sum = 0;
      for (std::size_t p : chain) {
        if (p >= sample.size()) throw PreconditionError("sample shorter than embedding");
        sum += sample[p];
      }
      const bool aligned = std::abs(sum) == static_cast<int>(chain.size());
      if (!aligned && strategy == ChainStrategy::discard) {
        keep = false;
        break;
      }
      if (sum > 0) {
        spins[var] = 1;
      } else if (sum < 0) {
        spins[var] = -1;
      } else {
        spins[var] = coin(rng) ? 1 : -1;
      }
    }
    if (keep) out.push_back(std::move(spins));
  }
  return out;
}

EmbeddingReport validate_embedding(const Embedding& emb, const WorkingGraph& g,
                                   const IsingInstance& inst) {
  EmbeddingReport report;
  auto fail = [&report](std::string msg) {
    report.valid = false;
    report.problems.push_back(std::move(msg));
  };
  std::map<std::size_t, std::size_t> owner;
  for (const auto& [var, chain] : emb) {
    if (chain.empty()) {
      fail("chain of variable " + std::to_string(var) + " is empty");
      continue;
    }
    for (std::size_t p : chain) {
      if (!g.has_node(p)) fail("qubit " + std::to_string(p) + " is not in the working graph");
      const auto [it, fresh] = owner.emplace(p, var);
      if (!fresh) {
        fail("qubit " + std::to_string(p) + " is shared by variables " +
             std::to_string(it->second) + " and " + std::to_string(var));
      }
    }
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
      if (!g.has_edge(chain[t], chain[t + 1])) {
        fail("chain of variable " + std::to_string(var) + " is broken between qubits " +
             std::to_string(chain[t]) + " and " + std::to_string(chain[t + 1]));
      }
    }
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!emb.contains(i) && (inst.linear(i) != 0.0 || !inst.neighbors(i).empty())) {
      fail("variable " + std::to_string(i) + " has no chain");
    }
  }
  for (const auto& c : inst.quadratic()) {
    const auto a = emb.find(c.i);
    const auto b = emb.find(c.j);
    if (a == emb.end() || b == emb.end()) continue;
    bool found = false;
    for (std::size_t p : a->second) {
      for (std::size_t q : b->second) found = found || g.has_edge(p, q);
    }
    if (!found) {
      fail("no coupler between chains of variables " + std::to_string(c.i) + " and " +
           std::to_string(c.j));
    }
  }
  return report;
}

}  // namespace spinglass
