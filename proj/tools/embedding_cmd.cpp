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

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/heuristics.hpp"
#include "spinglass/instance_io.hpp"
#include "spinglass/json_io.hpp"
#include "spinglass/topology.hpp"

namespace spinglass::cli {
namespace {

struct GraphOptions {
  std::string kind = "chimera";
  std::size_t size = 0;
  std::string graph;
};

void add_graph_options(CLI::App* cmd, GraphOptions& o) {
  cmd->add_option("--topology", o.kind, "Topology family")
      ->check(CLI::IsMember({"chimera", "pegasus", "zephyr", "custom"}));
  cmd->add_option("--size", o.size, "Topology size parameter");
  cmd->add_option("--graph", o.graph, "Edge-list file instead of a generated graph");
}

WorkingGraph working_graph(const GraphOptions& o, RunManifest& manifest) {
  const TopologyKind kind = parse_topology_kind(o.kind);
  if (!o.graph.empty()) return load_working_graph(read_input(manifest, o.graph), kind);
  if (o.size == 0) throw UsageError("give --graph or --topology with --size");
  return generate_topology(kind, o.size);
}

// One sample per line, whitespace-separated spins in physical qubit order.
std::vector<std::vector<int>> parse_samples(const std::string& text) {
  std::vector<std::vector<int>> samples;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<int> s;
    int v = 0;
    while (fields >> v) {
      if (v != 1 && v != -1) {
        throw ParseError("samples line " + std::to_string(number) + ": spins must be +1 or -1");
      }
      s.push_back(v);
    }
    if (!fields.eof()) throw ParseError("samples line " + std::to_string(number) + ": bad token");
    if (!s.empty()) samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace

void add_embedding(CLI::App& app, Session&) {
  struct EmbedOptions {
    std::string instance;
    std::string embedding;
    std::string format = "ising";
    std::optional<double> alpha;
    double css = 1.0;
    GraphOptions graph;
  };
  auto e = std::make_shared<EmbedOptions>();
  auto* embed = app.add_subcommand("embed", "Map a logical instance onto physical chains");
  embed->add_option("instance", e->instance, "Logical instance")->required();
  embed->add_option("--embedding", e->embedding, "Chains as JSON {logical: [physical...]}")
      ->required();
  embed->add_option("--format", e->format, "Input kind")->check(CLI::IsMember({"ising", "qubo"}));
  embed->add_option("--alpha", e->alpha, "Chain coupling strength");
  embed->add_option("--css", e->css, "Chain strength scale, used when --alpha is absent");
  add_graph_options(embed, e->graph);
  embed->callback([e] {
    RunManifest manifest("embed");
    const IsingInstance inst = load_instance(manifest, e->instance, e->format);
    const Embedding emb = parse_embedding(read_input(manifest, e->embedding));
    const WorkingGraph g = working_graph(e->graph, manifest);
    const double alpha = e->alpha.value_or(chain_strength_from_scale(inst, e->css));
    const auto report = validate_embedding(emb, g, inst);
    if (!report.valid) {
      std::string why;
      for (const auto& p : report.problems) why += (why.empty() ? "" : "; ") + p;
      throw InvalidInstance("embedding: " + why);
    }
    std::cout << format_text(apply_embedding(inst, emb, g, alpha));
  });

  struct ResolveOptions {
    std::string samples;
    std::string embedding;
    std::string strategy = "majority";
    std::optional<std::uint64_t> seed;
  };
  auto r = std::make_shared<ResolveOptions>();
  auto* resolve = app.add_subcommand("resolve", "Turn physical samples into logical ones");
  resolve->add_option("samples", r->samples, "Physical samples, one per line")->required();
  resolve->add_option("--embedding", r->embedding, "Chains as JSON")->required();
  resolve->add_option("--strategy", r->strategy, "Chain-break handling")
      ->check(CLI::IsMember({"majority", "discard"}));
  resolve->add_option("--seed", r->seed, "Seed for majority ties");
  resolve->callback([r] {
    if (r->strategy == "majority" && !r->seed) {
      throw UsageError("--strategy majority needs --seed");
    }
    const Embedding emb = parse_embedding(read_file(r->embedding));
    const auto logical = resolve_chains(parse_samples(read_file(r->samples)), emb,
                                        parse_chain_strategy(r->strategy), r->seed.value_or(0));
    for (const auto& s : logical) {
      for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? " " : "") << s[i];
      std::cout << '\n';
    }
  });
}

void add_topology(CLI::App& app, Session&) {
  auto o = std::make_shared<GraphOptions>();
  auto summary = std::make_shared<bool>(false);
  auto* cmd = app.add_subcommand("topology", "Generate or inspect a hardware graph");
  add_graph_options(cmd, *o);
  cmd->add_flag("--summary", *summary, "Print node and edge counts as JSON");
  cmd->callback([o, summary] {
    RunManifest manifest("topology");
    const WorkingGraph g = working_graph(*o, manifest);
    if (!*summary) {
      std::cout << format_edge_list(g);
      return;
    }
    // Generated Pegasus and Zephyr graphs carry nodes only.
    const bool edges_known = !o->graph.empty() || g.kind() == TopologyKind::chimera;
    nlohmann::ordered_json out = {{"topology", std::string(to_string(g.kind()))},
                                  {"nodes", g.nodes().size()},
                                  {"edges", g.edges().size()},
                                  {"bipartite", nullptr}};
    if (edges_known) out["bipartite"] = two_coloring(g).has_value();
    std::cout << out.dump(2) << '\n';
  });
}

void add_tts(CLI::App& app, Session&) {
  struct TtsOptions {
    double time = 1.0;
    double p_succ = 0.0;
    double p_target = 0.99;
    double scale = 1.0;
  };
  auto o = std::make_shared<TtsOptions>();
  auto* cmd = app.add_subcommand("tts", "Time to solution");
  cmd->add_option("--time", o->time, "Run time T")->required();
  cmd->add_option("--p-succ", o->p_succ, "Empirical success probability")->required();
  cmd->add_option("--p-target", o->p_target, "Target success probability");
  cmd->add_option("--scale", o->scale, "Extra factor, e.g. N / num_qubits");
  cmd->callback([o] {
    const auto tts = time_to_solution(o->time, o->p_succ, o->p_target, o->scale);
    nlohmann::ordered_json out = {{"time", o->time},
                                  {"p_succ", o->p_succ},
                                  {"p_target", o->p_target},
                                  {"scale", o->scale}};
    out["tts"] = tts ? nlohmann::ordered_json(*tts) : nlohmann::ordered_json(nullptr);
    out["unbounded"] = !tts.has_value();
    std::cout << out.dump(2) << '\n';
  });
}

}  // namespace spinglass::cli
