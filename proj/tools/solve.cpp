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
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

#include "commands.hpp"
#include "spinglass/bruteforce.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/heuristics.hpp"
#include "spinglass/instance_io.hpp"
#include "spinglass/json_io.hpp"
#include "spinglass/tn.hpp"

namespace spinglass::cli {

std::string read_input(RunManifest& manifest, const std::string& path) {
  std::string text = read_file(path);
  manifest.add_input(path, text);
  return text;
}

IsingInstance load_instance(RunManifest& manifest, const std::string& path,
                            const std::string& format) {
  const std::string text = read_input(manifest, path);
  if (format == "qubo") return qubo_to_ising(parse_qubo_text(text));
  return parse_ising_text(text);
}

namespace {

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

struct SolveOptions {
  std::string input;
  std::string solver = "chunked";
  std::string format = "ising";
  std::string output;
  std::size_t k = 1;
  std::optional<unsigned> chunk_exp;
  std::optional<unsigned> cache_depth;
  unsigned fix = 0;
  unsigned workers = default_workers();
  bool prune = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> beta;
  double beta_min = 0.1;
  double beta_max = 3.0;
  std::size_t sweeps = 1000;
  std::size_t replicas = 16;
  std::size_t restarts = 100;
  std::size_t chi = 16;
  double cutoff = 1e-3;
  std::optional<std::size_t> max_branches;
  std::string clusters;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t bond = 64;
  double dbeta = 0.25;
};

SearchConfig search_config(const SolveOptions& o, std::size_t n, bool gray) {
  SearchConfig cfg;
  const auto nn = static_cast<unsigned>(n);
  cfg.k = o.k;
  cfg.workers = o.workers;
  cfg.prune = o.prune;
  cfg.fixed_vars = o.fix;
  cfg.chunk_exp = o.chunk_exp.value_or(std::min(gray ? 8U : 16U, gray ? nn / 2 : nn));
  cfg.chunk_exp = std::max(cfg.chunk_exp, 1U);
  const unsigned room = nn > cfg.chunk_exp + cfg.fixed_vars ? nn - cfg.chunk_exp - cfg.fixed_vars : 0;
  cfg.cache_depth = o.cache_depth.value_or(std::min(4U, room));
  return cfg;
}

std::uint64_t required_seed(const SolveOptions& o) {
  if (!o.seed) throw UsageError("solver " + o.solver + " needs --seed");
  return *o.seed;
}

std::string run_solve(const SolveOptions& o, RunManifest& manifest) {
  const IsingInstance inst = load_instance(manifest, o.input, o.format);
  if (inst.size() > 64) {
    throw SizingError(std::to_string(inst.size()) + " variables exceed the 64-bit state word");
  }
  auto& params = manifest.parameters();
  params["solver"] = o.solver;
  params["format"] = o.format;
  params["k"] = o.k;

  if (o.solver == "naive") return format_spectrum(enumerate_spectrum_naive(inst, o.k));
  if (o.solver == "chunked" || o.solver == "gray") {
    const bool gray = o.solver == "gray";
    const SearchConfig cfg = search_config(o, inst.size(), gray);
    params["chunk_exp"] = cfg.chunk_exp;
    params["cache_depth"] = cfg.cache_depth;
    params["workers"] = cfg.workers;
    if (!gray) {
      params["prune"] = cfg.prune;
      return format_spectrum(spectrum_search(inst, cfg));
    }
    params["fix"] = cfg.fixed_vars;
    const GroundState g = ground_search_gray(inst, cfg);
    return format_spectrum(Spectrum{{{g.energy, g.state}}});
  }
  if (o.solver == "sa" || o.solver == "pt") {
    const std::uint64_t seed = required_seed(o);
    manifest.set_seed(seed);
    params["beta_min"] = o.beta_min;
    params["beta_max"] = o.beta_max;
    params["sweeps"] = o.sweeps;
    if (o.solver == "sa") {
      params["restarts"] = o.restarts;
      const auto ladder = BetaLadder::geometric(o.beta_min, o.beta_max, 20);
      return format_mc_result(simulated_annealing(inst, o.sweeps, ladder, o.restarts, seed));
    }
    params["replicas"] = o.replicas;
    params["workers"] = o.workers;
    const auto ladder = BetaLadder::geometric(o.beta_min, o.beta_max, o.replicas);
    return format_mc_result(parallel_tempering(inst, ladder, o.sweeps, seed, o.workers));
  }
  if (o.solver == "tn") {
    std::unique_ptr<tn::ClusterLattice> lat;
    if (!o.clusters.empty()) {
      const auto map = tn::parse_cluster_map(read_input(manifest, o.clusters));
      lat = std::make_unique<tn::ClusterLattice>(inst, map.rows, map.cols, map.clusters);
    } else {
      if (o.rows * o.cols != inst.size()) {
        throw UsageError("solver tn needs --clusters or --rows/--cols covering every spin");
      }
      lat = std::make_unique<tn::ClusterLattice>(tn::ClusterLattice::single_spin(inst, o.rows, o.cols));
    }
    tn::TnConfig cfg;
    cfg.beta = o.beta.value_or(cfg.beta);
    cfg.chi = o.chi;
    cfg.cutoff = o.cutoff;
    cfg.max_branches = o.max_branches.value_or(cfg.max_branches);
    cfg.k = o.k;
    params["beta"] = cfg.beta;
    params["chi"] = cfg.chi;
    params["cutoff"] = cfg.cutoff;
    params["max_branches"] = cfg.max_branches;
    return format_tn_result(tn::branch_and_bound(*lat, cfg));
  }
  if (o.solver == "mps") {
    tn::MpsConfig cfg;
    cfg.bond_dim = o.bond;
    cfg.beta = o.beta.value_or(cfg.beta);
    cfg.dbeta = o.dbeta;
    cfg.max_branches = o.max_branches.value_or(cfg.max_branches);
    cfg.k = o.k;
    params["bond"] = cfg.bond_dim;
    params["beta"] = cfg.beta;
    params["dbeta"] = cfg.dbeta;
    params["max_branches"] = cfg.max_branches;
    return format_tn_result(tn::mps_imaginary_time(inst, cfg));
  }
  throw UsageError("unknown solver " + o.solver);
}

}  // namespace

void add_solve(CLI::App& app, Session&) {
  auto o = std::make_shared<SolveOptions>();
  auto* cmd = app.add_subcommand("solve", "Low-energy spectrum or ground state of an instance");
  cmd->add_option("instance", o->input, "Instance in the text format")->required();
  cmd->add_option("--solver", o->solver, "Solver")
      ->check(CLI::IsMember({"naive", "chunked", "gray", "sa", "pt", "tn", "mps"}));
  cmd->add_option("--format", o->format, "Input kind")->check(CLI::IsMember({"ising", "qubo"}));
  cmd->add_option("--k", o->k, "Number of lowest states")->check(CLI::PositiveNumber);
  cmd->add_option("--chunk-exp", o->chunk_exp, "Chunk exponent M");
  cmd->add_option("--cache-depth", o->cache_depth, "Flip cache depth K");
  cmd->add_option("--fix", o->fix, "Variables fixed per Gray subproblem");
  cmd->add_option("--workers", o->workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--prune", o->prune, "Skip chunks by a certified lower bound");
  cmd->add_option("--seed", o->seed, "Seed for stochastic solvers");
  cmd->add_option("--beta", o->beta, "Inverse temperature (tn, mps)");
  cmd->add_option("--beta-min", o->beta_min, "Lowest ladder beta (sa, pt)");
  cmd->add_option("--beta-max", o->beta_max, "Highest ladder beta (sa, pt)");
  cmd->add_option("--sweeps", o->sweeps, "Monte Carlo sweeps");
  cmd->add_option("--replicas", o->replicas, "Tempering replicas");
  cmd->add_option("--restarts", o->restarts, "Annealing restarts");
  cmd->add_option("--chi", o->chi, "Boundary bond dimension");
  cmd->add_option("--cutoff", o->cutoff, "Relative probability cutoff");
  cmd->add_option("--max-branches", o->max_branches, "Branches kept per level");
  cmd->add_option("--clusters", o->clusters, "Cluster map file (tn)");
  cmd->add_option("--rows", o->rows, "Lattice rows for one spin per site (tn)");
  cmd->add_option("--cols", o->cols, "Lattice columns for one spin per site (tn)");
  cmd->add_option("--bond", o->bond, "MPS bond dimension");
  cmd->add_option("--dbeta", o->dbeta, "Imaginary-time step");
  cmd->add_option("--output,-o", o->output, "Result file; a manifest is written beside it");
  cmd->callback([o] {
    RunManifest manifest("solve");
    emit(run_solve(*o, manifest), manifest, o->output);
  });
}

void add_convert(CLI::App& app, Session&) {
  auto input = std::make_shared<std::string>();
  auto from = std::make_shared<std::string>("ising");
  auto* cmd = app.add_subcommand("convert", "Convert between Ising and QUBO text files");
  cmd->add_option("instance", *input, "Instance in the text format")->required();
  cmd->add_option("--from", *from, "Input kind")->check(CLI::IsMember({"ising", "qubo"}));
  cmd->callback([input, from] {
    const std::string text = read_file(*input);
    if (*from == "ising") {
      std::cout << format_text(ising_to_qubo(parse_ising_text(text)));
    } else {
      std::cout << format_text(qubo_to_ising(parse_qubo_text(text)));
    }
  });
}

}  // namespace spinglass::cli
