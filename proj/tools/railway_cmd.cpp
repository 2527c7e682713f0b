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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "spinglass/bruteforce.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/heuristics.hpp"
#include "spinglass/instance_io.hpp"
#include "spinglass/railway_io.hpp"

namespace spinglass::cli {
namespace {

using nlohmann::ordered_json;
using railway::DispatchProblem;

struct RailwayOptions {
  std::string problem;
  std::string delays;
  std::string output;
  std::optional<double> p_pair;
  std::optional<double> p_sum;
  std::optional<int> dmax;
  std::string oracle = "onehot";
  std::optional<std::uint64_t> seed;
  std::size_t sweeps = 2000;
  std::size_t restarts = 50;
};

DispatchProblem load_problem(const RailwayOptions& o, RunManifest& manifest) {
  DispatchProblem p = railway::parse_dispatch_problem(read_input(manifest, o.problem));
  if (o.p_pair) p.p_pair = *o.p_pair;
  if (o.p_sum) p.p_sum = *o.p_sum;
  if (o.dmax) std::fill(p.max_delays.begin(), p.max_delays.end(), *o.dmax);
  p.validate();
  auto& params = manifest.parameters();
  params["p_pair"] = p.p_pair;
  params["p_sum"] = p.p_sum;
  params["d_max"] = p.max_delays;
  return p;
}

void add_options(CLI::App* cmd, RailwayOptions& o) {
  cmd->add_option("problem", o.problem, "Dispatching problem JSON")->required();
  cmd->add_option("--p-pair", o.p_pair, "Pair penalty weight");
  cmd->add_option("--p-sum", o.p_sum, "One-hot penalty weight");
  cmd->add_option("--dmax", o.dmax, "Maximal secondary delay for every train");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

PackedState solve_qubo(const RailwayOptions& o, const DispatchProblem& p,
                       const railway::CompiledProblem& compiled, RunManifest& manifest) {
  if (o.oracle == "onehot") return railway::exact_onehot_search(p, 1).ground().state;
  if (o.oracle == "chunked") {
    SearchConfig cfg;
    const auto n = static_cast<unsigned>(compiled.qubo.size());
    cfg.chunk_exp = std::min(16U, n);
    cfg.prune = true;
    return spectrum_search(compiled.qubo, cfg).ground().state;
  }
  if (!o.seed) throw UsageError("--oracle sa needs --seed");
  manifest.set_seed(*o.seed);
  manifest.parameters()["sweeps"] = o.sweeps;
  manifest.parameters()["restarts"] = o.restarts;
  const auto ladder = BetaLadder::geometric(0.1, 5.0, 20);
  return simulated_annealing(qubo_to_ising(compiled.qubo), o.sweeps, ladder, o.restarts, *o.seed)
      .best_state;
}

}  // namespace

void add_railway(CLI::App& app, Session& session) {
  auto* rail = app.add_subcommand("railway", "Train dispatching as a QUBO");
  rail->require_subcommand(1);

  auto compile_opts = std::make_shared<RailwayOptions>();
  auto* compile = rail->add_subcommand("compile", "Write the QUBO and its variable map");
  add_options(compile, *compile_opts);
  compile->add_option("--output-dir,-o", compile_opts->output,
                      "Directory for qubo.txt, variables.json and the manifest");
  compile->callback([compile_opts] {
    RunManifest manifest("railway compile");
    const DispatchProblem p = load_problem(*compile_opts, manifest);
    const auto compiled = railway::assemble_qubo(p);
    const std::string qubo = format_text(compiled.qubo);
    const std::string map = railway::format_variable_map(p, compiled.map);
    if (compile_opts->output.empty()) {
      std::cout << qubo;
      return;
    }
    const std::filesystem::path dir(compile_opts->output);
    std::filesystem::create_directories(dir);
    write_text(dir / "qubo.txt", qubo);
    write_text(dir / "variables.json", map + "\n");
    write_text(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  });

  auto solve_opts = std::make_shared<RailwayOptions>();
  auto* solve = rail->add_subcommand("solve", "Solve, decode and validate a schedule");
  add_options(solve, *solve_opts);
  solve->add_option("--oracle", solve_opts->oracle, "Solver for the assembled QUBO")
      ->check(CLI::IsMember({"onehot", "chunked", "sa"}));
  solve->add_option("--seed", solve_opts->seed, "Seed for --oracle sa");
  solve->add_option("--sweeps", solve_opts->sweeps, "Annealing sweeps");
  solve->add_option("--restarts", solve_opts->restarts, "Annealing restarts");
  solve->add_option("--output,-o", solve_opts->output, "Result file");
  solve->callback([solve_opts, &session] {
    RunManifest manifest("railway solve");
    const DispatchProblem p = load_problem(*solve_opts, manifest);
    manifest.parameters()["oracle"] = solve_opts->oracle;
    const auto compiled = railway::assemble_qubo(p);
    const PackedState best = solve_qubo(*solve_opts, p, compiled, manifest);
    const auto decoded = railway::decode_schedule(best, compiled.map);
    const auto report = railway::validate_schedule(p, decoded.delays);
    ordered_json out = {{"energy", qubo_energy(compiled.qubo, best)},
                        {"state", best.word},
                        {"onehot_valid", decoded.valid()}};
    out["delays"] = ordered_json::parse(railway::format_delay_table(p, decoded.delays));
    out["report"] = ordered_json::parse(railway::format_schedule_report(p, report));
    emit(out.dump(2), manifest, solve_opts->output);
    if (!decoded.valid() || !report.passed()) session.status = kExitCheckFailed;
  });

  auto validate_opts = std::make_shared<RailwayOptions>();
  auto* validate = rail->add_subcommand("validate", "Check a delay table against all conditions");
  add_options(validate, *validate_opts);
  validate->add_option("delays", validate_opts->delays, "Delay table JSON")->required();
  validate->callback([validate_opts, &session] {
    RunManifest manifest("railway validate");
    const DispatchProblem p = load_problem(*validate_opts, manifest);
    const auto delays = railway::parse_delay_table(p, read_input(manifest, validate_opts->delays));
    const auto report = railway::validate_schedule(p, delays);
    std::cout << railway::format_schedule_report(p, report) << '\n';
    if (!report.passed()) {
      for (const auto& v : report.violations) {
        std::cerr << "violated: " << railway::to_string(v.check) << " (" << v.detail << ")\n";
      }
      session.status = kExitCheckFailed;
    }
  });
}

}  // namespace spinglass::cli
