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
#include <memory>
#include <optional>

#include "commands.hpp"
#include "spinglass/bruteforce.hpp"
#include "spinglass/dynamics.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/json_io.hpp"

namespace spinglass::cli {
namespace {

struct DynamicsOptions {
  std::string spec;
  std::string objective = "lsq";
  std::optional<int> truncate;
  std::size_t substeps = 1;
  std::string output;
};

// Exhaustive Gray search; the QUBOs here stay small (N * R * L bits).
PackedState exhaustive(const QuboInstance& q) {
  constexpr std::size_t kMaxBits = 36;
  if (q.size() > kMaxBits) {
    throw SizingError("exhaustive search refuses " + std::to_string(q.size()) + " bits (limit " +
                      std::to_string(kMaxBits) + ")");
  }
  SearchConfig cfg;
  const auto n = static_cast<unsigned>(q.size());
  cfg.chunk_exp = n > 8 ? 4 : 1;
  cfg.cache_depth = std::min(4U, n - cfg.chunk_exp);
  return ground_search_gray(q, cfg).state;
}

}  // namespace

void add_dynamics(CLI::App& app, Session&) {
  auto o = std::make_shared<DynamicsOptions>();
  auto* cmd = app.add_subcommand("dynamics", "Parallel-in-time trajectory via a fixed-point QUBO");
  cmd->add_option("spec", o->spec, "System JSON with L, field, K, psi0, N, R, D")->required();
  cmd->add_option("--objective", o->objective, "Continuous objective")
      ->check(CLI::IsMember({"lsq", "energy"}));
  cmd->add_option("--truncate", o->truncate, "Truncate QUBO coefficients to r decimal digits")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--substeps", o->substeps, "Midpoint slices per interval")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output,-o", o->output, "Result file");
  cmd->callback([o] {
    RunManifest manifest("dynamics");
    const DynamicsInput in = parse_dynamics_input(read_input(manifest, o->spec));
    PipelineOptions options;
    options.form = o->objective == "energy" ? ObjectiveForm::energy : ObjectiveForm::lsq;
    options.substeps = o->substeps;
    options.truncate_digits = o->truncate;
    auto& params = manifest.parameters();
    params["objective"] = o->objective;
    params["substeps"] = o->substeps;
    params["truncate"] = o->truncate ? nlohmann::ordered_json(*o->truncate) : nullptr;
    const Trajectory t = simulate_pipeline(in.spec, in.code, exhaustive, options);
    emit(format_trajectory(t, in.code), manifest, o->output);
  });
}

}  // namespace spinglass::cli
