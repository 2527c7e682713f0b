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

#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "spinglass/model.hpp"

namespace spinglass::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSizing = 3;
inline constexpr int kExitSolver = 4;

// Bad or missing command-line arguments; exits with kExitParse.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shared by all subcommands; a command sets `status` when it finishes with a
// negative verdict rather than an error.
struct Session {
  int status = kExitOk;
};

std::string read_input(RunManifest& manifest, const std::string& path);
// `format` is "ising" or "qubo"; QUBO files are converted with energies kept.
IsingInstance load_instance(RunManifest& manifest, const std::string& path,
                            const std::string& format);

void add_solve(CLI::App& app, Session& session);
void add_convert(CLI::App& app, Session& session);
void add_railway(CLI::App& app, Session& session);
void add_dynamics(CLI::App& app, Session& session);
void add_embedding(CLI::App& app, Session& session);
void add_topology(CLI::App& app, Session& session);
void add_tts(CLI::App& app, Session& session);

}  // namespace spinglass::cli
