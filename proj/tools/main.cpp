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
#include <iostream>

#include "commands.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/version.hpp"

int main(int argc, char** argv) {
  namespace cli = spinglass::cli;
  CLI::App app{"Exact and approximate solvers for Ising and QUBO problems"};
  app.set_version_flag("--version", std::string(spinglass::kVersion));
  app.require_subcommand(1);
  cli::Session session;
  cli::add_solve(app, session);
  cli::add_convert(app, session);
  cli::add_railway(app, session);
  cli::add_dynamics(app, session);
  cli::add_embedding(app, session);
  cli::add_topology(app, session);
  cli::add_tts(app, session);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitParse;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return cli::kExitParse;
  } catch (const spinglass::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitParse;
  } catch (const spinglass::InvalidInstance& e) {
    std::cerr << "error: invalid instance: " << e.what() << '\n';
    return cli::kExitParse;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitParse;
  } catch (const spinglass::SizingError& e) {
    std::cerr << "error: refused: " << e.what() << '\n';
    return cli::kExitSizing;
  } catch (const spinglass::DefinitenessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitSolver;
  }
  return session.status;
}
