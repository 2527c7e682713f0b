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

#include <filesystem>
#include <string>
#include <string_view>

#include "spinglass/model.hpp"

namespace spinglass {

// Plain-text coefficient format:
//
//   N M
//   i j v      (M lines, 1-based indices, i == j is a linear term)
//
// Blank lines and '#' comments are ignored, except that a comment of the form
// "# offset <v>" sets the constant term.
IsingInstance parse_ising_text(std::string_view text);
QuboInstance parse_qubo_text(std::string_view text);

std::string format_text(const IsingInstance& inst);
std::string format_text(const QuboInstance& inst);

std::string read_file(const std::filesystem::path& path);

}  // namespace spinglass
