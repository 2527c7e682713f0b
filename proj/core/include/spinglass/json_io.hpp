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

#include <string>
#include <string_view>

#include "spinglass/dynamics.hpp"
#include "spinglass/heuristics.hpp"
#include "spinglass/model.hpp"
#include "spinglass/tn.hpp"
#include "spinglass/topology.hpp"

namespace spinglass {

// {"k": int, "entries": [{"energy": float, "state": uint64}, ...]}
std::string format_spectrum(const Spectrum& s);
Spectrum parse_spectrum(std::string_view json);

std::string format_mc_result(const McResult& r);

// Spectrum fields plus "diagnostics": {"p_d": float, "p_1": float}.
std::string format_tn_result(const tn::TnResult& r);

// {"L": int, "field": "real|complex", "K": [[...]], "psi0": [...],
//  "N": int, "R": int, "D": int}. Complex entries are [re, im] pairs.
struct DynamicsInput {
  SystemSpec spec;
  FixedPointCode code;
};

DynamicsInput parse_dynamics_input(std::string_view json);

std::string format_trajectory(const Trajectory& t, const FixedPointCode& code);

// {"0": [3], "1": [0, 4], ...}
Embedding parse_embedding(std::string_view json);
std::string format_embedding(const Embedding& emb);

}  // namespace spinglass
