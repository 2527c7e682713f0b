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

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinglass::cli {

struct InputDigest {
  std::string path;
  std::string sha256;
};

// Written next to every result file. Rerunning with the same command,
// inputs, parameters and seed reproduces the result byte for byte, apart
// from wall-time fields.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void add_input(const std::filesystem::path& path, const std::string& contents);
  nlohmann::ordered_json& parameters() { return parameters_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  nlohmann::ordered_json to_json() const;

 private:
  std::string command_;
  std::vector<InputDigest> inputs_;
  nlohmann::ordered_json parameters_ = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

std::string sha256_hex(const std::string& data);

// Writes `text` to `out` (or stdout when empty) and, for files, the manifest
// to `<out>.manifest.json`.
void emit(const std::string& text, const RunManifest& manifest, const std::string& out);

}  // namespace spinglass::cli
