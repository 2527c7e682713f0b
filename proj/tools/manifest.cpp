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

#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>

#include "spinglass/version.hpp"

namespace spinglass::cli {

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path, const std::string& contents) {
  inputs_.push_back({path.string(), sha256_hex(contents)});
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& in : inputs_) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start_;
  nlohmann::ordered_json out = {{"command", command_},
                                {"inputs", std::move(inputs)},
                                {"parameters", parameters_}};
  out["seed"] = seed_ ? nlohmann::ordered_json(*seed_) : nlohmann::ordered_json(nullptr);
  out["version"] = std::string(kVersion);
  out["wall_time"] = wall.count();
  return out;
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    std::array<char, 3> byte{};
    std::snprintf(byte.data(), byte.size(), "%02x", digest[i]);
    hex += byte.data();
  }
  return hex;
}

void emit(const std::string& text, const RunManifest& manifest, const std::string& out) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  const auto write = [](const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body << '\n';
  };
  write(out, text);
  write(out + ".manifest.json", manifest.to_json().dump(2));
}

}  // namespace spinglass::cli
