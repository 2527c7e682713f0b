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

#include "spinglass/instance_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "spinglass/errors.hpp"

namespace spinglass {
namespace {

struct RawInstance {
  std::vector<double> linear;
  std::vector<Coupling> quadratic;
  double offset = 0.0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

RawInstance parse_raw(std::string_view text) {
  RawInstance raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t expected = 0;
  std::size_t seen = 0;
  std::set<std::pair<std::size_t, std::size_t>> keys;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::istringstream comment{std::string(view.substr(1))};
      std::string word;
      double v = 0.0;
      if (comment >> word && word == "offset") {
        if (!(comment >> v)) fail(lineno, "malformed offset comment");
        raw.offset = v;
      }
      continue;
    }
    std::istringstream fields{std::string(view)};
    if (!have_header) {
      long long n = -1;
      long long m = -1;
      std::string extra;
      if (!(fields >> n >> m) || (fields >> extra) || n < 0 || m < 0) {
        fail(lineno, "expected header 'N M'");
      }
      raw.linear.assign(static_cast<std::size_t>(n), 0.0);
      expected = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    long long i = 0;
    long long j = 0;
    double v = 0.0;
    std::string extra;
    if (!(fields >> i >> j >> v) || (fields >> extra)) fail(lineno, "expected 'i j v'");
    const auto n = static_cast<long long>(raw.linear.size());
    if (i < 1 || j < 1 || i > n || j > n) fail(lineno, "index outside 1.." + std::to_string(n));
    auto a = static_cast<std::size_t>(i - 1);
    auto b = static_cast<std::size_t>(j - 1);
    if (a > b) std::swap(a, b);
    if (!keys.insert({a, b}).second) fail(lineno, "duplicate term");
    if (a == b) {
      raw.linear[a] = v;
    } else {
      raw.quadratic.push_back({a, b, v});
    }
    ++seen;
  }
  if (!have_header) throw ParseError("missing header line 'N M'");
  if (seen != expected) {
    throw ParseError("header declares " + std::to_string(expected) + " coefficient lines, found " +
                     std::to_string(seen));
  }
  return raw;
}

template <typename Instance>
std::string format_impl(const Instance& inst) {
  std::size_t lines = inst.edge_count();
  for (double v : inst.linear()) lines += v != 0.0 ? 1 : 0;
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (inst.offset() != 0.0) out << "# offset " << inst.offset() << '\n';
  out << inst.size() << ' ' << lines << '\n';
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.linear(i) != 0.0) out << i + 1 << ' ' << i + 1 << ' ' << inst.linear(i) << '\n';
  }
  for (const auto& c : inst.quadratic()) {
    out << c.i + 1 << ' ' << c.j + 1 << ' ' << c.value << '\n';
  }
  return out.str();
}

}  // namespace

IsingInstance parse_ising_text(std::string_view text) {
  auto raw = parse_raw(text);
  return IsingInstance(std::move(raw.linear), std::move(raw.quadratic), raw.offset);
}

QuboInstance parse_qubo_text(std::string_view text) {
  auto raw = parse_raw(text);
  return QuboInstance(std::move(raw.linear), std::move(raw.quadratic), raw.offset);
}

std::string format_text(const IsingInstance& inst) { return format_impl(inst); }
std::string format_text(const QuboInstance& inst) { return format_impl(inst); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace spinglass
