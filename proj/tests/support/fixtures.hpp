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

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "spinglass/model.hpp"

namespace spinglass::testing {

// h = (1, -1, 2), J12 = 3, J23 = -2.
inline IsingInstance three_spin_ising() {
  return IsingInstance({1.0, -1.0, 2.0}, {{0, 1, 3.0}, {1, 2, -2.0}});
}

// b = (-4, -4, 8), a12 = 12, a23 = -8, no offset.
inline QuboInstance three_var_qubo() {
  return QuboInstance({-4.0, -4.0, 8.0}, {{0, 1, 12.0}, {1, 2, -8.0}});
}

// Edge probability `density`, coefficients uniform in [-1, 1].
inline IsingInstance random_ising(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution edge(density);
  std::vector<double> h(n);
  for (auto& v : h) v = coeff(rng);
  std::vector<Coupling> j;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) j.push_back({a, b, coeff(rng)});
    }
  }
  return IsingInstance(std::move(h), std::move(j));
}

inline QuboInstance random_qubo(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution edge(density);
  std::vector<double> b(n);
  for (auto& v : b) v = coeff(rng);
  std::vector<Coupling> a;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (edge(rng)) a.push_back({x, y, coeff(rng)});
    }
  }
  return QuboInstance(std::move(b), std::move(a), coeff(rng));
}

// Quasi-2D instance: site k of a rows x cols lattice holds spins
// k*m .. k*m+m-1, all intra-site pairs coupled, inter-site pairs between
// lattice neighbors coupled with probability 1/2. Coefficients in [-1, 1].
inline IsingInstance random_lattice_ising(std::size_t rows, std::size_t cols, std::size_t m,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution edge(0.5);
  const std::size_t n = rows * cols * m;
  std::vector<double> h(n);
  for (auto& v : h) v = coeff(rng);
  std::vector<Coupling> j;
  const auto link = [&](std::size_t a, std::size_t b, bool all) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        const std::size_t u = a * m + x;
        const std::size_t v = b * m + y;
        if (a == b && x >= y) continue;
        if (all || edge(rng)) j.push_back({std::min(u, v), std::max(u, v), coeff(rng)});
      }
    }
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t k = r * cols + c;
      link(k, k, true);
      if (c + 1 < cols) link(k, k + 1, false);
      if (r + 1 < rows) link(k, k + cols, false);
    }
  }
  return IsingInstance(std::move(h), std::move(j));
}

inline std::vector<std::vector<std::size_t>> block_clusters(std::size_t sites, std::size_t m) {
  std::vector<std::vector<std::size_t>> out(sites);
  for (std::size_t k = 0; k < sites; ++k) {
    for (std::size_t x = 0; x < m; ++x) out[k].push_back(k * m + x);
  }
  return out;
}

// Integer coefficients in [-lim, lim]; exact in floating point.
inline QuboInstance random_integer_qubo(std::size_t n, double density, int lim,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-lim, lim);
  std::bernoulli_distribution edge(density);
  std::vector<double> b(n);
  for (auto& v : b) v = coeff(rng);
  std::vector<Coupling> a;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (edge(rng)) a.push_back({x, y, static_cast<double>(coeff(rng))});
    }
  }
  return QuboInstance(std::move(b), std::move(a));
}

// Independent dense evaluation used as an oracle: spins from the word,
// explicit double loop over an n x n coupling table.
inline double dense_ising_energy(const IsingInstance& inst, std::uint64_t word) {
  const std::size_t n = inst.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ((word >> i) & 1U) ? 1.0 : -1.0;
  std::vector<double> table(n * n, 0.0);
  for (const auto& c : inst.quadratic()) table[c.i * n + c.j] = c.value;
  double e = inst.offset();
  for (std::size_t i = 0; i < n; ++i) {
    e += inst.linear(i) * s[i];
    for (std::size_t j = i + 1; j < n; ++j) e += table[i * n + j] * s[i] * s[j];
  }
  return e;
}

inline double dense_qubo_energy(const QuboInstance& inst, std::uint64_t word) {
  const std::size_t n = inst.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = ((word >> i) & 1U) ? 1.0 : 0.0;
  std::vector<double> table(n * n, 0.0);
  for (const auto& c : inst.quadratic()) table[c.i * n + c.j] = c.value;
  double e = inst.offset();
  for (std::size_t i = 0; i < n; ++i) {
    e += inst.linear(i) * q[i];
    for (std::size_t j = i + 1; j < n; ++j) e += table[i * n + j] * q[i] * q[j];
  }
  return e;
}

}  // namespace spinglass::testing
