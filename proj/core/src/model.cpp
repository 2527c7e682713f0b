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

#include "spinglass/model.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "spinglass/errors.hpp"

namespace spinglass {

QuadraticModel::QuadraticModel(std::vector<double> linear,
                               std::vector<Coupling> quadratic, double offset)
    : linear_(std::move(linear)), quadratic_(std::move(quadratic)), offset_(offset) {
  const std::size_t n = linear_.size();
  for (auto& c : quadratic_) {
    if (c.i == c.j) {
      throw InvalidInstance("self-edge on variable " + std::to_string(c.i));
    }
    if (c.i >= n || c.j >= n) {
      throw InvalidInstance("edge (" + std::to_string(c.i) + ", " +
                            std::to_string(c.j) + ") outside n=" + std::to_string(n));
    }
    if (c.i > c.j) std::swap(c.i, c.j);
  }
  std::sort(quadratic_.begin(), quadratic_.end(), [](const Coupling& a, const Coupling& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t e = 1; e < quadratic_.size(); ++e) {
    if (quadratic_[e].i == quadratic_[e - 1].i && quadratic_[e].j == quadratic_[e - 1].j) {
      throw InvalidInstance("duplicate edge (" + std::to_string(quadratic_[e].i) + ", " +
                            std::to_string(quadratic_[e].j) + ")");
    }
  }
  adjacency_.resize(n);
  for (const auto& c : quadratic_) {
    adjacency_[c.i].push_back({c.j, c.value});
    adjacency_[c.j].push_back({c.i, c.value});
  }
}

double QuadraticModel::quadratic(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(quadratic_.begin(), quadratic_.end(), std::pair(i, j),
                             [](const Coupling& c, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair(c.i, c.j) < key;
                             });
  if (it != quadratic_.end() && it->i == i && it->j == j) return it->value;
  return 0.0;
}

bool QuadraticModel::same_coefficients(const QuadraticModel& other) const {
  return linear_ == other.linear_ && quadratic_ == other.quadratic_ &&
         offset_ == other.offset_;
}

ModelBuilder& ModelBuilder::add_linear(std::size_t i, double v) {
  if (i >= linear_.size()) {
    throw InvalidInstance("variable " + std::to_string(i) + " outside n=" +
                          std::to_string(linear_.size()));
  }
  linear_[i] += v;
  return *this;
}

ModelBuilder& ModelBuilder::add_quadratic(std::size_t i, std::size_t j, double v) {
  if (i == j) throw InvalidInstance("self-edge on variable " + std::to_string(i));
  if (i >= linear_.size() || j >= linear_.size()) {
    throw InvalidInstance("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside n=" + std::to_string(linear_.size()));
  }
  if (i > j) std::swap(i, j);
  quadratic_[{i, j}] += v;
  return *this;
}

std::vector<Coupling> ModelBuilder::collect() const {
  std::vector<Coupling> out;
  out.reserve(quadratic_.size());
  for (const auto& [key, v] : quadratic_) {
    if (v != 0.0) out.push_back({key.first, key.second, v});
  }
  return out;
}

IsingInstance ModelBuilder::build_ising() const {
  return IsingInstance(linear_, collect(), offset_);
}

QuboInstance ModelBuilder::build_qubo() const {
  return QuboInstance(linear_, collect(), offset_);
}

PackedState pack_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw InvalidState("more than 64 variables cannot be packed");
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InvalidState("bit value must be 0 or 1");
    if (bits[i]) w |= std::uint64_t{1} << i;
  }
  return PackedState{w};
}

PackedState pack_spins(std::span<const int> spins) {
  if (spins.size() > 64) throw InvalidState("more than 64 variables cannot be packed");
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) throw InvalidState("spin value must be +1 or -1");
    if (spins[i] == 1) w |= std::uint64_t{1} << i;
  }
  return PackedState{w};
}

std::vector<std::uint8_t> unpack_bits(PackedState s, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.bit(i) ? 1 : 0;
  return out;
}

std::vector<int> unpack_spins(PackedState s, std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.spin(i);
  return out;
}

void check_state(PackedState s, std::size_t n) {
  if (n < 64 && (s.word >> n) != 0) {
    throw InvalidState("state word " + std::to_string(s.word) + " has bits beyond n=" +
                       std::to_string(n));
  }
}

namespace {

template <typename Value>
double evaluate(const QuadraticModel& m, Value&& value) {
  double e = m.offset();
  const auto lin = m.linear();
  for (std::size_t i = 0; i < lin.size(); ++i) e += lin[i] * value(i);
  for (const auto& c : m.quadratic()) e += c.value * value(c.i) * value(c.j);
  return e;
}

}  // namespace

double ising_energy(const IsingInstance& inst, PackedState s) {
  check_state(s, inst.size());
  return evaluate(inst, [s](std::size_t i) { return static_cast<double>(s.spin(i)); });
}

double ising_energy(const IsingInstance& inst, std::span<const int> spins) {
  if (spins.size() != inst.size()) throw InvalidState("spin vector length differs from n");
  return evaluate(inst, [spins](std::size_t i) { return static_cast<double>(spins[i]); });
}

double qubo_energy(const QuboInstance& inst, PackedState q) {
  check_state(q, inst.size());
  return evaluate(inst, [q](std::size_t i) { return q.bit(i) ? 1.0 : 0.0; });
}

double qubo_energy(const QuboInstance& inst, std::span<const std::uint8_t> bits) {
  if (bits.size() != inst.size()) throw InvalidState("bit vector length differs from n");
  return evaluate(inst, [bits](std::size_t i) { return bits[i] ? 1.0 : 0.0; });
}

QuboInstance ising_to_qubo(const IsingInstance& inst) {
  const std::size_t n = inst.size();
  std::vector<double> b(n);
  double sum_h = 0.0;
  double sum_j = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = 2.0 * inst.linear(i);
    sum_h += inst.linear(i);
  }
  std::vector<Coupling> a;
  a.reserve(inst.edge_count());
  for (const auto& c : inst.quadratic()) {
    a.push_back({c.i, c.j, 4.0 * c.value});
    b[c.i] -= 2.0 * c.value;
    b[c.j] -= 2.0 * c.value;
    sum_j += c.value;
  }
  return QuboInstance(std::move(b), std::move(a), inst.offset() - (sum_h - sum_j));
}

IsingInstance qubo_to_ising(const QuboInstance& inst) {
  const std::size_t n = inst.size();
  std::vector<double> h(n);
  double constant = inst.offset();
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = inst.linear(i) / 2.0;
    constant += inst.linear(i) / 2.0;
  }
  std::vector<Coupling> j;
  j.reserve(inst.edge_count());
  for (const auto& c : inst.quadratic()) {
    j.push_back({c.i, c.j, c.value / 4.0});
    h[c.i] += c.value / 4.0;
    h[c.j] += c.value / 4.0;
    constant += c.value / 4.0;
  }
  return IsingInstance(std::move(h), std::move(j), constant);
}

Eigen::MatrixXd to_matrix(const QuboInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) q(i, i) = inst.linear(static_cast<std::size_t>(i));
  for (const auto& c : inst.quadratic()) {
    const auto i = static_cast<Eigen::Index>(c.i);
    const auto j = static_cast<Eigen::Index>(c.j);
    q(i, j) = c.value;
    q(j, i) = c.value;
  }
  return q;
}

double matrix_energy(const Eigen::MatrixXd& q_matrix, double offset, PackedState q) {
  const auto n = q_matrix.rows();
  check_state(q, static_cast<std::size_t>(n));
  double e = offset;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!q.bit(static_cast<std::size_t>(i))) continue;
    for (Eigen::Index j = i; j < n; ++j) {
      if (q.bit(static_cast<std::size_t>(j))) e += q_matrix(i, j);
    }
  }
  return e;
}

namespace {

template <typename Energy>
Spectrum naive_spectrum(std::size_t n, std::size_t k, Energy&& energy) {
  if (n > kNaiveMaxVariables) {
    throw SizingError("naive enumeration refuses n=" + std::to_string(n) + " (limit " +
                      std::to_string(kNaiveMaxVariables) + ")");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  if (k > total) {
    throw PreconditionError("k=" + std::to_string(k) + " exceeds the 2^n states");
  }
  // Max-heap on the total order keeps the k best seen so far.
  std::priority_queue<SpectrumEntry, std::vector<SpectrumEntry>, decltype(&entry_less)> heap(
      &entry_less);
  for (std::uint64_t w = 0; w < total; ++w) {
    SpectrumEntry e{energy(PackedState{w}), PackedState{w}};
    if (heap.size() < k) {
      heap.push(e);
    } else if (k > 0 && entry_less(e, heap.top())) {
      heap.pop();
      heap.push(e);
    }
  }
  Spectrum out;
  out.entries.resize(heap.size());
  for (std::size_t i = heap.size(); i-- > 0;) {
    out.entries[i] = heap.top();
    heap.pop();
  }
  return out;
}

}  // namespace

Spectrum enumerate_spectrum_naive(const IsingInstance& inst, std::size_t k) {
  return naive_spectrum(inst.size(), k,
                        [&inst](PackedState s) { return ising_energy(inst, s); });
}

Spectrum enumerate_spectrum_naive(const QuboInstance& inst, std::size_t k) {
  return naive_spectrum(inst.size(), k,
                        [&inst](PackedState s) { return qubo_energy(inst, s); });
}

}  // namespace spinglass
