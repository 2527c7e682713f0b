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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spinglass {

// One quadratic term. Stored with i < j.
struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Neighbor {
  std::size_t index = 0;
  double value = 0.0;
};

// Shared storage for Ising and QUBO instances: linear terms, a simple edge
// set and a constant. Immutable after construction.
class QuadraticModel {
 public:
  std::size_t size() const noexcept { return linear_.size(); }
  double linear(std::size_t i) const { return linear_.at(i); }
  std::span<const double> linear() const noexcept { return linear_; }
  // Sorted by (i, j).
  std::span<const Coupling> quadratic() const noexcept { return quadratic_; }
  // Zero when the edge is absent.
  double quadratic(std::size_t i, std::size_t j) const;
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_.at(i); }
  double offset() const noexcept { return offset_; }
  std::size_t edge_count() const noexcept { return quadratic_.size(); }

 protected:
  QuadraticModel() = default;
  QuadraticModel(std::vector<double> linear, std::vector<Coupling> quadratic,
                 double offset);

  bool same_coefficients(const QuadraticModel& other) const;

 private:
  std::vector<double> linear_;
  std::vector<Coupling> quadratic_;
  std::vector<std::vector<Neighbor>> adjacency_;
  double offset_ = 0.0;
};

// H(s) = sum J_ij s_i s_j + sum h_i s_i + offset, s_i in {-1, +1}.
class IsingInstance : public QuadraticModel {
 public:
  IsingInstance() = default;
  IsingInstance(std::vector<double> fields, std::vector<Coupling> couplings,
                double offset = 0.0)
      : QuadraticModel(std::move(fields), std::move(couplings), offset) {}

  friend bool operator==(const IsingInstance& a, const IsingInstance& b) {
    return a.same_coefficients(b);
  }
};

// F(q) = sum a_ij q_i q_j + sum b_i q_i + offset, q_i in {0, 1}.
class QuboInstance : public QuadraticModel {
 public:
  QuboInstance() = default;
  QuboInstance(std::vector<double> linear, std::vector<Coupling> quadratic,
               double offset = 0.0)
      : QuadraticModel(std::move(linear), std::move(quadratic), offset) {}

  friend bool operator==(const QuboInstance& a, const QuboInstance& b) {
    return a.same_coefficients(b);
  }
};

// Accumulates coefficients (repeated terms add up) and produces an instance.
class ModelBuilder {
 public:
  explicit ModelBuilder(std::size_t n) : linear_(n, 0.0) {}

  std::size_t size() const noexcept { return linear_.size(); }
  ModelBuilder& add_linear(std::size_t i, double v);
  ModelBuilder& add_quadratic(std::size_t i, std::size_t j, double v);
  ModelBuilder& add_offset(double v) {
    offset_ += v;
    return *this;
  }

  IsingInstance build_ising() const;
  QuboInstance build_qubo() const;

 private:
  std::vector<Coupling> collect() const;

  std::vector<double> linear_;
  std::map<std::pair<std::size_t, std::size_t>, double> quadratic_;
  double offset_ = 0.0;
};

// Bit i holds variable i. For Ising states a set bit means spin +1.
struct PackedState {
  std::uint64_t word = 0;

  constexpr bool bit(std::size_t i) const noexcept { return (word >> i) & 1U; }
  constexpr int spin(std::size_t i) const noexcept { return bit(i) ? 1 : -1; }
  // kbit is 1-based.
  constexpr PackedState flipped(std::size_t kbit) const noexcept {
    return PackedState{word ^ (std::uint64_t{1} << (kbit - 1))};
  }

  friend constexpr auto operator<=>(const PackedState&, const PackedState&) = default;
};

PackedState pack_bits(std::span<const std::uint8_t> bits);
PackedState pack_spins(std::span<const int> spins);
std::vector<std::uint8_t> unpack_bits(PackedState s, std::size_t n);
std::vector<int> unpack_spins(PackedState s, std::size_t n);

struct SpectrumEntry {
  double energy = 0.0;
  PackedState state;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

// Total order used for every ranking: energy first, then state word.
constexpr bool entry_less(const SpectrumEntry& a, const SpectrumEntry& b) noexcept {
  if (a.energy != b.energy) return a.energy < b.energy;
  return a.state.word < b.state.word;
}

struct Spectrum {
  std::vector<SpectrumEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  const SpectrumEntry& operator[](std::size_t i) const { return entries[i]; }
  const SpectrumEntry& ground() const { return entries.front(); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

// Throws InvalidState if s has bits at positions >= n.
void check_state(PackedState s, std::size_t n);

double ising_energy(const IsingInstance& inst, PackedState s);
double ising_energy(const IsingInstance& inst, std::span<const int> spins);
double qubo_energy(const QuboInstance& inst, PackedState q);
double qubo_energy(const QuboInstance& inst, std::span<const std::uint8_t> bits);

// The returned QUBO carries the constant needed for energies to agree on
// every state word.
QuboInstance ising_to_qubo(const IsingInstance& inst);
IsingInstance qubo_to_ising(const QuboInstance& inst);

// Q_ii = b_i, Q_ij = Q_ji = a_ij. The offset is not part of the matrix.
Eigen::MatrixXd to_matrix(const QuboInstance& inst);
// sum_{i<=j} Q_ij q_i q_j + offset.
double matrix_energy(const Eigen::MatrixXd& q_matrix, double offset, PackedState q);

inline constexpr std::size_t kNaiveMaxVariables = 24;

// Reference enumeration. Refuses n > kNaiveMaxVariables.
Spectrum enumerate_spectrum_naive(const IsingInstance& inst, std::size_t k);
Spectrum enumerate_spectrum_naive(const QuboInstance& inst, std::size_t k);

}  // namespace spinglass
