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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/model.hpp"

namespace spinglass::tn {

inline constexpr std::size_t kDefaultClusterCap = 8;

// Sites are numbered row-major: site = row * cols + col.
struct SiteIndex {
  std::size_t row = 0;
  std::size_t col = 0;
};

struct InterEdge {
  std::size_t first = 0;   // site index, left or upper neighbor
  std::size_t second = 0;  // right or lower neighbor
  // Global spin indices with i in `first` and j in `second`.
  std::vector<Coupling> couplings;
};

// Spins grouped into the sites of a rows x cols square lattice. A cluster
// state is a word over the site's spins, bit t = cluster_spins(site)[t].
class ClusterLattice {
 public:
  ClusterLattice(IsingInstance instance, std::size_t rows, std::size_t cols,
                 std::vector<std::vector<std::size_t>> cluster_spins,
                 std::size_t cap = kDefaultClusterCap);

  // One spin per site, spin r * cols + c at (r, c).
  static ClusterLattice single_spin(IsingInstance instance, std::size_t rows,
                                    std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t sites() const noexcept { return rows_ * cols_; }
  std::size_t spin_count() const noexcept { return instance_.size(); }
  const IsingInstance& instance() const noexcept { return instance_; }

  std::span<const std::size_t> cluster_spins(std::size_t site) const {
    return clusters_.at(site);
  }
  std::size_t states(std::size_t site) const {
    return std::size_t{1} << clusters_.at(site).size();
  }
  // Fields and couplings inside the cluster, in local spin indices.
  const IsingInstance& intra(std::size_t site) const { return intra_.at(site); }
  std::span<const InterEdge> inter() const noexcept { return inter_; }

  SiteIndex position(std::size_t site) const { return {site / cols_, site % cols_}; }
  std::size_t owner(std::size_t spin) const { return owner_.at(spin); }
  std::size_t local_index(std::size_t spin) const { return local_.at(spin); }

  // Global state word with the cluster state written into the site's spins.
  std::uint64_t scatter(std::size_t site, std::uint32_t local, std::uint64_t word) const;
  std::uint32_t gather(std::size_t site, std::uint64_t word) const;

 private:
  IsingInstance instance_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<std::size_t>> clusters_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> local_;
  std::vector<IsingInstance> intra_;
  std::vector<InterEdge> inter_;
};

struct ClusterMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> clusters;  // row-major
};

// Lines "row col spin...". Blank lines and '#' comments are skipped.
ClusterMap parse_cluster_map(std::string_view text);

// Entries indexed [s][gamma], index 0 for -1 and 1 for +1.
struct EdgeFactors {
  Eigen::Matrix2d b;
  Eigen::Matrix2d c;
};

EdgeFactors edge_decompose(double j, double beta);

enum class Leg : std::size_t { left = 0, right = 1, up = 2, down = 3 };

// A^s_{lrud} = exp(log_scale) * weight[s] * L(s, l) * R(s, r) * U(s, u) * D(s, d).
// Every site tensor is rank one in the virtual legs for a fixed s, so it is
// stored by its factors.
struct PepsSite {
  std::vector<double> weight;
  std::array<Eigen::MatrixXd, 4> legs;  // rows: cluster states
  double log_scale = 0.0;

  std::size_t physical() const noexcept { return weight.size(); }
  const Eigen::MatrixXd& factor(Leg leg) const {
    return legs[static_cast<std::size_t>(leg)];
  }
  std::size_t dim(Leg leg) const { return static_cast<std::size_t>(factor(leg).cols()); }
  double entry(std::size_t s, std::size_t l, std::size_t r, std::size_t u,
               std::size_t d) const;
};

class PepsNetwork {
 public:
  PepsNetwork(std::size_t rows, std::size_t cols, double beta, std::vector<PepsSite> sites)
      : rows_(rows), cols_(cols), beta_(beta), sites_(std::move(sites)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double beta() const noexcept { return beta_; }
  const PepsSite& site(std::size_t r, std::size_t c) const { return sites_.at(r * cols_ + c); }
  std::span<const PepsSite> sites() const noexcept { return sites_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  double beta_;
  std::vector<PepsSite> sites_;
};

// Throws SizingError for clusters beyond kDefaultClusterCap spins.
PepsNetwork build_peps(const ClusterLattice& lat, double beta);

// Open-boundary matrix product state; tensor (a, p, b) at ((a * phys) + p) * right + b.
struct MpsTensor {
  std::size_t left = 1;
  std::size_t phys = 1;
  std::size_t right = 1;
  std::vector<double> data = std::vector<double>(1, 1.0);

  MpsTensor() = default;
  MpsTensor(std::size_t l, std::size_t p, std::size_t r)
      : left(l), phys(p), right(r), data(l * p * r, 0.0) {}

  double& operator()(std::size_t a, std::size_t p, std::size_t b) {
    return data[(a * phys + p) * right + b];
  }
  double operator()(std::size_t a, std::size_t p, std::size_t b) const {
    return data[(a * phys + p) * right + b];
  }
};

struct Mps {
  std::vector<MpsTensor> sites;
  double log_scale = 0.0;

  std::size_t size() const noexcept { return sites.size(); }
  std::size_t max_bond() const noexcept;
};

// Canonicalizes and cuts every bond to at most max_bond singular values,
// dropping those below rel_tol times the largest. Rescales so that tensors
// have unit max entry, folding the factor into log_scale.
void compress(Mps& mps, std::size_t max_bond, double rel_tol = 1e-14);

// env[r] contracts rows r..rows-1 with every physical leg traced; its
// physical legs are the up legs of row r. env[rows] is trivial.
struct BoundaryEnvironment {
  std::vector<Mps> rows;
};

BoundaryEnvironment contract_boundary(const PepsNetwork& net, std::size_t chi);

// log of the full contraction with all physical legs traced.
double log_partition_function(const PepsNetwork& net, std::size_t chi);

// Conditional distributions over one site's cluster states given the states
// of all earlier sites in row-major order.
class ConditionalOracle {
 public:
  ConditionalOracle(const PepsNetwork& net, std::size_t chi);
  ConditionalOracle(PepsNetwork&&, std::size_t) = delete;

  const PepsNetwork& network() const noexcept { return *net_; }
  const BoundaryEnvironment& environment() const noexcept { return env_; }

  // partial.size() must equal site; throws PreconditionError otherwise.
  std::vector<double> operator()(std::span<const std::uint32_t> partial,
                                 std::size_t site) const;

 private:
  const PepsNetwork* net_;
  BoundaryEnvironment env_;
};

std::vector<double> conditional_probability(const PepsNetwork& net,
                                            std::span<const std::uint32_t> partial,
                                            std::size_t site, std::size_t chi = 256);

struct TnConfig {
  double beta = 3.0;
  std::size_t chi = 16;
  double cutoff = 1e-3;
  std::size_t max_branches = 1024;
  std::size_t k = 1;

  void validate() const;
};

struct Diagnostics {
  double p_d = 0.0;  // largest discarded marginal probability
  double p_1 = 0.0;  // largest leaf probability
};

struct TnResult {
  Spectrum spectrum;
  Diagnostics diagnostics;
};

TnResult branch_and_bound(const ClusterLattice& lat, const TnConfig& cfg);

struct MpsConfig {
  std::size_t bond_dim = 64;
  double beta = 1.0;
  double dbeta = 0.25;
  double cutoff = 1e-12;
  std::size_t max_branches = 1000;
  std::size_t k = 1;

  // beta / dbeta must be a whole number of steps.
  std::size_t steps() const;
  void validate() const;
};

// Approximates exp(-beta H / 2) by imaginary-time gates starting from the
// uniform product state.
Mps imaginary_time_state(const IsingInstance& inst, const MpsConfig& cfg);

TnResult mps_imaginary_time(const IsingInstance& inst, const MpsConfig& cfg);

}  // namespace spinglass::tn
