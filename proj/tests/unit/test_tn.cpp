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

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/tn.hpp"

namespace spinglass::tn {
namespace {

using testing::block_clusters;
using testing::dense_ising_energy;
using testing::random_ising;
using testing::random_lattice_ising;
using testing::three_spin_ising;

ClusterLattice blocks(std::size_t rows, std::size_t cols, std::size_t m, std::uint64_t seed) {
  return ClusterLattice(random_lattice_ising(rows, cols, m, seed), rows, cols,
                        block_clusters(rows * cols, m));
}

double log_z_enumerated(const IsingInstance& inst, double beta) {
  const std::uint64_t states = std::uint64_t{1} << inst.size();
  double shift = 0.0;
  for (std::uint64_t w = 0; w < states; ++w) {
    shift = std::min(shift, beta * dense_ising_energy(inst, w));
  }
  double z = 0.0;
  for (std::uint64_t w = 0; w < states; ++w) {
    z += std::exp(-beta * dense_ising_energy(inst, w) + shift);
  }
  return std::log(z) - shift;
}

// Exact p(site state | states of earlier sites in `word`) by enumeration.
std::vector<double> enumerated_conditional(const ClusterLattice& lat, double beta,
                                           std::uint64_t word, std::size_t site) {
  std::uint64_t fixed = 0;
  for (std::size_t k = 0; k < site; ++k) {
    for (auto v : lat.cluster_spins(k)) fixed |= std::uint64_t{1} << v;
  }
  std::vector<double> p(lat.states(site), 0.0);
  const std::uint64_t states = std::uint64_t{1} << lat.spin_count();
  for (std::uint64_t w = 0; w < states; ++w) {
    if ((w & fixed) != (word & fixed)) continue;
    p[lat.gather(site, w)] += std::exp(-beta * dense_ising_energy(lat.instance(), w));
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

std::vector<std::uint32_t> prefix(const ClusterLattice& lat, std::uint64_t word,
                                  std::size_t site) {
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < site; ++k) out.push_back(lat.gather(k, word));
  return out;
}

TEST(EdgeDecompose, ZeroCouplingIsTrivial) {
  const auto f = edge_decompose(0.0, 0.7);
  EXPECT_EQ(f.c, Eigen::Matrix2d::Ones());
  EXPECT_EQ(f.b, Eigen::Matrix2d::Identity());
}

TEST(EdgeDecompose, ReproducesBoltzmannFactor) {
  for (double j : {1.0, -0.3, 2.5}) {
    for (double beta : {0.5, 1.0, 3.0}) {
      const auto f = edge_decompose(j, beta);
      for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
          const double want = std::exp(-beta * j * (si ? 1 : -1) * (sj ? 1 : -1));
          const double got = f.b.row(si).dot(f.c.row(sj));
          EXPECT_NEAR(got / want, 1.0, 1e-15);
        }
      }
    }
  }
  const auto f = edge_decompose(1.0, 0.5);
  EXPECT_DOUBLE_EQ(f.b.row(1).dot(f.c.row(1)), std::exp(-0.5));
}

TEST(ClusterLattice, Validation) {
  const IsingInstance chain({0, 0, 0}, {{0, 2, 1.0}});
  EXPECT_THROW(ClusterLattice::single_spin(chain, 1, 3), InvalidInstance);
  EXPECT_THROW(ClusterLattice(chain, 1, 2, {{0}, {1}}), InvalidInstance);
  EXPECT_THROW(ClusterLattice(chain, 1, 2, {{0, 1}, {1, 2}}), InvalidInstance);
  EXPECT_THROW(ClusterLattice(chain, 1, 2, {{0, 1}}), InvalidInstance);
  const IsingInstance big(std::vector<double>(9, 0.0), {});
  EXPECT_THROW(ClusterLattice(big, 1, 1, block_clusters(1, 9)), SizingError);

  const auto lat = ClusterLattice(chain, 1, 2, {{0, 1}, {2}});
  ASSERT_EQ(lat.inter().size(), 1U);
  EXPECT_EQ(lat.inter()[0].couplings[0].i, 0U);
  EXPECT_EQ(lat.gather(0, 0b011), 3U);
  EXPECT_EQ(lat.scatter(1, 1, 0), 0b100U);
}

TEST(ClusterLattice, ReversedCouplingIsOriented) {
  // Spin 0 sits right of spin 1.
  const IsingInstance inst({0, 0}, {{0, 1, 0.5}});
  const auto lat = ClusterLattice(inst, 1, 2, {{1}, {0}});
  ASSERT_EQ(lat.inter().size(), 1U);
  EXPECT_EQ(lat.inter()[0].couplings[0].i, 1U);
  EXPECT_EQ(lat.inter()[0].couplings[0].j, 0U);
}

TEST(ClusterMap, Parses) {
  const auto m = parse_cluster_map("# map\n0 0 0 1\n0 1 2 3\n\n1 0 4\n1 1 5 # tail\n");
  EXPECT_EQ(m.rows, 2U);
  EXPECT_EQ(m.cols, 2U);
  EXPECT_EQ(m.clusters[1], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(m.clusters[3], (std::vector<std::size_t>{5}));
  EXPECT_THROW(parse_cluster_map("0 0 1\n0 0 2\n"), ParseError);
  EXPECT_THROW(parse_cluster_map("0 x 1\n"), ParseError);
  EXPECT_THROW(parse_cluster_map("0 0 1 y\n"), ParseError);
  EXPECT_THROW(parse_cluster_map("\n"), ParseError);
}

TEST(Peps, SingleClusterPartitionFunction) {
  const IsingInstance inst({0.3, -0.8}, {{0, 1, 1.1}});
  const auto lat = ClusterLattice(inst, 1, 1, {{0, 1}});
  for (double beta : {0.5, 2.0}) {
    EXPECT_NEAR(log_partition_function(build_peps(lat, beta), 4), log_z_enumerated(inst, beta),
                1e-12);
  }
}

TEST(Peps, ZeroBetaCountsStates) {
  const auto lat = blocks(2, 2, 2, 3);
  EXPECT_NEAR(log_partition_function(build_peps(lat, 0.0), 16), 8 * std::log(2.0), 1e-12);
}

TEST(Peps, SingleSpinLatticeMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto lat = ClusterLattice::single_spin(random_lattice_ising(2, 2, 1, seed), 2, 2);
    const double want = log_z_enumerated(lat.instance(), 1.3);
    EXPECT_NEAR(log_partition_function(build_peps(lat, 1.3), 16) - want, 0.0, 1e-10);
  }
}

TEST(Peps, EntriesAreNonnegative) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto lat = blocks(2, 3, 2, seed);
    const auto net = build_peps(lat, 2.0);
    for (const auto& st : net.sites()) {
      for (double w : st.weight) EXPECT_GE(w, 0.0);
      for (const auto& leg : st.legs) EXPECT_GE(leg.minCoeff(), 0.0);
      for (std::size_t s = 0; s < st.physical(); ++s) {
        for (std::size_t l = 0; l < st.dim(Leg::left); ++l) {
          for (std::size_t r = 0; r < st.dim(Leg::right); ++r) {
            for (std::size_t u = 0; u < st.dim(Leg::up); ++u) {
              for (std::size_t d = 0; d < st.dim(Leg::down); ++d) {
                EXPECT_GE(st.entry(s, l, r, u, d), 0.0);
              }
            }
          }
        }
      }
    }
  }
}

TEST(Peps, BondDimensionsMatchBetweenNeighbors) {
  const auto lat = blocks(3, 3, 2, 9);
  const auto net = build_peps(lat, 1.0);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& st = net.site(r, c);
      if (c + 1 < 3) EXPECT_EQ(st.dim(Leg::right), net.site(r, c + 1).dim(Leg::left));
      if (r + 1 < 3) EXPECT_EQ(st.dim(Leg::down), net.site(r + 1, c).dim(Leg::up));
      EXPECT_LE(st.dim(Leg::right), 4U);
    }
  }
}

TEST(Peps, RejectsOversizedCluster) {
  const IsingInstance inst(std::vector<double>(9, 0.1), {});
  const auto lat = ClusterLattice(inst, 1, 1, block_clusters(1, 9), 16);
  EXPECT_THROW(build_peps(lat, 1.0), SizingError);
}

TEST(Boundary, SingleRowIsTheRowItself) {
  const auto lat = blocks(1, 4, 1, 2);
  const auto net = build_peps(lat, 1.0);
  const auto env = contract_boundary(net, 64);
  ASSERT_EQ(env.rows.size(), 2U);
  for (std::size_t c = 0; c + 1 < 4; ++c) {
    EXPECT_LE(env.rows[0].sites[c].right, net.site(0, c).dim(Leg::right));
  }
  EXPECT_NEAR(log_partition_function(net, 64), log_z_enumerated(lat.instance(), 1.0), 1e-12);
}

TEST(Boundary, ThreeByThreeExactAndTruncated) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lat = ClusterLattice::single_spin(random_lattice_ising(3, 3, 1, seed), 3, 3);
    const auto net = build_peps(lat, 0.5);
    const double exact = log_z_enumerated(lat.instance(), 0.5);
    EXPECT_NEAR(log_partition_function(net, 64), exact, 1e-10);
    worst = std::max(worst, std::abs(std::expm1(log_partition_function(net, 2) - exact)));
  }
  EXPECT_LE(worst, 0.05);
}

TEST(Conditional, TwoSpinRatio) {
  const IsingInstance inst({0, 0}, {{0, 1, 1.0}});
  const auto net = build_peps(ClusterLattice::single_spin(inst, 1, 2), 1.0);
  const std::vector<std::uint32_t> first{1};
  const auto p = conditional_probability(net, first, 1);
  EXPECT_NEAR(p[1], std::exp(-1.0) / (std::exp(-1.0) + std::exp(1.0)), 1e-15);
  EXPECT_NEAR(p[1], 0.1192, 5e-5);
}

TEST(Conditional, ZeroBetaIsUniform) {
  const auto lat = blocks(2, 2, 2, 4);
  const auto net = build_peps(lat, 0.0);
  const ConditionalOracle oracle(net, 16);
  for (std::size_t site = 0; site < 4; ++site) {
    for (double v : oracle(prefix(lat, 0b10110101, site), site)) EXPECT_NEAR(v, 0.25, 1e-14);
  }
}

TEST(Conditional, RejectsOutOfOrderSite) {
  const auto lat = blocks(2, 2, 1, 4);
  const auto net = build_peps(lat, 1.0);
  const std::vector<std::uint32_t> partial{0, 1};
  EXPECT_THROW(conditional_probability(net, partial, 3), PreconditionError);
  EXPECT_THROW(conditional_probability(net, partial, 4), PreconditionError);
  const std::vector<std::uint32_t> bad{2, 1};
  EXPECT_THROW(conditional_probability(net, bad, 2), PreconditionError);
}

TEST(Conditional, MatchesEnumerationOnTwoByThree) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto lat = blocks(2, 3, 2, seed);
    const double beta = 1.5;
    const auto net = build_peps(lat, beta);
    const ConditionalOracle oracle(net, 64);
    for (int trial = 0; trial < 10; ++trial) {
      const std::uint64_t word = rng() & 0xFFFU;
      for (std::size_t site = 0; site < 6; ++site) {
        const auto got = oracle(prefix(lat, word, site), site);
        const auto want = enumerated_conditional(lat, beta, word, site);
        for (std::size_t s = 0; s < 4; ++s) EXPECT_NEAR(got[s], want[s], 1e-8);
      }
    }
  }
}

TEST(Conditional, LocalityOnFourByFour) {
  std::mt19937_64 rng(5);
  for (std::size_t chi : {4U, 64U}) {
    const auto lat = ClusterLattice::single_spin(random_lattice_ising(4, 4, 1, chi), 4, 4);
    const auto net = build_peps(lat, 1.0);
    const ConditionalOracle oracle(net, chi);
    for (int trial = 0; trial < 3; ++trial) {
      const std::uint64_t word = rng() & 0xFFFFU;
      for (std::size_t site = 5; site < 16; ++site) {
        const std::size_t r = site / 4;
        const std::size_t c = site % 4;
        const auto base = oracle(prefix(lat, word, site), site);
        // Interior of the fixed region: rows above r - 1, and row r - 1 left of c.
        for (std::size_t k = 0; k + 4 < site; ++k) {
          if (k / 4 + 1 == r && k % 4 >= c) continue;
          const auto flipped = oracle(prefix(lat, word ^ (std::uint64_t{1} << k), site), site);
          for (std::size_t s = 0; s < 2; ++s) EXPECT_NEAR(flipped[s], base[s], 1e-12);
        }
      }
    }
  }
}

TEST(Conditional, ChainRuleGivesBoltzmannWeight) {
  const auto lat = blocks(2, 2, 2, 8);
  const double beta = 0.9;
  const auto net = build_peps(lat, beta);
  const ConditionalOracle oracle(net, 64);
  const double log_z = log_z_enumerated(lat.instance(), beta);
  for (std::uint64_t w = 0; w < 256; ++w) {
    double logp = 0.0;
    for (std::size_t site = 0; site < 4; ++site) {
      logp += std::log(oracle(prefix(lat, w, site), site)[lat.gather(site, w)]);
    }
    EXPECT_NEAR(logp, -beta * dense_ising_energy(lat.instance(), w) - log_z, 1e-10);
  }
}

TEST(BranchAndBound, ThreeSpinCluster) {
  const auto lat = ClusterLattice(three_spin_ising(), 1, 1, {{0, 1, 2}});
  TnConfig cfg;
  cfg.beta = 1.0;
  cfg.cutoff = 1e-12;
  cfg.k = 5;
  const auto res = branch_and_bound(lat, cfg);
  std::vector<double> energies;
  for (const auto& e : res.spectrum.entries) energies.push_back(e.energy);
  EXPECT_EQ(energies, (std::vector<double>{-5, -5, -5, -1, 3}));
  EXPECT_EQ(res.spectrum, enumerate_spectrum_naive(three_spin_ising(), 5));
}

TEST(BranchAndBound, ExhaustiveSettingsGiveExactSpectrum) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto lat = blocks(2, 2, 2, seed);
    TnConfig cfg;
    cfg.beta = 1.0;
    cfg.chi = 64;
    cfg.cutoff = 1e-300;
    cfg.max_branches = 256;
    cfg.k = 256;
    const auto res = branch_and_bound(lat, cfg);
    EXPECT_EQ(res.spectrum, enumerate_spectrum_naive(lat.instance(), 256));
    EXPECT_EQ(res.diagnostics.p_d, 0.0);
  }
}

TEST(BranchAndBound, GroundAndCertificateOnThreeByThree) {
  int matches = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lat = blocks(3, 3, 2, 100 + seed);
    TnConfig cfg;
    cfg.beta = 3.0;
    cfg.chi = 16;
    cfg.cutoff = 1e-3;
    const auto res = branch_and_bound(lat, cfg);
    const double oracle = enumerate_spectrum_naive(lat.instance(), 1).ground().energy;
    const bool match = std::abs(res.spectrum.ground().energy - oracle) < 1e-9;
    matches += match;
    if (res.diagnostics.p_d < res.diagnostics.p_1) EXPECT_TRUE(match) << seed;
    EXPECT_GT(res.diagnostics.p_1, 0.0);
    EXPECT_LE(res.diagnostics.p_1, 1.0);
  }
  EXPECT_EQ(matches, 10);
}

TEST(BranchAndBound, EnergiesIndependentOfBeta) {
  const auto lat = blocks(2, 3, 2, 21);
  TnConfig cfg;
  cfg.k = 50;
  cfg.cutoff = 1e-6;
  cfg.beta = 2.0;
  const auto a = branch_and_bound(lat, cfg);
  cfg.beta = 3.0;
  const auto b = branch_and_bound(lat, cfg);
  std::size_t common = 0;
  for (const auto& x : a.spectrum.entries) {
    EXPECT_EQ(x.energy, ising_energy(lat.instance(), x.state));
    for (const auto& y : b.spectrum.entries) {
      if (x.state == y.state) {
        EXPECT_EQ(x.energy, y.energy);
        ++common;
      }
    }
  }
  EXPECT_GT(common, 0U);
}

TEST(BranchAndBound, ConfigValidation) {
  const auto lat = blocks(1, 2, 1, 0);
  TnConfig cfg;
  cfg.cutoff = 0.0;
  EXPECT_THROW(branch_and_bound(lat, cfg), PreconditionError);
  cfg = TnConfig{};
  cfg.chi = 0;
  EXPECT_THROW(branch_and_bound(lat, cfg), PreconditionError);
  cfg = TnConfig{};
  cfg.beta = 0.0;
  EXPECT_THROW(branch_and_bound(lat, cfg), PreconditionError);
}

TEST(MpsCompress, ExactBelowBondLimit) {
  Mps m;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < 5; ++i) {
    MpsTensor t(i == 0 ? 1 : 3, 2, i == 4 ? 1 : 3);
    for (double& v : t.data) v = u(rng);
    m.sites.push_back(std::move(t));
  }
  const auto amplitude = [](const Mps& x, std::uint32_t w) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto& t = x.sites[i];
      Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(t.right));
      for (std::size_t a = 0; a < t.left; ++a) {
        for (std::size_t b = 0; b < t.right; ++b) {
          next(static_cast<Eigen::Index>(b)) += v(static_cast<Eigen::Index>(a)) * t(a, (w >> i) & 1U, b);
        }
      }
      v = next;
    }
    return v(0) * std::exp(x.log_scale);
  };
  Mps c = m;
  compress(c, 4);
  EXPECT_LE(c.max_bond(), 4U);
  for (std::uint32_t w = 0; w < 32; ++w) {
    EXPECT_NEAR(amplitude(c, w), amplitude(m, w), 1e-12);
  }
  compress(c, 1);
  EXPECT_EQ(c.max_bond(), 1U);
}

TEST(MpsSolver, TwoSpinsExactAtBondTwo) {
  const IsingInstance inst({0.4, -0.2}, {{0, 1, 0.7}});
  for (double beta : {0.5, 1.0, 2.0}) {
    MpsConfig cfg;
    cfg.bond_dim = 2;
    cfg.beta = beta;
    cfg.dbeta = 0.25;
    cfg.k = 4;
    cfg.max_branches = 4;
    cfg.cutoff = 1e-300;
    EXPECT_EQ(mps_imaginary_time(inst, cfg).spectrum, enumerate_spectrum_naive(inst, 4));
  }
}

TEST(MpsSolver, StateApproximatesHalfBoltzmann) {
  const auto inst = random_ising(6, 0.8, 3);
  MpsConfig cfg;
  cfg.bond_dim = 8;
  cfg.beta = 1.5;
  cfg.dbeta = 0.5;
  const Mps psi = imaginary_time_state(inst, cfg);
  std::vector<double> amp(64);
  for (std::uint32_t w = 0; w < 64; ++w) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
    for (std::size_t i = 0; i < 6; ++i) {
      const auto& t = psi.sites[i];
      Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(t.right));
      for (std::size_t a = 0; a < t.left; ++a) {
        for (std::size_t b = 0; b < t.right; ++b) {
          next(static_cast<Eigen::Index>(b)) += v(static_cast<Eigen::Index>(a)) * t(a, (w >> i) & 1U, b);
        }
      }
      v = next;
    }
    amp[w] = v(0);
  }
  for (std::uint32_t w = 1; w < 64; ++w) {
    const double want = -0.75 * (dense_ising_energy(inst, w) - dense_ising_energy(inst, 0));
    EXPECT_NEAR(std::log(amp[w] / amp[0]), want, 1e-9);
  }
}

TEST(MpsSolver, FieldsOnlyGroundIsSignPattern) {
  const IsingInstance inst({0.5, -1.0, 0.25, -0.1, 2.0}, {});
  MpsConfig cfg;
  cfg.bond_dim = 1;
  const auto res = mps_imaginary_time(inst, cfg);
  EXPECT_EQ(res.spectrum.ground().state.word, 0b01010U);
}

TEST(MpsSolver, CompleteGraphGround) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = random_ising(12, 1.0, 500 + seed);
    MpsConfig cfg;
    cfg.bond_dim = 64;
    const auto res = mps_imaginary_time(inst, cfg);
    EXPECT_EQ(res.spectrum.ground(), enumerate_spectrum_naive(inst, 1).ground());
  }
}

TEST(MpsSolver, ConfigValidation) {
  const IsingInstance inst({0.5}, {});
  MpsConfig cfg;
  cfg.dbeta = 0.3;
  EXPECT_THROW(mps_imaginary_time(inst, cfg), PreconditionError);
  cfg = MpsConfig{};
  cfg.bond_dim = 0;
  EXPECT_THROW(mps_imaginary_time(inst, cfg), PreconditionError);
}

}  // namespace
}  // namespace spinglass::tn
