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

#include "spinglass/tn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "search_internal.hpp"
#include "spinglass/errors.hpp"
#include "tn_internal.hpp"

namespace spinglass::tn {
namespace {

constexpr std::size_t kMaxCap = 16;

bool adjacent(SiteIndex a, SiteIndex b) {
  if (a.row == b.row) return a.col + 1 == b.col || b.col + 1 == a.col;
  if (a.col == b.col) return a.row + 1 == b.row || b.row + 1 == a.row;
  return false;
}

double spin_value(std::uint32_t state, std::size_t t) {
  return ((state >> t) & 1U) ? 1.0 : -1.0;
}

}  // namespace

ClusterLattice::ClusterLattice(IsingInstance instance, std::size_t rows, std::size_t cols,
                               std::vector<std::vector<std::size_t>> cluster_spins,
                               std::size_t cap)
    : instance_(std::move(instance)),
      rows_(rows),
      cols_(cols),
      clusters_(std::move(cluster_spins)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidInstance("cluster lattice: empty lattice");
  if (clusters_.size() != rows_ * cols_) {
    throw InvalidInstance("cluster lattice: expected " + std::to_string(rows_ * cols_) +
                          " sites, got " + std::to_string(clusters_.size()));
  }
  cap = std::min(cap, kMaxCap);
  const std::size_t n = instance_.size();
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  owner_.assign(n, unset);
  local_.assign(n, unset);
  for (std::size_t site = 0; site < clusters_.size(); ++site) {
    const auto& spins = clusters_[site];
    if (spins.size() > cap) {
      throw SizingError("cluster lattice: site " + std::to_string(site) + " holds " +
                        std::to_string(spins.size()) + " spins, cap is " +
                        std::to_string(cap));
    }
    for (std::size_t t = 0; t < spins.size(); ++t) {
      const std::size_t v = spins[t];
      if (v >= n) throw InvalidInstance("cluster lattice: spin " + std::to_string(v) + " out of range");
      if (owner_[v] != unset) {
        throw InvalidInstance("cluster lattice: spin " + std::to_string(v) +
                              " assigned twice");
      }
      owner_[v] = site;
      local_[v] = t;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (owner_[v] == unset) {
      throw InvalidInstance("cluster lattice: spin " + std::to_string(v) + " not assigned");
    }
  }

  std::vector<ModelBuilder> builders;
  builders.reserve(clusters_.size());
  for (const auto& spins : clusters_) builders.emplace_back(spins.size());
  for (std::size_t v = 0; v < n; ++v) builders[owner_[v]].add_linear(local_[v], instance_.linear(v));

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Coupling>> bonds;
  for (const auto& c : instance_.quadratic()) {
    const std::size_t a = owner_[c.i];
    const std::size_t b = owner_[c.j];
    if (a == b) {
      builders[a].add_quadratic(local_[c.i], local_[c.j], c.value);
      continue;
    }
    if (!adjacent(position(a), position(b))) {
      throw InvalidInstance("cluster lattice: coupling " + std::to_string(c.i) + "-" +
                            std::to_string(c.j) + " joins non-adjacent sites");
    }
    if (a < b) {
      bonds[{a, b}].push_back({c.i, c.j, c.value});
    } else {
      bonds[{b, a}].push_back({c.j, c.i, c.value});
    }
  }
  intra_.reserve(builders.size());
  for (const auto& b : builders) intra_.push_back(b.build_ising());
  for (auto& [key, couplings] : bonds) {
    inter_.push_back({key.first, key.second, std::move(couplings)});
  }
}

ClusterLattice ClusterLattice::single_spin(IsingInstance instance, std::size_t rows,
                                           std::size_t cols) {
  std::vector<std::vector<std::size_t>> clusters(rows * cols);
  for (std::size_t v = 0; v < clusters.size(); ++v) clusters[v] = {v};
  return ClusterLattice(std::move(instance), rows, cols, std::move(clusters));
}

std::uint64_t ClusterLattice::scatter(std::size_t site, std::uint32_t local,
                                      std::uint64_t word) const {
  const auto& spins = clusters_.at(site);
  for (std::size_t t = 0; t < spins.size(); ++t) {
    const std::uint64_t bit = std::uint64_t{1} << spins[t];
    word = ((local >> t) & 1U) ? (word | bit) : (word & ~bit);
  }
  return word;
}

std::uint32_t ClusterLattice::gather(std::size_t site, std::uint64_t word) const {
  const auto& spins = clusters_.at(site);
  std::uint32_t local = 0;
  for (std::size_t t = 0; t < spins.size(); ++t) {
    if ((word >> spins[t]) & 1U) local |= std::uint32_t{1} << t;
  }
  return local;
}

ClusterMap parse_cluster_map(std::string_view text) {
  struct Line {
    std::size_t row, col;
    std::vector<std::size_t> spins;
  };
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    long long row = 0;
    long long col = 0;
    if (!(fields >> row)) {
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("cluster map line " + std::to_string(number) + ": expected row");
    }
    if (!(fields >> col) || row < 0 || col < 0) {
      throw ParseError("cluster map line " + std::to_string(number) +
                       ": expected non-negative row and col");
    }
    Line line{static_cast<std::size_t>(row), static_cast<std::size_t>(col), {}};
    long long v = 0;
    while (fields >> v) {
      if (v < 0) throw ParseError("cluster map line " + std::to_string(number) + ": negative spin");
      line.spins.push_back(static_cast<std::size_t>(v));
    }
    if (!fields.eof()) {
      throw ParseError("cluster map line " + std::to_string(number) + ": bad token");
    }
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw ParseError("cluster map: no sites");
  ClusterMap map;
  for (const auto& l : lines) {
    map.rows = std::max(map.rows, l.row + 1);
    map.cols = std::max(map.cols, l.col + 1);
  }
  map.clusters.resize(map.rows * map.cols);
  std::vector<bool> seen(map.clusters.size(), false);
  for (auto& l : lines) {
    const std::size_t site = l.row * map.cols + l.col;
    if (seen[site]) {
      throw ParseError("cluster map: site (" + std::to_string(l.row) + ", " +
                       std::to_string(l.col) + ") listed twice");
    }
    seen[site] = true;
    map.clusters[site] = std::move(l.spins);
  }
  return map;
}

EdgeFactors edge_decompose(double j, double beta) {
  EdgeFactors f;
  for (int s = 0; s < 2; ++s) {
    for (int g = 0; g < 2; ++g) {
      const double sv = s ? 1.0 : -1.0;
      const double gv = g ? 1.0 : -1.0;
      f.b(s, g) = s == g ? 1.0 : 0.0;
      f.c(s, g) = std::exp(-beta * gv * j * sv);
    }
  }
  return f;
}

double PepsSite::entry(std::size_t s, std::size_t l, std::size_t r, std::size_t u,
                       std::size_t d) const {
  const auto i = [](std::size_t x) { return static_cast<Eigen::Index>(x); };
  const auto si = i(s);
  return std::exp(log_scale) * weight.at(s) * factor(Leg::left)(si, i(l)) *
         factor(Leg::right)(si, i(r)) * factor(Leg::up)(si, i(u)) *
         factor(Leg::down)(si, i(d));
}

PepsNetwork build_peps(const ClusterLattice& lat, double beta) {
  if (!(beta >= 0.0)) throw PreconditionError("build_peps: beta must be >= 0");
  std::vector<PepsSite> sites(lat.sites());
  for (std::size_t site = 0; site < lat.sites(); ++site) {
    if (lat.cluster_spins(site).size() > kDefaultClusterCap) {
      throw SizingError("build_peps: cluster of " +
                        std::to_string(lat.cluster_spins(site).size()) +
                        " spins exceeds the physical dimension cap");
    }
    auto& ps = sites[site];
    const std::size_t states = lat.states(site);
    std::vector<double> energy(states);
    for (std::size_t s = 0; s < states; ++s) {
      energy[s] = ising_energy(lat.intra(site), PackedState{s});
    }
    const double lowest = *std::min_element(energy.begin(), energy.end());
    ps.weight.resize(states);
    for (std::size_t s = 0; s < states; ++s) {
      ps.weight[s] = std::exp(-beta * (energy[s] - lowest));
    }
    ps.log_scale = -beta * lowest;
    for (auto& leg : ps.legs) leg = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(states), 1);
  }

  for (const auto& edge : lat.inter()) {
    const SiteIndex pa = lat.position(edge.first);
    const bool horizontal = pa.row == lat.position(edge.second).row;
    std::vector<std::size_t> spins_a;
    std::vector<std::size_t> spins_b;
    for (const auto& c : edge.couplings) {
      if (std::find(spins_a.begin(), spins_a.end(), c.i) == spins_a.end()) spins_a.push_back(c.i);
      if (std::find(spins_b.begin(), spins_b.end(), c.j) == spins_b.end()) spins_b.push_back(c.j);
    }
    // The projector goes on the side with fewer boundary spins, so the bond
    // dimension is 2^min(m, n).
    const bool projector_on_first = spins_a.size() <= spins_b.size();
    const std::size_t p_site = projector_on_first ? edge.first : edge.second;
    const std::size_t c_site = projector_on_first ? edge.second : edge.first;
    const auto& p_spins = projector_on_first ? spins_a : spins_b;
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << p_spins.size());

    const std::size_t p_states = lat.states(p_site);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p_states), dim);
    for (std::size_t s = 0; s < p_states; ++s) {
      std::size_t g = 0;
      for (std::size_t t = 0; t < p_spins.size(); ++t) {
        if ((s >> lat.local_index(p_spins[t])) & 1U) g |= std::size_t{1} << t;
      }
      proj(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(g)) = 1.0;
    }

    const std::size_t c_states = lat.states(c_site);
    Eigen::MatrixXd exponent(static_cast<Eigen::Index>(c_states), dim);
    for (std::size_t s = 0; s < c_states; ++s) {
      for (Eigen::Index g = 0; g < dim; ++g) {
        double x = 0.0;
        for (const auto& c : edge.couplings) {
          const std::size_t pv = projector_on_first ? c.i : c.j;
          const std::size_t cv = projector_on_first ? c.j : c.i;
          const auto t = static_cast<std::size_t>(
              std::find(p_spins.begin(), p_spins.end(), pv) - p_spins.begin());
          const double gamma = spin_value(static_cast<std::uint32_t>(g), t);
          const double sv = spin_value(static_cast<std::uint32_t>(s), lat.local_index(cv));
          x += -beta * gamma * c.value * sv;
        }
        exponent(static_cast<Eigen::Index>(s), g) = x;
      }
    }
    const double top = exponent.maxCoeff();
    const Eigen::MatrixXd coupling = (exponent.array() - top).exp().matrix();
    sites[c_site].log_scale += top;

    const Leg first_leg = horizontal ? Leg::right : Leg::down;
    const Leg second_leg = horizontal ? Leg::left : Leg::up;
    auto& first = sites[edge.first].legs[static_cast<std::size_t>(first_leg)];
    auto& second = sites[edge.second].legs[static_cast<std::size_t>(second_leg)];
    first = projector_on_first ? proj : coupling;
    second = projector_on_first ? coupling : proj;
  }
  return PepsNetwork(lat.rows(), lat.cols(), beta, std::move(sites));
}

namespace {

using Index = Eigen::Index;

Mps trivial_boundary(std::size_t cols) {
  Mps m;
  m.sites.assign(cols, MpsTensor{});
  return m;
}

// Absorbs one traced PEPS row into the boundary below it.
Mps absorb_row(const PepsNetwork& net, std::size_t r, const Mps& below) {
  Mps out;
  out.log_scale = below.log_scale;
  for (std::size_t c = 0; c < net.cols(); ++c) {
    const PepsSite& st = net.site(r, c);
    const MpsTensor& m = below.sites[c];
    const auto& fl = st.factor(Leg::left);
    const auto& fr = st.factor(Leg::right);
    const auto& fu = st.factor(Leg::up);
    const auto& fd = st.factor(Leg::down);
    const std::size_t dl = st.dim(Leg::left);
    const std::size_t dr = st.dim(Leg::right);
    const std::size_t du = st.dim(Leg::up);
    const std::size_t dd = st.dim(Leg::down);
    MpsTensor t(m.left * dl, du, m.right * dr);
    std::vector<double> g(m.left * m.right);
    for (std::size_t s = 0; s < st.physical(); ++s) {
      const auto si = static_cast<Index>(s);
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t a = 0; a < m.left; ++a) {
        for (std::size_t d = 0; d < dd; ++d) {
          const double f = fd(si, static_cast<Index>(d));
          if (f == 0.0) continue;
          for (std::size_t b = 0; b < m.right; ++b) g[a * m.right + b] += f * m(a, d, b);
        }
      }
      for (std::size_t a = 0; a < m.left; ++a) {
        for (std::size_t b = 0; b < m.right; ++b) {
          const double gv = st.weight[s] * g[a * m.right + b];
          if (gv == 0.0) continue;
          for (std::size_t l = 0; l < dl; ++l) {
            const double gl = gv * fl(si, static_cast<Index>(l));
            if (gl == 0.0) continue;
            for (std::size_t rr = 0; rr < dr; ++rr) {
              const double glr = gl * fr(si, static_cast<Index>(rr));
              if (glr == 0.0) continue;
              for (std::size_t u = 0; u < du; ++u) {
                t(a * dl + l, u, b * dr + rr) += glr * fu(si, static_cast<Index>(u));
              }
            }
          }
        }
      }
    }
    out.sites.push_back(std::move(t));
    out.log_scale += st.log_scale;
  }
  return out;
}

void rescale(Eigen::MatrixXd& m) {
  const double peak = m.cwiseAbs().maxCoeff();
  if (peak > 0.0) m /= peak;
}

// y[a] = sum_{d, b} f[d] E(a, d, b) x[b]
Eigen::VectorXd apply_environment(const MpsTensor& e, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Index>(e.left));
  for (std::size_t a = 0; a < e.left; ++a) {
    double acc = 0.0;
    for (std::size_t d = 0; d < e.phys; ++d) {
      const double fd = f(static_cast<Index>(d));
      if (fd == 0.0) continue;
      double inner = 0.0;
      for (std::size_t b = 0; b < e.right; ++b) inner += e(a, d, b) * x(static_cast<Index>(b));
      acc += fd * inner;
    }
    y(static_cast<Index>(a)) = acc;
  }
  return y;
}

// m[b] = sum_{a, d} v[a] f[d] E(a, d, b)
Eigen::VectorXd push_environment(const MpsTensor& e, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& f) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Index>(e.right));
  for (std::size_t a = 0; a < e.left; ++a) {
    const double va = v(static_cast<Index>(a));
    if (va == 0.0) continue;
    for (std::size_t d = 0; d < e.phys; ++d) {
      const double w = va * f(static_cast<Index>(d));
      if (w == 0.0) continue;
      for (std::size_t b = 0; b < e.right; ++b) m(static_cast<Index>(b)) += w * e(a, d, b);
    }
  }
  return m;
}

}  // namespace

BoundaryEnvironment contract_boundary(const PepsNetwork& net, std::size_t chi) {
  if (chi == 0) throw PreconditionError("contract_boundary: chi must be >= 1");
  BoundaryEnvironment env;
  env.rows.resize(net.rows() + 1);
  env.rows[net.rows()] = trivial_boundary(net.cols());
  for (std::size_t r = net.rows(); r-- > 0;) {
    env.rows[r] = absorb_row(net, r, env.rows[r + 1]);
    compress(env.rows[r], chi);
  }
  return env;
}

double log_partition_function(const PepsNetwork& net, std::size_t chi) {
  const BoundaryEnvironment env = contract_boundary(net, chi);
  const Mps& top = env.rows.front();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
  double log_norm = top.log_scale;
  for (const auto& t : top.sites) {
    Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(static_cast<Index>(t.right));
    for (std::size_t a = 0; a < t.left; ++a) {
      for (std::size_t b = 0; b < t.right; ++b) {
        next(static_cast<Index>(b)) += v(static_cast<Index>(a)) * t(a, 0, b);
      }
    }
    const double peak = next.cwiseAbs().maxCoeff();
    if (peak == 0.0) return -std::numeric_limits<double>::infinity();
    log_norm += std::log(peak);
    v = next / peak;
  }
  return log_norm + std::log(v(0));
}

ConditionalOracle::ConditionalOracle(const PepsNetwork& net, std::size_t chi)
    : net_(&net), env_(contract_boundary(net, chi)) {}

std::vector<double> ConditionalOracle::operator()(std::span<const std::uint32_t> partial,
                                                  std::size_t site) const {
  const PepsNetwork& net = *net_;
  const std::size_t cols = net.cols();
  if (site >= net.rows() * cols) throw PreconditionError("conditional: site out of range");
  if (partial.size() != site) {
    throw PreconditionError("conditional: expected states of " + std::to_string(site) +
                            " preceding sites, got " + std::to_string(partial.size()));
  }
  for (std::size_t i = 0; i < site; ++i) {
    if (partial[i] >= net.sites()[i].physical()) {
      throw PreconditionError("conditional: state out of range at site " + std::to_string(i));
    }
  }
  const std::size_t r = site / cols;
  const std::size_t c = site % cols;
  const Mps& below = env_.rows[r + 1];

  // Vectors on the up legs of row r; only row r - 1 matters.
  std::vector<Eigen::VectorXd> top(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    if (r == 0) {
      top[k] = Eigen::VectorXd::Ones(1);
    } else {
      const auto s = static_cast<Index>(partial[(r - 1) * cols + k]);
      top[k] = net.site(r - 1, k).factor(Leg::down).row(s).transpose();
    }
  }
  const auto down_row = [](const PepsSite& st, std::size_t s) -> Eigen::VectorXd {
    return st.factor(Leg::down).row(static_cast<Index>(s)).transpose();
  };
  const auto up_weight = [&](const PepsSite& st, std::size_t s, std::size_t k) {
    return st.weight[s] * st.factor(Leg::up).row(static_cast<Index>(s)).dot(top[k]);
  };

  // left(l, a): horizontal bond entering column k, boundary bond a.
  Eigen::MatrixXd left = Eigen::MatrixXd::Ones(1, 1);
  for (std::size_t k = 0; k < c; ++k) {
    const PepsSite& st = net.site(r, k);
    const std::size_t s = partial[r * cols + k];
    const Eigen::VectorXd lv =
        left.transpose() * st.factor(Leg::left).row(static_cast<Index>(s)).transpose();
    const Eigen::VectorXd m = push_environment(below.sites[k], lv, down_row(st, s));
    left = up_weight(st, s, k) *
           (st.factor(Leg::right).row(static_cast<Index>(s)).transpose() * m.transpose());
    rescale(left);
  }

  // right(r, b): horizontal bond leaving column k to the left, boundary bond b.
  Eigen::MatrixXd right = Eigen::MatrixXd::Ones(1, 1);
  for (std::size_t k = cols; k-- > c + 1;) {
    const PepsSite& st = net.site(r, k);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(static_cast<Index>(st.dim(Leg::left)),
                                                 static_cast<Index>(below.sites[k].left));
    for (std::size_t s = 0; s < st.physical(); ++s) {
      const double w = up_weight(st, s, k);
      if (w == 0.0) continue;
      const Eigen::VectorXd x =
          right.transpose() * st.factor(Leg::right).row(static_cast<Index>(s)).transpose();
      const Eigen::VectorXd y = apply_environment(below.sites[k], down_row(st, s), x);
      next += w * st.factor(Leg::left).row(static_cast<Index>(s)).transpose() * y.transpose();
    }
    right = std::move(next);
    rescale(right);
  }

  const PepsSite& st = net.site(r, c);
  std::vector<double> p(st.physical(), 0.0);
  double total = 0.0;
  for (std::size_t s = 0; s < st.physical(); ++s) {
    const double w = up_weight(st, s, c);
    if (w == 0.0) continue;
    const auto si = static_cast<Index>(s);
    const Eigen::VectorXd lv = left.transpose() * st.factor(Leg::left).row(si).transpose();
    const Eigen::VectorXd x = right.transpose() * st.factor(Leg::right).row(si).transpose();
    const double v = w * lv.dot(apply_environment(below.sites[c], down_row(st, s), x));
    // Truncated boundaries can produce small negative values.
    p[s] = std::max(v, 0.0);
    total += p[s];
  }
  if (!(total > 0.0)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> conditional_probability(const PepsNetwork& net,
                                            std::span<const std::uint32_t> partial,
                                            std::size_t site, std::size_t chi) {
  return ConditionalOracle(net, chi)(partial, site);
}

void TnConfig::validate() const {
  if (!(beta > 0.0)) throw PreconditionError("tn: beta must be > 0");
  if (chi == 0) throw PreconditionError("tn: chi must be >= 1");
  if (!(cutoff > 0.0 && cutoff <= 1.0)) throw PreconditionError("tn: cutoff must lie in (0, 1]");
  if (max_branches == 0) throw PreconditionError("tn: max_branches must be >= 1");
  if (k == 0) throw PreconditionError("tn: k must be >= 1");
}

TnResult branch_and_bound(const ClusterLattice& lat, const TnConfig& cfg) {
  cfg.validate();
  if (lat.spin_count() > 64) {
    throw SizingError("branch_and_bound: " + std::to_string(lat.spin_count()) +
                      " spins exceed the 64-bit state word");
  }
  const PepsNetwork net = build_peps(lat, cfg.beta);
  const ConditionalOracle oracle(net, cfg.chi);

  struct Node {
    std::vector<std::uint32_t> states;
    double logp = 0.0;
    std::uint64_t word = 0;
  };
  std::vector<Node> nodes(1);
  Diagnostics diag;
  for (std::size_t site = 0; site < lat.sites(); ++site) {
    std::vector<Node> children;
    children.reserve(nodes.size() * lat.states(site));
    for (const Node& node : nodes) {
      const std::vector<double> p = oracle(node.states, site);
      for (std::uint32_t s = 0; s < p.size(); ++s) {
        if (p[s] <= 0.0) continue;
        Node child{node.states, node.logp + std::log(p[s]), lat.scatter(site, s, node.word)};
        child.states.push_back(s);
        children.push_back(std::move(child));
      }
    }
    diag.p_d = std::max(diag.p_d, detail::prune(children, cfg.cutoff, cfg.max_branches));
    nodes = std::move(children);
  }

  std::vector<SpectrumEntry> leaves;
  leaves.reserve(nodes.size());
  for (const Node& node : nodes) {
    diag.p_1 = std::max(diag.p_1, std::exp(node.logp));
    leaves.push_back({0.0, PackedState{node.word}});
  }
  Spectrum spec = spinglass::detail::finalize(
      std::move(leaves), [&](PackedState s) { return ising_energy(lat.instance(), s); });
  if (spec.entries.size() > cfg.k) spec.entries.resize(cfg.k);
  return {std::move(spec), diag};
}

}  // namespace spinglass::tn
