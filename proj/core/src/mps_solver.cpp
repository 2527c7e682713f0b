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

#include <algorithm>
#include <cmath>
#include <string>

#include "search_internal.hpp"
#include "spinglass/errors.hpp"
#include "spinglass/tn.hpp"
#include "tn_internal.hpp"

namespace spinglass::tn {
namespace {

constexpr double spin_of(std::size_t p) noexcept { return p ? 1.0 : -1.0; }

// Applies exp(-dbeta * s_i * (sum_{j>i} J_ij s_j + h_i) / 2). The value of
// s_i rides along a bond of dimension two up to the last coupled site.
void apply_gate(Mps& psi, const IsingInstance& inst, std::size_t i, double dbeta) {
  std::vector<double> coupling(inst.size(), 0.0);
  std::size_t last = i;
  for (const auto& nb : inst.neighbors(i)) {
    if (nb.index > i) {
      coupling[nb.index] = nb.value;
      last = std::max(last, nb.index);
    }
  }
  const double h = inst.linear(i);
  MpsTensor& a = psi.sites[i];
  if (last == i) {
    for (std::size_t l = 0; l < a.left; ++l) {
      for (std::size_t p = 0; p < 2; ++p) {
        const double f = std::exp(-0.5 * dbeta * h * spin_of(p));
        for (std::size_t r = 0; r < a.right; ++r) a(l, p, r) *= f;
      }
    }
    return;
  }

  MpsTensor head(a.left, 2, a.right * 2);
  for (std::size_t l = 0; l < a.left; ++l) {
    for (std::size_t p = 0; p < 2; ++p) {
      const double f = std::exp(-0.5 * dbeta * h * spin_of(p));
      for (std::size_t r = 0; r < a.right; ++r) head(l, p, r * 2 + p) = a(l, p, r) * f;
    }
  }
  a = std::move(head);
  for (std::size_t j = i + 1; j <= last; ++j) {
    const MpsTensor& b = psi.sites[j];
    const bool closing = j == last;
    MpsTensor t(b.left * 2, 2, closing ? b.right : b.right * 2);
    for (std::size_t l = 0; l < b.left; ++l) {
      for (std::size_t sigma = 0; sigma < 2; ++sigma) {
        for (std::size_t p = 0; p < 2; ++p) {
          const double f = std::exp(-0.5 * dbeta * coupling[j] * spin_of(sigma) * spin_of(p));
          for (std::size_t r = 0; r < b.right; ++r) {
            const std::size_t out = closing ? r : r * 2 + sigma;
            t(l * 2 + sigma, p, out) = b(l, p, r) * f;
          }
        }
      }
    }
    psi.sites[j] = std::move(t);
  }
}

}  // namespace

std::size_t MpsConfig::steps() const {
  const double ratio = beta / dbeta;
  const double whole = std::round(ratio);
  if (std::abs(ratio - whole) > 1e-9 * std::max(1.0, ratio)) {
    throw PreconditionError("mps: dbeta must divide beta into whole steps");
  }
  return static_cast<std::size_t>(whole);
}

void MpsConfig::validate() const {
  if (bond_dim == 0) throw PreconditionError("mps: bond dimension must be >= 1");
  if (!(beta >= 0.0)) throw PreconditionError("mps: beta must be >= 0");
  if (!(dbeta > 0.0)) throw PreconditionError("mps: dbeta must be > 0");
  if (!(cutoff > 0.0 && cutoff <= 1.0)) throw PreconditionError("mps: cutoff must lie in (0, 1]");
  if (max_branches == 0) throw PreconditionError("mps: max_branches must be >= 1");
  if (k == 0) throw PreconditionError("mps: k must be >= 1");
  steps();
}

Mps imaginary_time_state(const IsingInstance& inst, const MpsConfig& cfg) {
  cfg.validate();
  Mps psi;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    MpsTensor t(1, 2, 1);
    t.data = {1.0, 1.0};
    psi.sites.push_back(std::move(t));
  }
  const std::size_t steps = cfg.steps();
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      apply_gate(psi, inst, i, cfg.dbeta);
      compress(psi, cfg.bond_dim);
    }
  }
  return psi;
}

TnResult mps_imaginary_time(const IsingInstance& inst, const MpsConfig& cfg) {
  cfg.validate();
  const std::size_t n = inst.size();
  if (n > 64) {
    throw SizingError("mps_imaginary_time: " + std::to_string(n) +
                      " spins exceed the 64-bit state word");
  }
  const Mps psi = imaginary_time_state(inst, cfg);

  // env[k] sums psi^2 over spins k..n-1, as a matrix on the bond left of k.
  std::vector<Eigen::MatrixXd> env(n + 1);
  env[n] = Eigen::MatrixXd::Ones(1, 1);
  for (std::size_t k = n; k-- > 0;) {
    const MpsTensor& t = psi.sites[k];
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.left),
                                              static_cast<Eigen::Index>(t.left));
    for (std::size_t p = 0; p < 2; ++p) {
      Eigen::MatrixXd ap(t.left, t.right);
      for (std::size_t a = 0; a < t.left; ++a) {
        for (std::size_t b = 0; b < t.right; ++b) {
          ap(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = t(a, p, b);
        }
      }
      e += ap * env[k + 1] * ap.transpose();
    }
    const double peak = e.cwiseAbs().maxCoeff();
    env[k] = peak > 0.0 ? Eigen::MatrixXd(e / peak) : e;
  }

  struct Node {
    Eigen::RowVectorXd ell;
    double logp = 0.0;
    std::uint64_t word = 0;
  };
  std::vector<Node> nodes{Node{Eigen::RowVectorXd::Ones(1), 0.0, 0}};
  Diagnostics diag;
  for (std::size_t k = 0; k < n; ++k) {
    const MpsTensor& t = psi.sites[k];
    std::vector<Node> children;
    children.reserve(nodes.size() * 2);
    for (const Node& node : nodes) {
      Eigen::RowVectorXd next[2];
      double weight[2];
      for (std::size_t p = 0; p < 2; ++p) {
        next[p] = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(t.right));
        for (std::size_t a = 0; a < t.left; ++a) {
          const double la = node.ell(static_cast<Eigen::Index>(a));
          for (std::size_t b = 0; b < t.right; ++b) {
            next[p](static_cast<Eigen::Index>(b)) += la * t(a, p, b);
          }
        }
        weight[p] = std::max(0.0, next[p].dot(next[p] * env[k + 1]));
      }
      const double total = weight[0] + weight[1];
      if (!(total > 0.0)) continue;
      for (std::size_t p = 0; p < 2; ++p) {
        if (weight[p] <= 0.0) continue;
        const double norm = next[p].norm();
        children.push_back({next[p] / norm, node.logp + std::log(weight[p] / total),
                            p ? node.word | (std::uint64_t{1} << k) : node.word});
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
      std::move(leaves), [&](PackedState s) { return ising_energy(inst, s); });
  if (spec.entries.size() > cfg.k) spec.entries.resize(cfg.k);
  return {std::move(spec), diag};
}

}  // namespace spinglass::tn
