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

#include "spinglass/errors.hpp"
#include "spinglass/tn.hpp"

namespace spinglass::tn {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// (left * phys) x right
Eigen::Map<RowMatrix> as_left(MpsTensor& t) {
  return {t.data.data(), static_cast<Eigen::Index>(t.left * t.phys),
          static_cast<Eigen::Index>(t.right)};
}

// left x (phys * right)
Eigen::Map<RowMatrix> as_right(MpsTensor& t) {
  return {t.data.data(), static_cast<Eigen::Index>(t.left),
          static_cast<Eigen::Index>(t.phys * t.right)};
}

MpsTensor from_left(const RowMatrix& m, std::size_t phys) {
  MpsTensor t(static_cast<std::size_t>(m.rows()) / phys, phys,
              static_cast<std::size_t>(m.cols()));
  as_left(t) = m;
  return t;
}

MpsTensor from_right(const RowMatrix& m, std::size_t phys) {
  MpsTensor t(static_cast<std::size_t>(m.rows()), phys,
              static_cast<std::size_t>(m.cols()) / phys);
  as_right(t) = m;
  return t;
}

}  // namespace

std::size_t Mps::max_bond() const noexcept {
  std::size_t d = 1;
  for (const auto& t : sites) d = std::max({d, t.left, t.right});
  return d;
}

void compress(Mps& mps, std::size_t max_bond, double rel_tol) {
  if (max_bond == 0) throw PreconditionError("compress: bond dimension must be >= 1");
  auto& s = mps.sites;
  const std::size_t n = s.size();
  if (n == 0) return;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const RowMatrix m = as_left(s[i]);
    const Eigen::Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const RowMatrix q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
    const RowMatrix r =
        qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    s[i] = from_left(q, s[i].phys);
    s[i + 1] = from_right(r * as_right(s[i + 1]), s[i + 1].phys);
  }

  for (std::size_t i = n - 1; i > 0; --i) {
    const Eigen::MatrixXd m = as_right(s[i]);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    Eigen::Index keep = 1;
    while (keep < sigma.size() && static_cast<std::size_t>(keep) < max_bond &&
           sigma(keep) > rel_tol * sigma(0)) {
      ++keep;
    }
    const RowMatrix vt = svd.matrixV().leftCols(keep).transpose();
    const Eigen::MatrixXd us =
        svd.matrixU().leftCols(keep) * sigma.head(keep).asDiagonal();
    s[i] = from_right(vt, s[i].phys);
    s[i - 1] = from_left(as_left(s[i - 1]) * us, s[i - 1].phys);
  }

  for (auto& t : s) {
    double peak = 0.0;
    for (double v : t.data) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) continue;
    for (double& v : t.data) v /= peak;
    mps.log_scale += std::log(peak);
  }
}

}  // namespace spinglass::tn
