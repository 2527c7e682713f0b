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


#include "spinglass/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinglass/errors.hpp"

namespace spinglass {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXcd generator_at(const SystemSpec& spec, double t) {
  if (const auto* k = std::get_if<MatrixXcd>(&spec.generator)) return *k;
  return std::get<TimeDependentGenerator>(spec.generator)(t);
}

void check_square(const MatrixXcd& k, std::size_t dim) {
  if (k.rows() != k.cols()) throw PreconditionError("generator is not square");
  if (static_cast<std::size_t>(k.rows()) != dim) {
    throw PreconditionError("generator size " + std::to_string(k.rows()) + " does not match state size " +
                            std::to_string(dim));
  }
}

MatrixXd real_part_checked(const MatrixXcd& m) {
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (m.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError("real system produced a complex propagator");
  }
  return m.real();
}

MatrixXd symmetric_part(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Weight of bit alpha in x = sum_a w_a q^a - 2^D.
double bit_weight(int alpha, const FixedPointCode& code) { return std::ldexp(1.0, 1 - alpha + code.magnitude); }

QuboInstance assemble(const MatrixXd& pair, const VectorXd& linear, double constant) {
  const auto n = static_cast<std::size_t>(linear.size());
  ModelBuilder builder(n);
  for (std::size_t p = 0; p < n; ++p) {
    builder.add_linear(p, linear(static_cast<Eigen::Index>(p)));
    for (std::size_t r = p + 1; r < n; ++r) {
      const auto ip = static_cast<Eigen::Index>(p);
      const auto ir = static_cast<Eigen::Index>(r);
      builder.add_quadratic(p, r, pair(ip, ir) + pair(ir, ip));
    }
  }
  builder.add_offset(constant);
  return builder.build_qubo();
}

}  // namespace

void SystemSpec::validate() const {
  if (psi0.size() == 0) throw PreconditionError("empty initial state");
  if (times.size() < 2) throw PreconditionError("need at least two time points");
  if (!std::is_sorted(times.begin(), times.end(), std::less_equal<>())) {
    throw PreconditionError("time points must be strictly increasing");
  }
  if (std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw PreconditionError("time points must be strictly increasing");
  }
  if (const auto* k = std::get_if<MatrixXcd>(&generator)) check_square(*k, dimension());
  if (field == Field::real && psi0.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw PreconditionError("real system with a complex initial state");
  }
}

std::vector<double> integer_times(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i);
  return t;
}

std::vector<MatrixXcd> step_propagators(const SystemSpec& spec, std::size_t substeps) {
  if (substeps == 0) throw PreconditionError("substeps must be at least 1");
  spec.validate();
  const bool constant = std::holds_alternative<MatrixXcd>(spec.generator);
  std::vector<MatrixXcd> steps;
  steps.reserve(spec.points() - 1);
  for (std::size_t k = 1; k < spec.points(); ++k) {
    const double t0 = spec.times[k - 1];
    const double dt = spec.times[k] - t0;
    if (constant) {
      steps.push_back((generator_at(spec, t0) * dt).exp());
      continue;
    }
    const double h = dt / static_cast<double>(substeps);
    MatrixXcd u = MatrixXcd::Identity(static_cast<Eigen::Index>(spec.dimension()),
                                      static_cast<Eigen::Index>(spec.dimension()));
    for (std::size_t s = 0; s < substeps; ++s) {
      const MatrixXcd kmid = generator_at(spec, t0 + (static_cast<double>(s) + 0.5) * h);
      check_square(kmid, spec.dimension());
      u = (kmid * h).exp() * u;
    }
    steps.push_back(std::move(u));
  }
  return steps;
}

MatrixXd complex_to_real(const MatrixXcd& m) {
  MatrixXd out(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double a = m(i, j).real();
      const double b = m(i, j).imag();
      out(2 * i, 2 * j) = a;
      out(2 * i, 2 * j + 1) = -b;
      out(2 * i + 1, 2 * j) = b;
      out(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return out;
}

VectorXd complex_to_real(const Eigen::VectorXcd& v) {
  VectorXd out(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(2 * i) = v(i).real();
    out(2 * i + 1) = v(i).imag();
  }
  return out;
}

Eigen::VectorXcd real_to_complex(const VectorXd& v) {
  if (v.size() % 2 != 0) throw PreconditionError("embedded vector has odd length");
  Eigen::VectorXcd out(v.size() / 2);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = {v(2 * i), v(2 * i + 1)};
  return out;
}

ClockSystem build_clock_system(std::span<const MatrixXd> steps, const VectorXd& psi0) {
  const auto l = psi0.size();
  if (l == 0) throw PreconditionError("empty initial state");
  for (const auto& u : steps) {
    if (u.rows() != l || u.cols() != l) throw PreconditionError("propagator size does not match state size");
  }
  const auto n = static_cast<Eigen::Index>(steps.size()) + 1;
  ClockSystem cs;
  cs.points = static_cast<std::size_t>(n);
  cs.dimension = static_cast<std::size_t>(l);
  cs.a = MatrixXd::Zero(n * l, n * l);
  const MatrixXd eye = MatrixXd::Identity(l, l);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const auto& u = steps[static_cast<std::size_t>(k)];
    cs.a.block(k * l, k * l, l, l) += eye;
    cs.a.block((k + 1) * l, (k + 1) * l, l, l) += eye;
    cs.a.block((k + 1) * l, k * l, l, l) -= u;
    cs.a.block(k * l, (k + 1) * l, l, l) -= u.transpose();
  }
  // Pins the first time slice to psi0.
  cs.a.block(0, 0, l, l) += eye;
  cs.phi = VectorXd::Zero(n * l);
  cs.phi.head(l) = psi0;
  return cs;
}

ClockSystem build_clock_system(const SystemSpec& spec, std::size_t substeps) {
  const auto steps = step_propagators(spec, substeps);
  std::vector<MatrixXd> real_steps;
  real_steps.reserve(steps.size());
  for (const auto& u : steps) {
    real_steps.push_back(spec.field == Field::complex ? complex_to_real(u) : real_part_checked(u));
  }
  const VectorXd psi0 = spec.field == Field::complex ? complex_to_real(spec.psi0) : VectorXd(spec.psi0.real());
  return build_clock_system(real_steps, psi0);
}

VectorXd exact_trajectory(std::span<const MatrixXd> steps, const VectorXd& psi0) {
  const auto l = psi0.size();
  VectorXd out(static_cast<Eigen::Index>(steps.size() + 1) * l);
  VectorXd psi = psi0;
  out.head(l) = psi;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    psi = steps[k] * psi;
    out.segment(static_cast<Eigen::Index>(k + 1) * l, l) = psi;
  }
  return out;
}

QuadraticObjective quadratic_objective(const ClockSystem& cs, ObjectiveForm form) {
  QuadraticObjective obj;
  obj.form = form;
  if (form == ObjectiveForm::lsq) {
    obj.g = cs.a.transpose() * cs.a;
    obj.c = cs.a.transpose() * cs.phi;
    obj.constant = cs.phi.squaredNorm();
    return obj;
  }
  const MatrixXd sym = symmetric_part(cs.a);
  const Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues().minCoeff();
  const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lowest > 1e-10 * scale)) {
    throw DefinitenessError("energy objective needs a positive-definite system matrix; smallest eigenvalue " +
                                std::to_string(lowest),
                            lowest);
  }
  obj.g = 0.5 * sym;
  obj.c = 0.5 * cs.phi;
  return obj;
}

void FixedPointCode::validate() const {
  if (bits < 1) throw PreconditionError("fixed-point code needs at least one bit");
  if (bits > 52) throw PreconditionError("fixed-point code has more bits than a double can hold");
}

double FixedPointCode::lowest() const { return -std::ldexp(1.0, magnitude); }

double FixedPointCode::highest() const { return std::ldexp(1.0, magnitude) * (3.0 - std::ldexp(1.0, 2 - bits)); }

double FixedPointCode::step() const { return std::ldexp(1.0, magnitude + 2 - bits); }

EnergyFormCoefficients energy_form_coefficients(const MatrixXd& a, const VectorXd& phi, const FixedPointCode& code) {
  code.validate();
  if (a.rows() != a.cols() || a.rows() != phi.size()) throw PreconditionError("system dimensions do not match");
  const MatrixXd sym = symmetric_part(a);
  const auto n = static_cast<std::size_t>(a.rows());
  const auto r = static_cast<std::size_t>(code.bits);
  const int d = code.magnitude;
  EnergyFormCoefficients out;
  out.quadratic = MatrixXd::Zero(static_cast<Eigen::Index>(n * r), static_cast<Eigen::Index>(n * r));
  out.linear = VectorXd::Zero(static_cast<Eigen::Index>(n * r));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double row_sum = sym.row(ii).sum();
    for (int alpha = 0; alpha < code.bits; ++alpha) {
      const auto p = static_cast<Eigen::Index>(bit_index(i, alpha, code));
      out.linear(p) = (std::ldexp(sym(ii, ii), -alpha + d) - std::ldexp(row_sum, d) - phi(ii)) *
                      std::ldexp(1.0, 1 - alpha + d);
      for (std::size_t j = 0; j < n; ++j) {
        for (int beta = 0; beta < code.bits; ++beta) {
          const auto q = static_cast<Eigen::Index>(bit_index(j, beta, code));
          if (p == q) continue;
          out.quadratic(p, q) = std::ldexp(sym(ii, static_cast<Eigen::Index>(j)), 1 - alpha - beta + 2 * d);
        }
      }
    }
  }
  out.constant = std::ldexp(std::ldexp(sym.sum(), d - 1) + phi.sum(), d);
  return out;
}

EncodedProblem encode_fixed_point(const QuadraticObjective& objective, const FixedPointCode& code) {
  code.validate();
  const auto n = static_cast<std::size_t>(objective.c.size());
  if (objective.g.rows() != objective.c.size() || objective.g.cols() != objective.c.size()) {
    throw PreconditionError("objective dimensions do not match");
  }
  EncodedProblem out{QuboInstance({}, {}), n, code};
  if (objective.form == ObjectiveForm::energy) {
    const auto coeff = energy_form_coefficients(2.0 * objective.g, 2.0 * objective.c, code);
    out.qubo = assemble(coeff.quadratic, coeff.linear, coeff.constant + objective.constant);
    return out;
  }
  // x = S q + o, o_i = -2^D.
  const auto r = static_cast<std::size_t>(code.bits);
  MatrixXd s = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * r));
  for (std::size_t i = 0; i < n; ++i) {
    for (int alpha = 0; alpha < code.bits; ++alpha) {
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(bit_index(i, alpha, code))) = bit_weight(alpha, code);
    }
  }
  const VectorXd o = VectorXd::Constant(static_cast<Eigen::Index>(n), code.lowest());
  const MatrixXd g = symmetric_part(objective.g);
  MatrixXd q = s.transpose() * g * s;
  VectorXd linear = 2.0 * s.transpose() * (g * o - objective.c);
  linear += q.diagonal();
  q.diagonal().setZero();
  const double constant = o.dot(g * o) - 2.0 * objective.c.dot(o) + objective.constant;
  out.qubo = assemble(q, linear, constant);
  return out;
}

VectorXd decode_fixed_point(std::span<const std::uint8_t> bits, const FixedPointCode& code) {
  code.validate();
  const auto r = static_cast<std::size_t>(code.bits);
  if (bits.size() % r != 0) throw PreconditionError("bit count is not a multiple of the code width");
  const std::size_t n = bits.size() / r;
  VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double v = code.lowest();
    for (int alpha = 0; alpha < code.bits; ++alpha) {
      if (bits[bit_index(i, alpha, code)] != 0) v += bit_weight(alpha, code);
    }
    x(static_cast<Eigen::Index>(i)) = v;
  }
  return x;
}

VectorXd decode_fixed_point(PackedState state, std::size_t unknowns, const FixedPointCode& code) {
  return decode_fixed_point(unpack_bits(state, unknowns * static_cast<std::size_t>(code.bits)), code);
}

std::vector<std::uint8_t> encode_nearest(const VectorXd& x, const FixedPointCode& code) {
  code.validate();
  const double top = std::ldexp(1.0, code.bits) - 1.0;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(x.size()) * static_cast<std::size_t>(code.bits));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double level = std::clamp(std::round((x(i) - code.lowest()) / code.step()), 0.0, top);
    auto k = static_cast<std::uint64_t>(level);
    for (int alpha = code.bits - 1; alpha >= 0; --alpha) {
      bits[bit_index(static_cast<std::size_t>(i), alpha, code)] = static_cast<std::uint8_t>(k & 1U);
      k >>= 1U;
    }
  }
  return bits;
}

QuboInstance truncate_coefficients(const QuboInstance& inst, int digits) {
  if (digits < 0) throw PreconditionError("digit count must be non-negative");
  const double scale = std::pow(10.0, digits);
  auto cut = [scale](double v) {
    const double t = v * scale;
    const double nearest = std::round(t);
    // Keeps 0.29 at two digits from collapsing to 0.28 through representation error.
    if (std::abs(t - nearest) <= 1e-9 * std::max(1.0, std::abs(t))) return nearest / scale;
    return std::trunc(t) / scale;
  };
  ModelBuilder builder(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) builder.add_linear(i, cut(inst.linear(i)));
  for (const auto& c : inst.quadratic()) builder.add_quadratic(c.i, c.j, cut(c.value));
  builder.add_offset(cut(inst.offset()));
  return builder.build_qubo();
}

Trajectory simulate_pipeline(const SystemSpec& spec, const FixedPointCode& code, const QuboSolver& solver,
                             const PipelineOptions& options) {
  if (!solver) throw PreconditionError("no solver given");
  const auto start = std::chrono::steady_clock::now();
  const auto cs = build_clock_system(spec, options.substeps);
  const auto objective = quadratic_objective(cs, options.form);
  auto encoded = encode_fixed_point(objective, code);
  if (options.truncate_digits) encoded.qubo = truncate_coefficients(encoded.qubo, *options.truncate_digits);
  const PackedState ground = solver(encoded.qubo);
  const VectorXd x = decode_fixed_point(ground, encoded.unknowns, code);

  Trajectory out;
  out.variables = encoded.qubo.size();
  out.qubo_energy = qubo_energy(encoded.qubo, ground);
  out.objective = objective(x);
  out.residual = cs.residual(x);
  const auto l = static_cast<Eigen::Index>(cs.dimension);
  for (std::size_t k = 0; k < cs.points; ++k) {
    VectorXd psi = x.segment(static_cast<Eigen::Index>(k) * l, l);
    const double norm = psi.norm();
    out.normalized.push_back(norm > 0.0 ? VectorXd(psi / norm) : psi);
    out.raw.push_back(std::move(psi));
  }
  out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace spinglass
