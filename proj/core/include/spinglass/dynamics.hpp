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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/model.hpp"

namespace spinglass {

enum class Field { real, complex };

using TimeDependentGenerator = std::function<Eigen::MatrixXcd(double)>;

// dpsi/dt = K(t) psi, sampled at strictly increasing times.
struct SystemSpec {
  Field field = Field::real;
  std::variant<Eigen::MatrixXcd, TimeDependentGenerator> generator;
  Eigen::VectorXcd psi0;
  std::vector<double> times;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(psi0.size()); }
  std::size_t points() const noexcept { return times.size(); }
  // Throws PreconditionError on a malformed spec.
  void validate() const;
};

// Times 0, 1, ..., n-1.
std::vector<double> integer_times(std::size_t n);

// U_k maps psi(t_{k-1}) to psi(t_k), k = 1..N-1. Time-dependent generators use
// a product of midpoint exponentials over `substeps` slices per interval.
std::vector<Eigen::MatrixXcd> step_propagators(const SystemSpec& spec, std::size_t substeps = 1);

// a + bi -> [[a, -b], [b, a]].
Eigen::MatrixXd complex_to_real(const Eigen::MatrixXcd& m);
Eigen::VectorXd complex_to_real(const Eigen::VectorXcd& v);
// Inverse of the vector embedding.
Eigen::VectorXcd real_to_complex(const Eigen::VectorXd& v);

struct ClockSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd phi;
  std::size_t points = 0;
  std::size_t dimension = 0;

  double residual(const Eigen::VectorXd& x) const { return (a * x - phi).norm(); }
};

ClockSystem build_clock_system(std::span<const Eigen::MatrixXd> steps, const Eigen::VectorXd& psi0);
// Real-embeds complex specs first, so dimension doubles for Field::complex.
ClockSystem build_clock_system(const SystemSpec& spec, std::size_t substeps = 1);

// Stack of psi(t_k) produced by the same propagators.
Eigen::VectorXd exact_trajectory(std::span<const Eigen::MatrixXd> steps, const Eigen::VectorXd& psi0);

enum class ObjectiveForm { lsq, energy };

// x -> x^T G x - 2 c^T x + constant.
struct QuadraticObjective {
  ObjectiveForm form = ObjectiveForm::lsq;
  Eigen::MatrixXd g;
  Eigen::VectorXd c;
  double constant = 0.0;

  double operator()(const Eigen::VectorXd& x) const { return x.dot(g * x) - 2.0 * c.dot(x) + constant; }
};

// lsq: |Ax - phi|^2. energy: x^T A x / 2 - x^T phi, which needs A positive
// definite and throws DefinitenessError otherwise.
QuadraticObjective quadratic_objective(const ClockSystem& cs, ObjectiveForm form);

struct FixedPointCode {
  int magnitude = 0;  // D
  int bits = 2;       // R

  void validate() const;
  // Smallest and largest representable values.
  double lowest() const;
  double highest() const;
  double step() const;
};

// x_i = 2^D (2 sum_a 2^-a q_i^a - 1), bit q_i^a at index i * R + a.
constexpr std::size_t bit_index(std::size_t unknown, int alpha, const FixedPointCode& code) noexcept {
  return unknown * static_cast<std::size_t>(code.bits) + static_cast<std::size_t>(alpha);
}

// Closed-form coefficients of the energy objective in the bit variables.
// quadratic(p, r) is the coefficient of q_p q_r for p != r over ordered pairs;
// the diagonal is folded into linear. A is symmetrized first.
struct EnergyFormCoefficients {
  Eigen::MatrixXd quadratic;
  Eigen::VectorXd linear;
  double constant = 0.0;
};

EnergyFormCoefficients energy_form_coefficients(const Eigen::MatrixXd& a, const Eigen::VectorXd& phi,
                                                const FixedPointCode& code);

struct EncodedProblem {
  QuboInstance qubo;
  std::size_t unknowns = 0;
  FixedPointCode code;
};

// qubo_energy(q) == objective(decode(q)) for every q.
EncodedProblem encode_fixed_point(const QuadraticObjective& objective, const FixedPointCode& code);

Eigen::VectorXd decode_fixed_point(std::span<const std::uint8_t> bits, const FixedPointCode& code);
Eigen::VectorXd decode_fixed_point(PackedState state, std::size_t unknowns, const FixedPointCode& code);
// Bits of the nearest grid point, clamped to the representable range.
std::vector<std::uint8_t> encode_nearest(const Eigen::VectorXd& x, const FixedPointCode& code);

// Truncates every coefficient toward zero at `digits` decimal places.
QuboInstance truncate_coefficients(const QuboInstance& inst, int digits);

using QuboSolver = std::function<PackedState(const QuboInstance&)>;

struct PipelineOptions {
  ObjectiveForm form = ObjectiveForm::lsq;
  std::size_t substeps = 1;
  std::optional<int> truncate_digits;
};

struct Trajectory {
  // One entry per time point, in the real-embedded basis.
  std::vector<Eigen::VectorXd> raw;
  std::vector<Eigen::VectorXd> normalized;
  std::size_t variables = 0;
  double qubo_energy = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  double elapsed = 0.0;
};

Trajectory simulate_pipeline(const SystemSpec& spec, const FixedPointCode& code,
                             const QuboSolver& solver, const PipelineOptions& options = {});

}  // namespace spinglass
