// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtele/core.hpp"
#include "qtele/noise.hpp"

namespace qtele {

inline constexpr int kRawSumMaxDim = 8;
inline constexpr int kComputationalMaxDim = 16;

struct FidelityBreakdown {
  double total = 0.0;
  double classical_part = 0.0;  // f_C
  double quantum_part = 0.0;    // f_Q
  double tilde_f = 0.0;
};

struct ThresholdReport {
  NoiseKind kind = NoiseKind::kNone;
  int d = 0;
  double p_star = 0.0;
};

/// f_C = 2 / (d + 1).
double classical_fidelity(Dim d);

/// f_Q = 2/(d(d+1)) sum_{m,n; j>k} Re[w^{m(k-j)} beta_jm beta*_km gamma_{k+n} gamma*_{j+n}].
double quantum_contribution(const MeasurementBasis& basis, const SchmidtChannel& gamma);

/// (1/d) sum_{j k mu nu, q>=1} beta_jmu beta*_kmu w^{mu(k-j)} gamma_{k+nu+q} gamma*_{j+nu+q}.
double tilde_f(const MeasurementBasis& basis, const SchmidtChannel& gamma);

/// Average fidelity with no noise: f_C {1 + (1/d) sum Re[...]}.
FidelityBreakdown noiseless_fidelity(const MeasurementBasis& basis, const SchmidtChannel& gamma);

/// a|00> + sqrt((1-a^2)/mu) sum_{k=1..mu} |kk>, 1 <= mu <= d-1.
/// a ranges over [0, 1/sqrt(mu+1)] for mu < d-1 and [0, 1] for mu = d-1.
SchmidtChannel boundary_state(Dim d, int mu, double a);

/// (1/sqrt(nu)) sum_{k<nu} |kk>, 1 <= nu <= d-1.
SchmidtChannel rank_state(Dim d, int nu);

/// Upper end of the admissible a range of boundary_state().
double boundary_parameter_max(Dim d, int mu);

/// Noise on one qudit only. Weyl kinds take any basis and channel; AD requires
/// maximal entanglement in both.
double single_qudit_fidelity(NoiseKind kind, double p, const MeasurementBasis& basis,
                             const SchmidtChannel& gamma);

/// Single-qudit noise threshold at maximal entanglement.
ThresholdReport threshold(NoiseKind kind, Dim d);

/// d-phase-flip fidelity at maximal entanglement with measurement phases phi_1..phi_{d-1}.
double phase_fidelity(Dim d, double p, std::span<const double> phases);

/// max over phases of phase_fidelity: 1 - dp/(d+1) below p*, (dp+d-1)/(d^2-1) above.
double piecewise_phase_optimum(Dim d, double p);

struct PhaseOptimizerOptions {
  int starts = 0;  // 0 selects 8(d-1) random starts plus the origin
  std::uint64_t seed = 0x5eedULL;
  int max_iterations = 20000;
  double tolerance = 1e-14;
};

struct PhaseOptimum {
  std::vector<double> phases;  // canonical form
  double value = 0.0;
};

/// Multi-start Nelder-Mead over the (d-1)-torus.
PhaseOptimum optimize_phases(Dim d, double p, const PhaseOptimizerOptions& options = {});

/// Representative of a phase vector modulo relabelling, global shift and
/// reflection: phases in [0, 2pi), sorted, lexicographically smallest.
std::vector<double> canonical_phases(std::span<const double> phases);

/// Direct evaluation of the nine-index average-fidelity sum for Weyl-kind noise.
/// a, b, c are the squared coefficient matrices of qudits I, A, B.
double fidelity_weyl_raw(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                         const RealMatrix& a, const RealMatrix& b, const RealMatrix& c);

/// Closed form in terms of region coefficients, f_Q and tilde_f.
double fidelity_weyl_closed(Dim d, double f_q, double tilde_f, const WeylCoefficients& a,
                            const WeylCoefficients& b, const WeylCoefficients& c);

/// Average fidelity for arbitrary Kraus channels on I, A, B (computational basis form).
double fidelity_computational(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                              const KrausChannel& a, const KrausChannel& b,
                              const KrausChannel& c);

/// Same sum, multilinear in the three superoperators (which need not be physical).
double fidelity_computational(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                              const Superoperator& a, const Superoperator& b,
                              const Superoperator& c);

/// Closed-form fidelity of a scenario: Weyl closed form when every qudit carries
/// Weyl-kind noise, computational-basis form otherwise.
double scenario_fidelity(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                         const ScenarioSpec& scenario);

/// Fidelity surface over (p_A, p_B) for amplitude damping on both channel qudits
/// and a fixed input channel. The surface is sum_{xy} M_xy u_x(p_A) u_y(p_B)
/// with u(p) = (1, sqrt(1-p), p).
class DampingSurface {
 public:
  DampingSurface(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                 const KrausChannel& input);

  double operator()(double p_alice, double p_bob) const;
  const Eigen::Matrix3d& coefficients() const { return coefficients_; }

  /// The three basis superoperators: S_AD(p) = S[0] + sqrt(1-p) S[1] + p S[2].
  static std::array<Superoperator, 3> damping_components(Dim d);

 private:
  Eigen::Matrix3d coefficients_;
};

/// Fraction of a uniform grid_points x grid_points grid over (p_A, p_B) in [0,1]^2
/// where the scenario (input, AD, AD) falls below f_C (by more than the derived tolerance).
double region_fraction_below_classical(const NoiseSpec& input, Dim d, int grid_points = 401);

}  // namespace qtele
