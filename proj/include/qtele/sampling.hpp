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
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qtele/core.hpp"
#include "qtele/noise.hpp"
#include "qtele/random.hpp"

namespace qtele {

enum class InputSampler {
  kGaussian,  // normalized vector of independent complex normals
  kAngular,   // hyperspherical angles with the invariant volume element
};

std::string_view to_string(InputSampler sampler);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n_samples = 0;
};

/// Mean and standard error of `values` (n >= 2), pairwise-summed.
McEstimate estimate(std::span<const double> values);

/// Unitarily invariant random pure state.
PureState sample_input_state(Dim d, SampleRng& rng, InputSampler sampler = InputSampler::kGaussian);

/// Schmidt coefficients |g_k| / |g| of a normalized complex normal vector g.
SchmidtChannel sample_schmidt_channel(Dim d, SampleRng& rng);

/// Oracle fidelity averaged over n random inputs. Sample i draws from
/// SampleRng::for_index(seed, i), so the result does not depend on `workers`.
McEstimate mc_average_fidelity(const SchmidtChannel& gamma, const MeasurementBasis& basis,
                               const ScenarioSpec& scenario, std::size_t n, RngSeed seed,
                               int workers = 1);

/// Total volume pi^{d-1} / (d-1)! of the pure-state manifold in the angular parametrization.
double volume(Dim d);

/// Density of the invariant volume element at angles theta_0..theta_{d-2}
/// (the phase integrals contribute (2 pi)^{d-1} separately).
double volume_element(std::span<const double> thetas);

/// <alpha_j alpha_k* alpha_l alpha_m*> = (delta_jk delta_lm + delta_jm delta_kl) / (d(d+1)).
double haar_fourth_moment(Dim d, int j, int k, int l, int m);

struct ComplexMcEstimate {
  McEstimate real;
  McEstimate imag;
};

/// Index pattern (j, k, l, m) of a fourth moment.
using MomentIndex = std::array<int, 4>;

/// Estimates of every pattern from one shared sample of n inputs.
std::vector<ComplexMcEstimate> fourth_moments(Dim d, std::span<const MomentIndex> patterns,
                                              std::size_t n, RngSeed seed,
                                              InputSampler sampler = InputSampler::kGaussian);

/// Monte Carlo estimate of <alpha_j alpha_k* alpha_l alpha_m*>.
ComplexMcEstimate fourth_moment(Dim d, int j, int k, int l, int m, std::size_t n, RngSeed seed,
                                InputSampler sampler = InputSampler::kGaussian);

/// f'_Q = (d+1) f_Q / (d-1).
double normalized_quantum_contribution(const MeasurementBasis& basis, const SchmidtChannel& gamma);

struct ScatterRecord {
  double entanglement = 0.0;
  double fq_normalized = 0.0;
};

struct BoundaryPoint {
  int mu = 0;
  double a = 0.0;
  double entanglement = 0.0;
  double fq_normalized = 0.0;
};

struct ScatterResult {
  int d = 0;
  std::vector<ScatterRecord> records;
  std::vector<BoundaryPoint> boundary;  // grouped by mu, a ascending
};

/// Random channels against the maximally entangled measurement, plus the d-1
/// boundary families sampled at `curve_points` values of a each.
ScatterResult scatter_experiment(Dim d, std::size_t n, RngSeed seed, int curve_points = 201,
                                 int workers = 1);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lowest and highest f'_Q attained by the boundary families at the given
/// normalized entanglement (bisection on each monotone branch).
Envelope boundary_envelope(Dim d, double entanglement);

}  // namespace qtele
