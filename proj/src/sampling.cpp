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

#include "qtele/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtele/closed_form.hpp"
#include "qtele/oracle.hpp"
#include "qtele/parallel.hpp"

namespace qtele {

std::string_view to_string(InputSampler sampler) {
  return sampler == InputSampler::kGaussian ? "gaussian" : "angular";
}

McEstimate estimate(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("estimate: need at least 2 samples");
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(),
                 [mean](double v) { return (v - mean) * (v - mean); });
  const double variance = pairwise_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(variance / n), values.size()};
}

PureState sample_input_state(Dim dim, SampleRng& rng, InputSampler sampler) {
  const int d = dim;
  Vector alpha(d);
  if (sampler == InputSampler::kGaussian) {
    for (int j = 0; j < d; ++j) alpha[j] = rng.complex_normal();
    return PureState::normalized(std::move(alpha));
  }
  // alpha_0 = cos t_0, alpha_j = sin t_0 .. sin t_{j-1} cos t_j e^{i phi_j},
  // alpha_{d-1} = sin t_0 .. sin t_{d-2} e^{i phi_{d-1}}. With u_j = sin^2 t_j the
  // volume element gives u_j density proportional to u^{d-j-2}.
  double tail = 1.0;  // product of sines so far
  for (int j = 0; j < d - 1; ++j) {
    const double u = std::pow(1.0 - rng.uniform(), 1.0 / (d - j - 1.0));
    const double sin_t = std::sqrt(u);
    const double cos_t = std::sqrt(1.0 - u);
    const Complex phase = j == 0 ? Complex(1.0) : std::polar(1.0, 2.0 * kPi * rng.uniform());
    alpha[j] = tail * cos_t * phase;
    tail *= sin_t;
  }
  alpha[d - 1] = tail * std::polar(1.0, 2.0 * kPi * rng.uniform());
  return PureState::normalized(std::move(alpha));
}

SchmidtChannel sample_schmidt_channel(Dim dim, SampleRng& rng) {
  const int d = dim;
  Vector gamma(d);
  for (int k = 0; k < d; ++k) gamma[k] = std::abs(rng.complex_normal());
  return SchmidtChannel::normalized(std::move(gamma));
}

McEstimate mc_average_fidelity(const SchmidtChannel& gamma, const MeasurementBasis& basis,
                               const ScenarioSpec& scenario, std::size_t n, RngSeed seed,
                               int workers) {
  if (n < 100) throw std::invalid_argument("mc_average_fidelity: need n >= 100");
  const int d = gamma.dim();
  require_dim_at_most(d, kOracleMaxDim, "teleport oracle");
  scenario.validate();
  std::vector<double> values(n);
  parallel_for(n, workers, [&](std::size_t i) {
    SampleRng rng = SampleRng::for_index(seed, i);
    const PureState phi = sample_input_state(d, rng);
    values[i] = fidelity_for_input(phi, gamma, basis, scenario);
  });
  return estimate(values);
}

double volume(Dim d) { return std::pow(kPi, d - 1.0) / std::tgamma(static_cast<double>(d)); }

double volume_element(std::span<const double> thetas) {
  const int d = static_cast<int>(thetas.size()) + 1;
  double density = 1.0;
  for (int j = 0; j < d - 1; ++j) {
    density *= std::pow(std::sin(thetas[j]), 2 * d - 2 * j - 3) * std::cos(thetas[j]);
  }
  return density;
}

double haar_fourth_moment(Dim dim, int j, int k, int l, int m) {
  const int d = dim;
  const double pairs = (j == k && l == m ? 1.0 : 0.0) + (j == m && k == l ? 1.0 : 0.0);
  return pairs / (d * (d + 1.0));
}

std::vector<ComplexMcEstimate> fourth_moments(Dim dim, std::span<const MomentIndex> patterns,
                                              std::size_t n, RngSeed seed, InputSampler sampler) {
  const int d = dim;
  for (const MomentIndex& pattern : patterns) {
    for (int idx : pattern) {
      if (idx < 0 || idx >= d) throw std::invalid_argument("fourth_moment: index out of range");
    }
  }
  const std::size_t count = patterns.size();
  std::vector<std::vector<double>> re(count, std::vector<double>(n));
  std::vector<std::vector<double>> im(count, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    SampleRng rng = SampleRng::for_index(seed, i);
    const PureState a = sample_input_state(d, rng, sampler);
    for (std::size_t c = 0; c < count; ++c) {
      const auto& [j, k, l, m] = patterns[c];
      const Complex z = a[j] * std::conj(a[k]) * a[l] * std::conj(a[m]);
      re[c][i] = z.real();
      im[c][i] = z.imag();
    }
  }
  std::vector<ComplexMcEstimate> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) out.push_back({estimate(re[c]), estimate(im[c])});
  return out;
}

ComplexMcEstimate fourth_moment(Dim dim, int j, int k, int l, int m, std::size_t n, RngSeed seed,
                                InputSampler sampler) {
  const MomentIndex pattern{j, k, l, m};
  return fourth_moments(dim, std::span<const MomentIndex>(&pattern, 1), n, seed, sampler).front();
}

double normalized_quantum_contribution(const MeasurementBasis& basis,
                                       const SchmidtChannel& gamma) {
  const int d = basis.dim();
  return (d + 1.0) * quantum_contribution(basis, gamma) / (d - 1.0);
}

ScatterResult scatter_experiment(Dim dim, std::size_t n, RngSeed seed, int curve_points,
                                 int workers) {
  const int d = dim;
  if (curve_points < 2) throw std::invalid_argument("scatter_experiment: curve_points < 2");
  const MeasurementBasis basis = max_entangled_basis(d);
  ScatterResult out;
  out.d = d;
  out.records.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    SampleRng rng = SampleRng::for_index(seed, i);
    const SchmidtChannel gamma = sample_schmidt_channel(d, rng);
    out.records[i] = {entanglement_entropy(gamma), normalized_quantum_contribution(basis, gamma)};
  });
  for (int mu = 1; mu <= d - 1; ++mu) {
    const double a_max = boundary_parameter_max(d, mu);
    for (int i = 0; i < curve_points; ++i) {
      const double a = a_max * i / (curve_points - 1.0);
      const SchmidtChannel gamma = boundary_state(d, mu, a);
      out.boundary.push_back(
          {mu, a, entanglement_entropy(gamma), normalized_quantum_contribution(basis, gamma)});
    }
  }
  return out;
}

namespace {

struct Branch {
  int mu;
  double a_lo;
  double a_hi;
};

// Monotone pieces of the boundary families in the entanglement coordinate.
std::vector<Branch> boundary_branches(Dim dim) {
  const int d = dim;
  std::vector<Branch> branches;
  for (int mu = 1; mu < d - 1; ++mu) branches.push_back({mu, 0.0, boundary_parameter_max(d, mu)});
  const double turn = 1.0 / std::sqrt(static_cast<double>(d));
  branches.push_back({d - 1, 0.0, turn});
  branches.push_back({d - 1, turn, 1.0});
  return branches;
}

}  // namespace

Envelope boundary_envelope(Dim dim, double entanglement) {
  const int d = dim;
  const MeasurementBasis basis = max_entangled_basis(d);
  auto entropy_at = [&](int mu, double a) { return entanglement_entropy(boundary_state(d, mu, a)); };
  Envelope env{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Branch& br : boundary_branches(d)) {
    double lo = br.a_lo;
    double hi = br.a_hi;
    double e_lo = entropy_at(br.mu, lo);
    double e_hi = entropy_at(br.mu, hi);
    const double e_min = std::min(e_lo, e_hi);
    const double e_max = std::max(e_lo, e_hi);
    if (entanglement < e_min - 1e-12 || entanglement > e_max + 1e-12) continue;
    const bool increasing = e_hi >= e_lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double e_mid = entropy_at(br.mu, mid);
      if ((e_mid < entanglement) == increasing) lo = mid;
      else hi = mid;
    }
    const double f = normalized_quantum_contribution(basis, boundary_state(d, br.mu, 0.5 * (lo + hi)));
    env.lower = std::min(env.lower, f);
    env.upper = std::max(env.upper, f);
  }
  if (env.lower > env.upper) {
    throw std::invalid_argument("boundary_envelope: entanglement outside [0, 1]");
  }
  return env;
}

}  // namespace qtele
