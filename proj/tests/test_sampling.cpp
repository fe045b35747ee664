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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qtele/closed_form.hpp"
#include "qtele/parallel.hpp"
#include "qtele/sampling.hpp"
#include "reference.hpp"

namespace qtele {
namespace {

TEST(Rng, SplitMixReferenceValue) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  SampleRng a = SampleRng::for_index(RngSeed{9}, 3);
  SampleRng b = SampleRng::for_index(RngSeed{9}, 3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.uniform(), b.uniform());
  std::set<double> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(SampleRng::for_index(RngSeed{9}, i).uniform());
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_NE(SampleRng::for_index(RngSeed{9}, 0, 1).uniform(), SampleRng::for_index(RngSeed{9}, 0, 0).uniform());
}

TEST(Rng, UniformAndNormalMoments) {
  SampleRng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(double(n)));
  EXPECT_NEAR(sn2 / n, 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(Estimate, MeanAndStandardError) {
  const std::vector<double> v{1, 2, 3, 4};
  const McEstimate e = estimate(v);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(e.n_samples, 4u);
  EXPECT_THROW(estimate(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Parallel, PairwiseSumIsOrderStableAndExactOnIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_DOUBLE_EQ(pairwise_sum(v), 500500.0);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Volume, ClosedFormMatchesQuadrature) {
  for (int d = 2; d <= 4; ++d) {
    // Midpoint rule in each angle on [0, pi/2]; phases contribute (2 pi)^(d-1).
    const int steps = d == 4 ? 120 : 400;
    const double h = kPi / 2 / steps;
    std::vector<int> idx(d - 1, 0);
    double total = 0.0;
    std::vector<double> thetas(d - 1);
    const long long count = static_cast<long long>(std::pow(steps, d - 1));
    for (long long c = 0; c < count; ++c) {
      long long rest = c;
      for (int j = 0; j < d - 1; ++j) {
        thetas[j] = (rest % steps + 0.5) * h;
        rest /= steps;
      }
      total += volume_element(thetas);
    }
    total *= std::pow(h, d - 1) * std::pow(2 * kPi, d - 1);
    EXPECT_NEAR(total, volume(d), 1e-4 * volume(d)) << d;
  }
  EXPECT_NEAR(volume(2), kPi, 1e-15);
  EXPECT_NEAR(volume(3), kPi * kPi / 2, 1e-14);
}

TEST(InputStates, BothSamplersNormalizeAndAngularFixesGlobalPhase) {
  SampleRng rng(2);
  for (int d = 2; d <= 6; ++d) {
    for (InputSampler s : {InputSampler::kGaussian, InputSampler::kAngular}) {
      for (int i = 0; i < 50; ++i) {
        const PureState phi = sample_input_state(d, rng, s);
        ASSERT_NEAR(phi.amplitudes().norm(), 1.0, 1e-12);
        if (s == InputSampler::kAngular) {
          ASSERT_GE(phi[0].real(), 0.0);
          ASSERT_EQ(phi[0].imag(), 0.0);
        }
      }
    }
  }
}

TEST(Moments, ExactPairingRule) {
  EXPECT_DOUBLE_EQ(haar_fourth_moment(3, 0, 0, 0, 0), 2.0 / 12);
  EXPECT_DOUBLE_EQ(haar_fourth_moment(3, 0, 1, 1, 0), 1.0 / 12);
  EXPECT_DOUBLE_EQ(haar_fourth_moment(3, 0, 0, 2, 2), 1.0 / 12);
  EXPECT_DOUBLE_EQ(haar_fourth_moment(3, 0, 1, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(haar_fourth_moment(4, 0, 1, 2, 3), 0.0);
}

TEST(Moments, SamplersReproducePairingAtModerateSize) {
  for (InputSampler s : {InputSampler::kGaussian, InputSampler::kAngular}) {
    for (int d : {2, 4}) {
      for (auto [j, k, l, m] : {std::array{0, 0, 0, 0}, std::array{0, 1, 1, 0}, std::array{1, 0, 1, 0}}) {
        const ComplexMcEstimate e = fourth_moment(d, j, k, l, m, 50000, RngSeed{31}, s);
        EXPECT_NEAR(e.real.mean, haar_fourth_moment(d, j, k, l, m), 4 * e.real.std_error + 1e-15);
        EXPECT_NEAR(e.imag.mean, 0.0, 4 * e.imag.std_error + 1e-15);
      }
    }
  }
  EXPECT_THROW(fourth_moment(3, 0, 0, 0, 3, 100, RngSeed{}), std::invalid_argument);
}

TEST(Moments, BatchMatchesSinglePatternEstimates) {
  const std::vector<MomentIndex> patterns{{0, 0, 0, 0}, {0, 1, 1, 0}, {2, 1, 0, 2}};
  const std::vector<ComplexMcEstimate> batch = fourth_moments(3, patterns, 2000, RngSeed{8}, InputSampler::kAngular);
  ASSERT_EQ(batch.size(), patterns.size());
  for (std::size_t c = 0; c < patterns.size(); ++c) {
    const auto& [j, k, l, m] = patterns[c];
    const ComplexMcEstimate single = fourth_moment(3, j, k, l, m, 2000, RngSeed{8}, InputSampler::kAngular);
    EXPECT_EQ(batch[c].real.mean, single.real.mean);
    EXPECT_EQ(batch[c].imag.std_error, single.imag.std_error);
  }
}

TEST(MonteCarlo, AgreesWithClosedFormAndIgnoresWorkerCount) {
  const int d = 3;
  ScenarioSpec s;
  s.input = {NoiseKind::kDepolarizing, 0.2};
  s.bob = {NoiseKind::kAmplitudeDamping, 0.4};
  const MeasurementBasis basis = max_entangled_basis(d);
  const SchmidtChannel gamma = SchmidtChannel::maximally_entangled(d);
  const McEstimate one = mc_average_fidelity(gamma, basis, s, 3000, RngSeed{5}, 1);
  const McEstimate three = mc_average_fidelity(gamma, basis, s, 3000, RngSeed{5}, 3);
  EXPECT_EQ(one.mean, three.mean);
  EXPECT_EQ(one.std_error, three.std_error);
  EXPECT_NEAR(one.mean, scenario_fidelity(basis, gamma, s), 4 * one.std_error);
  EXPECT_THROW(mc_average_fidelity(gamma, basis, s, 99, RngSeed{}), std::invalid_argument);
  EXPECT_THROW(mc_average_fidelity(SchmidtChannel::maximally_entangled(11), max_entangled_basis(11), {}, 100, RngSeed{}),
               DimensionError);
}

TEST(Schmidt, SamplesAreRealNonNegativeAndNormalized) {
  SampleRng rng(3);
  for (int i = 0; i < 100; ++i) {
    const SchmidtChannel g = sample_schmidt_channel(4, rng);
    EXPECT_NEAR(g.gamma().norm(), 1.0, 1e-12);
    for (int k = 0; k < 4; ++k) {
      EXPECT_GE(g[k].real(), 0.0);
      EXPECT_EQ(g[k].imag(), 0.0);
    }
  }
}

TEST(Schmidt, NormalizedContributionOfRankStates) {
  for (int d = 2; d <= 7; ++d) {
    const MeasurementBasis basis = max_entangled_basis(d);
    for (int nu = 1; nu < d; ++nu) {
      EXPECT_NEAR(normalized_quantum_contribution(basis, rank_state(d, nu)), (nu - 1.0) / (d - 1.0), 1e-12);
    }
    EXPECT_NEAR(normalized_quantum_contribution(basis, SchmidtChannel::maximally_entangled(d)), 1.0, 1e-12);
  }
}

TEST(Scatter, DeterministicAcrossWorkersWithAllFamilies) {
  const ScatterResult a = scatter_experiment(4, 500, RngSeed{8}, 11, 1);
  const ScatterResult b = scatter_experiment(4, 500, RngSeed{8}, 11, 3);
  ASSERT_EQ(a.records.size(), 500u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    ASSERT_EQ(a.records[i].entanglement, b.records[i].entanglement);
    ASSERT_EQ(a.records[i].fq_normalized, b.records[i].fq_normalized);
  }
  std::set<int> families;
  for (const BoundaryPoint& pt : a.boundary) families.insert(pt.mu);
  EXPECT_EQ(families, (std::set<int>{1, 2, 3}));
  EXPECT_EQ(a.boundary.size(), 33u);
}

TEST(Scatter, EnvelopeContainsSamplesAndMeetsEndpoints) {
  for (int d : {2, 3}) {
    const ScatterResult r = scatter_experiment(d, 2000, RngSeed{9}, 21);
    for (const ScatterRecord& rec : r.records) {
      const Envelope env = boundary_envelope(d, rec.entanglement);
      ASSERT_GE(rec.fq_normalized, env.lower - 1e-6);
      ASSERT_LE(rec.fq_normalized, env.upper + 1e-6);
    }
    const Envelope top = boundary_envelope(d, 1.0);
    EXPECT_NEAR(top.lower, 1.0, 1e-9);
    EXPECT_NEAR(top.upper, 1.0, 1e-9);
    EXPECT_NEAR(boundary_envelope(d, 0.0).lower, 0.0, 1e-9);
  }
  EXPECT_THROW(boundary_envelope(3, 1.5), std::invalid_argument);
}

}  // namespace
}  // namespace qtele
