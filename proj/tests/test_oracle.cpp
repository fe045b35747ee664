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

#include <algorithm>
#include <array>

#include "qtele/oracle.hpp"
#include "reference.hpp"

namespace qtele {
namespace {

using testing::random_unit_vector;

TEST(Oracle, NoiselessMaximalChannelTeleportsPerfectly) {
  SampleRng rng(1);
  for (int d = 2; d <= 6; ++d) {
    const MeasurementBasis basis = max_entangled_basis(d);
    const SchmidtChannel gamma = SchmidtChannel::maximally_entangled(d);
    for (int trial = 0; trial < 5; ++trial) {
      const PureState phi(random_unit_vector(d, rng));
      const ProtocolResult res = run_protocol(assemble_initial(phi, gamma), basis, phi);
      EXPECT_NEAR(res.fidelity, 1.0, 1e-12);
      ASSERT_EQ(res.outcomes.size(), static_cast<std::size_t>(d * d));
      for (const ProtocolOutcome& o : res.outcomes) {
        EXPECT_NEAR(o.probability, 1.0 / (d * d), 1e-12);
        EXPECT_NEAR(o.conditional_fidelity, 1.0, 1e-12);
      }
    }
  }
}

TEST(Oracle, OutcomeProbabilitiesSumToOne) {
  SampleRng rng(2);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const MeasurementBasis basis(testing::random_unitary(d, rng));
      const SchmidtChannel gamma(random_unit_vector(d, rng));
      const PureState phi(random_unit_vector(d, rng));
      const ScenarioSpec s = testing::random_any_scenario(rng);
      const ProtocolResult res = run_protocol(apply_scenario(assemble_initial(phi, gamma), s), basis, phi);
      double total = 0.0;
      for (const ProtocolOutcome& o : res.outcomes) {
        total += o.probability;
        EXPECT_GE(o.probability, -1e-14);
        if (o.probability > 1e-14) EXPECT_NEAR(o.conditional_fidelity * o.probability, o.overlap, 1e-13);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Oracle, MatchesFullMatrixReferencePerInput) {
  SampleRng rng(3);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 8; ++trial) {
      const MeasurementBasis basis(testing::random_unitary(d, rng));
      const SchmidtChannel gamma(random_unit_vector(d, rng));
      const ScenarioSpec s = testing::random_any_scenario(rng);
      const PureState phi(random_unit_vector(d, rng));
      const Matrix out = testing::teleport_map(phi.amplitudes() * phi.amplitudes().adjoint(), basis.beta(),
                                               gamma.gamma(), testing::kraus_triple(s, d));
      const double expected = (phi.amplitudes().adjoint() * out * phi.amplitudes())(0, 0).real();
      EXPECT_NEAR(fidelity_for_input(phi, gamma, basis, s), expected, 1e-12) << s.to_string();
      const double dense = run_protocol(apply_scenario(assemble_initial(phi, gamma), s), basis, phi).fidelity;
      EXPECT_NEAR(dense, expected, 1e-12) << s.to_string();
      EXPECT_NEAR(fidelity_for_input_branches(phi, gamma, basis, s), expected, 1e-12) << s.to_string();
    }
  }
}

TEST(Oracle, BranchAndDensityRoutesAgree) {
  SampleRng rng(33);
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 6; ++trial) {
      const MeasurementBasis basis(testing::random_unitary(d, rng));
      const SchmidtChannel gamma(random_unit_vector(d, rng));
      const ScenarioSpec s = trial == 0 ? ScenarioSpec{} : testing::random_any_scenario(rng);
      const PureState phi(random_unit_vector(d, rng));
      const double dense = run_protocol(apply_scenario(assemble_initial(phi, gamma), s), basis, phi).fidelity;
      EXPECT_NEAR(fidelity_for_input_branches(phi, gamma, basis, s), dense, 1e-12)
          << "d=" << d << " " << s.to_string();
    }
  }
}

TEST(Oracle, ChannelOrderDoesNotMatter) {
  SampleRng rng(4);
  std::array<int, 3> order{0, 1, 2};
  for (int d = 2; d <= 4; ++d) {
    const SchmidtChannel gamma(random_unit_vector(d, rng));
    const PureState phi(random_unit_vector(d, rng));
    const ScenarioSpec s = testing::random_any_scenario(rng);
    const DensityMatrix rho = assemble_initial(phi, gamma);
    const Matrix base = apply_scenario(rho, s).matrix();
    std::sort(order.begin(), order.end());
    while (std::next_permutation(order.begin(), order.end())) {
      EXPECT_LT(testing::max_abs(apply_scenario(rho, s, order).matrix() - base), 1e-13);
    }
  }
}

TEST(Oracle, FidelityIsLinearInChannelMixtures) {
  SampleRng rng(5);
  const int d = 3;
  const MeasurementBasis basis = max_entangled_basis(d);
  const PureState phi(random_unit_vector(d, rng));
  const SchmidtChannel g1(random_unit_vector(d, rng));
  const SchmidtChannel g2(random_unit_vector(d, rng));
  const double w = 0.3;
  const Matrix mixed = w * assemble_initial(phi, g1).matrix() + (1 - w) * assemble_initial(phi, g2).matrix();
  const double f_mixed = run_protocol(DensityMatrix(mixed, d, 3), basis, phi).fidelity;
  const double f1 = run_protocol(assemble_initial(phi, g1), basis, phi).fidelity;
  const double f2 = run_protocol(assemble_initial(phi, g2), basis, phi).fidelity;
  EXPECT_NEAR(f_mixed, w * f1 + (1 - w) * f2, 1e-12);
}

TEST(Oracle, RejectsDimensionsAboveCapAndMismatches) {
  EXPECT_THROW(assemble_initial(PureState::basis_state(11, 0), SchmidtChannel::maximally_entangled(11)),
               DimensionError);
  EXPECT_THROW(assemble_initial(PureState::basis_state(3, 0), SchmidtChannel::maximally_entangled(2)),
               std::invalid_argument);
}

}  // namespace
}  // namespace qtele
