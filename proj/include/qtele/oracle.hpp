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
#include <vector>

#include "qtele/core.hpp"
#include "qtele/noise.hpp"

namespace qtele {

/// One measurement branch (m, n) of the protocol.
struct ProtocolOutcome {
  int m = 0;
  int n = 0;
  double probability = 0.0;           // tr(rho_mn)
  double overlap = 0.0;               // <phi| rho_mn |phi>, unnormalized
  double conditional_fidelity = 0.0;  // overlap / probability, 0 for impossible branches
};

struct ProtocolResult {
  std::vector<ProtocolOutcome> outcomes;  // ordered (m, n) lexicographically
  double fidelity = 0.0;                  // sum of overlaps
};

/// |phi><phi| (x) |psi><psi| on registers (I, A, B). Dimension capped at kOracleMaxDim.
DensityMatrix assemble_initial(const PureState& phi, const SchmidtChannel& gamma);

/// Applies each qudit's channel on its register, in `order` (register indices).
DensityMatrix apply_scenario(DensityMatrix rho, const ScenarioSpec& scenario,
                             std::array<int, 3> order = {0, 1, 2});

/// Projects (I, A) on every |Phi_mn>, traces them out, applies U_mn to B and
/// records the unnormalized overlap with phi_ref. Corrections are noiseless.
ProtocolResult run_protocol(const DensityMatrix& rho, const MeasurementBasis& basis,
                            const PureState& phi_ref);

/// Same quantity as the density-matrix route, propagating each Kraus branch
/// of the pure initial state separately. Cost grows with the branch count.
double fidelity_for_input_branches(const PureState& phi, const SchmidtChannel& gamma,
                                   const MeasurementBasis& basis, const ScenarioSpec& scenario);

/// F for one input. Uses the branch route when there are at most d^2 Kraus
/// branches, otherwise assemble_initial -> apply_scenario -> run_protocol.
double fidelity_for_input(const PureState& phi, const SchmidtChannel& gamma,
                          const MeasurementBasis& basis, const ScenarioSpec& scenario);

}  // namespace qtele
