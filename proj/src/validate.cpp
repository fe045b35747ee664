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

#include "qtele/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qtele/closed_form.hpp"
#include "qtele/core.hpp"
#include "qtele/noise.hpp"
#include "qtele/oracle.hpp"
#include "qtele/random.hpp"
#include "qtele/sampling.hpp"
#include "qtele/tolerance.hpp"

namespace qtele {
namespace {

constexpr std::array<double, 5> kProbeP{0.0, 0.1, 0.37, 0.8, 1.0};

CheckResult bounded(std::string name, double worst, double tol, std::string detail = {}) {
  return {std::move(name), worst <= tol, worst, tol, std::move(detail)};
}

CheckResult check_completeness() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (NoiseKind kind : kAllNoiseKinds) {
      for (double p : kProbeP) {
        worst = std::max(worst, kraus_operators({kind, p}, d).completeness_error());
      }
    }
  }
  return bounded("kraus_completeness", worst, kTolerances.construction, "d=2..6, all kinds");
}

CheckResult check_weyl_group_law() {
  double worst = 0.0;
  for (int d = 2; d <= 5; ++d) {
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const Matrix u = weyl_operator(d, {m, n, d});
        for (int m2 = 0; m2 < d; ++m2) {
          for (int n2 = 0; n2 < d; ++n2) {
            const Matrix lhs = u * weyl_operator(d, {m2, n2, d});
            const Matrix rhs = root_of_unity(d, static_cast<long long>(n) * m2) *
                               weyl_operator(d, {m + m2, n + n2, d});
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
          }
        }
      }
    }
  }
  return bounded("weyl_group_law", worst, kTolerances.construction, "d=2..5");
}

CheckResult check_bell_orthonormality() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    std::vector<double> phases(d - 1);
    for (int k = 0; k < d - 1; ++k) phases[k] = 0.7 * (k + 1);
    for (const MeasurementBasis& basis : {max_entangled_basis(d), phased_basis(d, phases)}) {
      Matrix gram(d * d, d * d);
      std::vector<Vector> states;
      for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) states.push_back(bell_state(d, basis, {m, n, d}));
      }
      for (int i = 0; i < d * d; ++i) {
        for (int j = 0; j < d * d; ++j) gram(i, j) = states[i].dot(states[j]);
      }
      worst = std::max(worst, (gram - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff());
    }
  }
  return bounded("bell_orthonormality", worst, kTolerances.construction, "d=2..6");
}

CheckResult check_thresholds() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const MeasurementBasis basis = max_entangled_basis(d);
    const SchmidtChannel gamma = SchmidtChannel::maximally_entangled(d);
    for (NoiseKind kind : kAllNoiseKinds) {
      if (kind == NoiseKind::kNone) continue;
      const double p_star = threshold(kind, d).p_star;
      worst = std::max(worst, std::abs(single_qudit_fidelity(kind, p_star, basis, gamma) -
                                       classical_fidelity(d)));
    }
  }
  return bounded("threshold_meets_classical", worst, kTolerances.derived, "d=2..8, all kinds");
}

CheckResult check_noiseless() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    worst = std::max(worst, std::abs(noiseless_fidelity(max_entangled_basis(d),
                                                        SchmidtChannel::maximally_entangled(d))
                                         .total -
                                     1.0));
  }
  return bounded("noiseless_perfect", worst, kTolerances.derived, "d=2..8");
}

CheckResult check_depolarizing_example() {
  ScenarioSpec s;
  s.bob = {NoiseKind::kDepolarizing, 0.3};
  const double f = scenario_fidelity(max_entangled_basis(3), SchmidtChannel::maximally_entangled(3), s);
  return bounded("depolarizing_bob_d3", std::abs(f - 0.8), kTolerances.derived);
}

// Random scenario with Weyl kinds only.
ScenarioSpec random_weyl_scenario(SampleRng& rng) {
  static constexpr std::array<NoiseKind, 5> kinds{NoiseKind::kNone, NoiseKind::kDitFlip,
                                                  NoiseKind::kPhaseFlip, NoiseKind::kDitPhaseFlip,
                                                  NoiseKind::kDepolarizing};
  ScenarioSpec s;
  for (Register r : {Register::kInput, Register::kAlice, Register::kBob}) {
    s.at(r) = {kinds[static_cast<std::size_t>(rng.uniform() * kinds.size())], rng.uniform()};
  }
  return s;
}

CheckResult check_triple_equivalence() {
  double worst = 0.0;
  SampleRng rng(2024);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 6; ++trial) {
      const SchmidtChannel gamma = sample_schmidt_channel(d, rng);
      std::vector<double> phases(d - 1);
      for (double& phi : phases) phi = 2.0 * kPi * rng.uniform();
      const MeasurementBasis basis = phased_basis(d, phases);
      const ScenarioSpec s = random_weyl_scenario(rng);
      const double raw = fidelity_weyl_raw(basis, gamma, coefficient_matrix(s.input, d),
                                           coefficient_matrix(s.alice, d),
                                           coefficient_matrix(s.bob, d));
      const double closed = fidelity_weyl_closed(
          d, quantum_contribution(basis, gamma), tilde_f(basis, gamma),
          weyl_coefficients(s.input.kind, s.input.p, d), weyl_coefficients(s.alice.kind, s.alice.p, d),
          weyl_coefficients(s.bob.kind, s.bob.p, d));
      const double comp = fidelity_computational(basis, gamma, kraus_operators(s.input, d),
                                                 kraus_operators(s.alice, d),
                                                 kraus_operators(s.bob, d));
      worst = std::max({worst, std::abs(raw - closed), std::abs(raw - comp)});
    }
  }
  return bounded("triple_equivalence", worst, kTolerances.derived, "d=2..4, 6 random scenarios each");
}

CheckResult check_mc_agreement(int workers) {
  double worst_z = 0.0;
  for (int d = 2; d <= 3; ++d) {
    const MeasurementBasis basis = max_entangled_basis(d);
    const SchmidtChannel gamma = SchmidtChannel::maximally_entangled(d);
    std::vector<ScenarioSpec> scenarios(3);
    scenarios[0].bob = {NoiseKind::kDepolarizing, 0.4};
    scenarios[1].input = {NoiseKind::kDitFlip, 0.3};
    scenarios[1].alice = {NoiseKind::kPhaseFlip, 0.6};
    scenarios[2].alice = {NoiseKind::kAmplitudeDamping, 0.5};
    scenarios[2].bob = {NoiseKind::kAmplitudeDamping, 0.2};
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      const double exact = scenario_fidelity(basis, gamma, scenarios[i]);
      const McEstimate mc = mc_average_fidelity(gamma, basis, scenarios[i], 4000,
                                                RngSeed{100 + 10 * static_cast<unsigned>(d) + i},
                                                workers);
      worst_z = std::max(worst_z, std::abs(mc.mean - exact) / std::max(mc.std_error, 1e-12));
    }
  }
  return bounded("oracle_mc_agreement", worst_z, 5.0, "worst |z| over 6 scenarios, n=4000");
}

CheckResult check_envelope(int workers) {
  const ScatterResult scatter = scatter_experiment(3, 2000, RngSeed{7}, 101, workers);
  double worst = 0.0;
  for (const ScatterRecord& rec : scatter.records) {
    const Envelope env = boundary_envelope(3, rec.entanglement);
    worst = std::max({worst, env.lower - rec.fq_normalized, rec.fq_normalized - env.upper});
  }
  return bounded("scatter_envelope", std::max(worst, 0.0), kTolerances.eigenvalue, "d=3, n=2000");
}

CheckResult check_phase_optimum() {
  double worst = 0.0;
  for (double p : {0.2, 0.5, 0.8, 0.95}) {
    worst = std::max(worst, std::abs(optimize_phases(3, p).value - piecewise_phase_optimum(3, p)));
  }
  return bounded("phase_optimum_piecewise", worst, 1e-9, "d=3");
}

}  // namespace

std::vector<CheckResult> run_validation(std::string_view level, int workers) {
  if (level != "fast" && level != "full") {
    throw std::invalid_argument("unknown validation level '" + std::string(level) + "'");
  }
  std::vector<CheckResult> checks;
  auto guarded = [&](const std::string& name, const std::function<CheckResult()>& fn) {
    try {
      checks.push_back(fn());
    } catch (const std::exception& e) {
      checks.push_back({name, false, 0.0, 0.0, std::string("exception: ") + e.what()});
    }
  };
  guarded("kraus_completeness", check_completeness);
  guarded("weyl_group_law", check_weyl_group_law);
  guarded("bell_orthonormality", check_bell_orthonormality);
  guarded("threshold_meets_classical", check_thresholds);
  guarded("noiseless_perfect", check_noiseless);
  guarded("depolarizing_bob_d3", check_depolarizing_example);
  if (level == "full") {
    guarded("triple_equivalence", check_triple_equivalence);
    guarded("oracle_mc_agreement", [&] { return check_mc_agreement(workers); });
    guarded("scatter_envelope", [&] { return check_envelope(workers); });
    guarded("phase_optimum_piecewise", check_phase_optimum);
  }
  return checks;
}

void write_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks) {
    nlohmann::json row = {{"check", c.name}, {"pass", c.passed}, {"value", c.value},
                          {"tolerance", c.tolerance}};
    if (!c.detail.empty()) row["detail"] = c.detail;
    out << row.dump() << '\n';
  }
}

}  // namespace qtele
