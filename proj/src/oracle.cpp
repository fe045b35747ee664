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

#include "qtele/oracle.hpp"

namespace qtele {

DensityMatrix assemble_initial(const PureState& phi, const SchmidtChannel& gamma) {
  const int d = phi.dim();
  if (gamma.dim() != d) {
    throw std::invalid_argument("assemble_initial: input state and channel dimensions differ");
  }
  require_dim_at_most(d, kOracleMaxDim, "teleport oracle");
  const Vector channel = gamma.state_vector();
  Vector full(static_cast<Eigen::Index>(d) * d * d);
  for (int i = 0; i < d; ++i) full.segment(static_cast<Eigen::Index>(i) * d * d, d * d) = phi[i] * channel;
  return DensityMatrix::from_pure(full, d, 3);
}

DensityMatrix apply_scenario(DensityMatrix rho, const ScenarioSpec& scenario,
                             std::array<int, 3> order) {
  if (rho.registers() != 3) throw std::invalid_argument("apply_scenario: expected 3 registers");
  scenario.validate();
  const int d = rho.qudit_dim();
  for (int reg : order) {
    const NoiseSpec& spec = scenario.at(static_cast<Register>(reg));
    if (spec.kind == NoiseKind::kNone) continue;
    rho = apply_channel(rho, kraus_operators(spec, d), reg);
  }
  return rho;
}

ProtocolResult run_protocol(const DensityMatrix& rho, const MeasurementBasis& basis,
                            const PureState& phi_ref) {
  const int d = rho.qudit_dim();
  if (rho.registers() != 3 || basis.dim() != d || phi_ref.dim() != d) {
    throw std::invalid_argument("run_protocol: inconsistent dimensions");
  }
  const Matrix& full = rho.matrix();
  const Vector& phi = phi_ref.amplitudes();
  const int d2 = d * d;
  const Eigen::Index big = full.rows();

  ProtocolResult result;
  result.outcomes.reserve(static_cast<std::size_t>(d2));
  Matrix bob(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      // <Phi_mn|_IA rho |Phi_mn>_IA; Phi_mn has support on (k, k+n).
      bob.setZero();
      for (int k = 0; k < d; ++k) {
        const Complex bk = std::conj(basis(k, m));
        const int row = (k * d + mod(k + n, d)) * d;
        for (int kp = 0; kp < d; ++kp) {
          const Complex w = bk * basis(kp, m);
          const int col = (kp * d + mod(kp + n, d)) * d;
          // Column-major: column col+b of the block starts at data[(col+b)*N + row].
          for (int b = 0; b < d; ++b) {
            const Complex* src = full.data() + static_cast<Eigen::Index>(col + b) * big + row;
            Complex* dst = bob.data() + static_cast<Eigen::Index>(b) * d;
            for (int a = 0; a < d; ++a) dst[a] += w * src[a];
          }
        }
      }
      // rho_mn = U_mn bob U_mn^dagger with U_mn |j+n> = w^{jm} |j>.
      Matrix corrected(d, d);
      for (int i = 0; i < d; ++i) {
        const Complex wi = root_of_unity(d, static_cast<long long>(i) * m);
        for (int j = 0; j < d; ++j) {
          corrected(i, j) = wi * std::conj(root_of_unity(d, static_cast<long long>(j) * m)) *
                            bob(mod(i + n, d), mod(j + n, d));
        }
      }
      ProtocolOutcome outcome;
      outcome.m = m;
      outcome.n = n;
      outcome.probability = corrected.trace().real();
      outcome.overlap = phi.dot(corrected * phi).real();
      outcome.conditional_fidelity =
          outcome.probability > 0.0 ? outcome.overlap / outcome.probability : 0.0;
      result.fidelity += outcome.overlap;
      result.outcomes.push_back(outcome);
    }
  }
  return result;
}

namespace {

// K acting on one register of a d^3 vector ordered (I, A, B).
Vector apply_on_register(const Vector& v, const Matrix& k, int reg, int d) {
  const int stride = reg == 0 ? d * d : (reg == 1 ? d : 1);
  const int outer = reg == 0 ? 1 : (reg == 1 ? d : d * d);
  Vector out = Vector::Zero(v.size());
  for (int hi = 0; hi < outer; ++hi) {
    for (int lo = 0; lo < stride; ++lo) {
      const Eigen::Index base = static_cast<Eigen::Index>(hi) * d * stride + lo;
      for (int r = 0; r < d; ++r) {
        Complex acc{0.0, 0.0};
        for (int c = 0; c < d; ++c) acc += k(r, c) * v[base + static_cast<Eigen::Index>(c) * stride];
        out[base + static_cast<Eigen::Index>(r) * stride] = acc;
      }
    }
  }
  return out;
}

std::size_t branch_count(const ScenarioSpec& scenario, int d) {
  std::size_t total = 1;
  for (int reg = 0; reg < 3; ++reg) {
    total *= kraus_operators(scenario.at(static_cast<Register>(reg)), d).operators().size();
  }
  return total;
}

}  // namespace

double fidelity_for_input_branches(const PureState& phi, const SchmidtChannel& gamma,
                                   const MeasurementBasis& basis, const ScenarioSpec& scenario) {
  const int d = phi.dim();
  if (gamma.dim() != d || basis.dim() != d) {
    throw std::invalid_argument("fidelity_for_input_branches: inconsistent dimensions");
  }
  require_dim_at_most(d, kOracleMaxDim, "teleport oracle");
  scenario.validate();
  const Vector channel = gamma.state_vector();
  Vector psi(static_cast<Eigen::Index>(d) * d * d);
  for (int i = 0; i < d; ++i) psi.segment(static_cast<Eigen::Index>(i) * d * d, d * d) = phi[i] * channel;

  std::vector<Vector> branches{psi};
  for (int reg = 0; reg < 3; ++reg) {
    const NoiseSpec& spec = scenario.at(static_cast<Register>(reg));
    if (spec.kind == NoiseKind::kNone) continue;
    const KrausChannel ops = kraus_operators(spec, d);
    std::vector<Vector> next;
    next.reserve(branches.size() * ops.operators().size());
    for (const Vector& v : branches) {
      for (const Matrix& k : ops.operators()) next.push_back(apply_on_register(v, k, reg, d));
    }
    branches = std::move(next);
  }

  const Vector& target = phi.amplitudes();
  double fidelity = 0.0;
  Vector u(d);
  for (const Vector& v : branches) {
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        // u = (<Phi_mn| (x) 1) v, then U_mn u; only the overlap with phi is kept.
        u.setZero();
        for (int k = 0; k < d; ++k) {
          const Complex bk = std::conj(basis(k, m));
          const Eigen::Index row = static_cast<Eigen::Index>(k * d + mod(k + n, d)) * d;
          for (int j = 0; j < d; ++j) u[j] += bk * v[row + j];
        }
        Complex overlap{0.0, 0.0};
        for (int i = 0; i < d; ++i) {
          overlap += std::conj(target[i]) * root_of_unity(d, static_cast<long long>(i) * m) * u[mod(i + n, d)];
        }
        fidelity += std::norm(overlap);
      }
    }
  }
  return fidelity;
}

double fidelity_for_input(const PureState& phi, const SchmidtChannel& gamma,
                          const MeasurementBasis& basis, const ScenarioSpec& scenario) {
  const int d = phi.dim();
  if (branch_count(scenario, d) <= static_cast<std::size_t>(d) * d) {
    return fidelity_for_input_branches(phi, gamma, basis, scenario);
  }
  const DensityMatrix noisy = apply_scenario(assemble_initial(phi, gamma), scenario);
  return run_protocol(noisy, basis, phi).fidelity;
}

}  // namespace qtele
