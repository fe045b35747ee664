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

// Test-only reference implementations, written against full d^3 matrices and
// deliberately sharing no code path with the library's fidelity routes.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qtele/core.hpp"
#include "qtele/noise.hpp"
#include "qtele/random.hpp"

namespace qtele::testing {

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

/// op acting on register `target` of three d-level registers.
inline Matrix embed(const Matrix& op, int target, int d) {
  Matrix out = Matrix::Ones(1, 1);
  for (int r = 0; r < 3; ++r) out = kron(out, r == target ? op : identity(d));
  return out;
}

inline Matrix apply_kraus_full(const Matrix& rho, const std::vector<Matrix>& ops, int target, int d) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& e : ops) {
    const Matrix big = embed(e, target, d);
    out += big * rho * big.adjoint();
  }
  return out;
}

/// Overall channel X -> sum_mn U_mn Tr_IA[(Phi_mn^dag (x) 1) N(X (x) psi psi^dag) (Phi_mn (x) 1)] U_mn^dag.
inline Matrix teleport_map(const Matrix& x, const Matrix& beta, const Vector& gamma,
                           const std::array<std::vector<Matrix>, 3>& kraus) {
  const int d = static_cast<int>(x.rows());
  const double dd = d;
  const std::complex<double> w = std::polar(1.0, 2.0 * kPi / dd);
  Vector psi = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) psi[k * d + k] = gamma[k];
  Matrix rho = kron(x, psi * psi.adjoint());
  for (int r = 0; r < 3; ++r) rho = apply_kraus_full(rho, kraus[r], r, d);

  Matrix out = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      Vector phi = Vector::Zero(d * d);
      for (int k = 0; k < d; ++k) phi[k * d + (k + n) % d] += beta(k, m);
      const Matrix v = kron(phi.adjoint(), identity(d));  // d x d^3
      Matrix u = Matrix::Zero(d, d);
      for (int j = 0; j < d; ++j) u(j, (j + n) % d) = std::pow(w, j * m);
      out += u * (v * rho * v.adjoint()) * u.adjoint();
    }
  }
  return out;
}

/// Haar-averaged fidelity from the entanglement fidelity of the overall map:
/// F = (d F_e + 1) / (d + 1) with F_e = d^-2 sum_ij <i| L(|i><j|) |j>.
inline double average_fidelity(const Matrix& beta, const Vector& gamma,
                               const std::array<std::vector<Matrix>, 3>& kraus) {
  const int d = static_cast<int>(beta.rows());
  std::complex<double> fe = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      fe += teleport_map(unit, beta, gamma, kraus)(i, j);
    }
  }
  fe /= static_cast<double>(d * d);
  return (d * fe.real() + 1.0) / (d + 1.0);
}

inline std::array<std::vector<Matrix>, 3> kraus_triple(const ScenarioSpec& s, int d) {
  return {kraus_operators(s.input, d).operators(), kraus_operators(s.alice, d).operators(),
          kraus_operators(s.bob, d).operators()};
}

inline double reference_fidelity(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                                 const ScenarioSpec& s) {
  return average_fidelity(basis.beta(), gamma.gamma(), kraus_triple(s, basis.dim()));
}

// Generators for property tests.

inline Matrix random_unitary(int d, SampleRng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

inline Vector random_unit_vector(int d, SampleRng& rng, bool complex_entries = true) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = complex_entries ? rng.complex_normal() : Complex(std::abs(rng.normal()), 0.0);
  return v / v.norm();
}

inline std::vector<double> random_phases(int d, SampleRng& rng) {
  std::vector<double> phases(d - 1);
  for (double& phi : phases) phi = 2.0 * kPi * rng.uniform();
  return phases;
}

inline NoiseKind random_weyl_kind(SampleRng& rng, bool allow_none = true) {
  static constexpr std::array<NoiseKind, 5> kinds{NoiseKind::kDitFlip, NoiseKind::kPhaseFlip,
                                                  NoiseKind::kDitPhaseFlip,
                                                  NoiseKind::kDepolarizing, NoiseKind::kNone};
  const std::size_t count = allow_none ? 5 : 4;
  return kinds[static_cast<std::size_t>(rng.uniform() * count)];
}

inline ScenarioSpec random_weyl_scenario(SampleRng& rng) {
  ScenarioSpec s;
  for (Register r : {Register::kInput, Register::kAlice, Register::kBob}) {
    s.at(r) = {random_weyl_kind(rng), rng.uniform()};
  }
  return s;
}

inline ScenarioSpec random_any_scenario(SampleRng& rng) {
  ScenarioSpec s;
  for (Register r : {Register::kInput, Register::kAlice, Register::kBob}) {
    const double u = rng.uniform();
    s.at(r) = {u < 0.25 ? NoiseKind::kAmplitudeDamping : random_weyl_kind(rng), rng.uniform()};
  }
  return s;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qtele::testing
