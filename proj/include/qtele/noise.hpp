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
#include <string>
#include <string_view>
#include <vector>

#include "qtele/core.hpp"

namespace qtele {

enum class NoiseKind {
  kNone,
  kDitFlip,           // F
  kPhaseFlip,         // P (d-phase-flip)
  kDitPhaseFlip,      // FP
  kDepolarizing,      // D
  kAmplitudeDamping,  // AD
};

inline constexpr std::array<NoiseKind, 6> kAllNoiseKinds = {
    NoiseKind::kNone,         NoiseKind::kDitFlip,      NoiseKind::kPhaseFlip,
    NoiseKind::kDitPhaseFlip, NoiseKind::kDepolarizing, NoiseKind::kAmplitudeDamping};

/// Short tag: none, F, P, FP, D, AD.
std::string_view to_string(NoiseKind kind);
/// Inverse of to_string (case-insensitive); throws std::invalid_argument.
NoiseKind parse_noise_kind(std::string_view tag);
/// True for the kinds whose Kraus operators are scaled Weyl operators.
bool is_weyl_kind(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double p = 0.0;

  /// Throws std::invalid_argument unless 0 <= p <= 1.
  void validate() const;
  std::string to_string() const;
};

/// Registers of the protocol, in index order.
enum class Register : int { kInput = 0, kAlice = 1, kBob = 2 };

/// Noise on the input qudit I, Alice's channel qudit A and Bob's qudit B.
struct ScenarioSpec {
  NoiseSpec input;
  NoiseSpec alice;
  NoiseSpec bob;

  const NoiseSpec& at(Register r) const;
  NoiseSpec& at(Register r);
  void validate() const;
  bool all_weyl() const;
  std::string to_string() const;
};

/// Region coefficients (not squared) of a Weyl-kind Kraus expansion:
/// a0 on U_00, af on U_0n (n>0), ap on U_m0 (m>0), ac on U_mn (m,n>0).
struct WeylCoefficients {
  double a0 = 1.0;
  double af = 0.0;
  double ap = 0.0;
  double ac = 0.0;

  /// a0^2 + (d-1) af^2 + (d-1) ap^2 + (d-1)^2 ac^2.
  double total_weight(int d) const;
};

/// Kraus operators E_k with sum_k E_k^dagger E_k = 1.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> operators, int d, const Tolerances& tol = kTolerances);

  int dim() const { return d_; }
  const std::vector<Matrix>& operators() const { return operators_; }
  /// max |sum_k E_k^dagger E_k - 1|.
  double completeness_error() const;

 private:
  std::vector<Matrix> operators_;
  int d_;
};

/// Superoperator tensor S(r, s, u, v) = sum_k E_k(r, u) conj(E_k(s, v)),
/// so that rho' (r, s) = sum_{u v} S(r, s, u, v) rho(u, v).
class Superoperator {
 public:
  explicit Superoperator(int d) : d_(d), data_(static_cast<std::size_t>(d) * d * d * d) {}
  explicit Superoperator(const KrausChannel& channel);

  int dim() const { return d_; }
  Complex& operator()(int r, int s, int u, int v) { return data_[index(r, s, u, v)]; }
  Complex operator()(int r, int s, int u, int v) const { return data_[index(r, s, u, v)]; }

  Superoperator& operator+=(const Superoperator& other);
  Superoperator operator*(double scale) const;

 private:
  std::size_t index(int r, int s, int u, int v) const {
    return ((static_cast<std::size_t>(r) * d_ + s) * d_ + u) * d_ + v;
  }
  int d_;
  std::vector<Complex> data_;
};

/// Region coefficients for the Weyl kinds; AD is rejected.
WeylCoefficients weyl_coefficients(NoiseKind kind, double p, Dim d);

/// d x d matrix of squared coefficients a^2_{mn} multiplying U_mn; AD is rejected.
RealMatrix coefficient_matrix(const NoiseSpec& spec, Dim d);

/// Explicit Kraus operators. Weyl kinds are ordered (m, n) lexicographically and
/// zero-weight terms are dropped; AD is ordered E_0, E_1, ..., E_{d-1}.
KrausChannel kraus_operators(const NoiseSpec& spec, Dim d);

/// rho -> sum_k E_k rho E_k^dagger acting on register `target`.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel, int target);

/// Same map for a Weyl-kind channel, evaluated in coefficient form:
/// rho'_{xy} = sum_{kl} w^{k (x_t - y_t)} rho_{x + l e_t, y + l e_t} a^2_{kl}.
DensityMatrix apply_weyl_coefficients(const DensityMatrix& rho, const RealMatrix& coefficients,
                                      int target);

}  // namespace qtele
