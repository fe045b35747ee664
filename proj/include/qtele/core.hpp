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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtele/tolerance.hpp"

namespace qtele {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a qudit dimension is outside the range an operation supports.
class DimensionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline constexpr int kMinDim = 2;
inline constexpr int kClosedFormMaxDim = 64;
inline constexpr int kOracleMaxDim = 10;

/// Dimension of a single qudit. Constructing a Dim validates 2 <= d <= max_dim.
class Dim {
 public:
  Dim(int d, int max_dim = kClosedFormMaxDim);  // NOLINT(google-explicit-constructor)
  constexpr int value() const { return d_; }
  constexpr operator int() const { return d_; }  // NOLINT(google-explicit-constructor)

 private:
  int d_;
};

/// Throws DimensionError when d exceeds `cap`; `what` names the caller.
void require_dim_at_most(int d, int cap, const char* what);

/// exp(2 pi i k / d) with k reduced modulo d first.
Complex root_of_unity(int d, long long k);

/// Non-negative remainder of k modulo d.
constexpr int mod(long long k, int d) {
  const long long r = k % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// Single-qudit pure state sum_j alpha_j |j>.
class PureState {
 public:
  explicit PureState(Vector amplitudes, const Tolerances& tol = kTolerances);
  static PureState normalized(Vector amplitudes);
  static PureState basis_state(Dim d, int j);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](int j) const { return amplitudes_[j]; }

 private:
  Vector amplitudes_;
};

/// Schmidt coefficients gamma_k of the channel state sum_k gamma_k |kk>.
class SchmidtChannel {
 public:
  explicit SchmidtChannel(Vector gamma, const Tolerances& tol = kTolerances);
  static SchmidtChannel normalized(Vector gamma);
  static SchmidtChannel maximally_entangled(Dim d);

  int dim() const { return static_cast<int>(gamma_.size()); }
  const Vector& gamma() const { return gamma_; }
  Complex operator[](int k) const { return gamma_[k]; }

  /// Channel state as a length d^2 vector, index i_A * d + i_B.
  Vector state_vector() const;

 private:
  Vector gamma_;
};

/// Coefficients beta_{km} of the joint measurement |Phi_mn> = sum_k beta_{km} |k, k+n>.
/// Columns must be orthonormal.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(Matrix beta, const Tolerances& tol = kTolerances);
  MeasurementBasis(Matrix beta, std::vector<double> phases, const Tolerances& tol = kTolerances);

  int dim() const { return static_cast<int>(beta_.rows()); }
  const Matrix& beta() const { return beta_; }
  Complex operator()(int k, int m) const { return beta_(k, m); }
  /// Phases phi_1..phi_{d-1} when the basis was built by phased_basis().
  const std::optional<std::vector<double>>& phases() const { return phases_; }

 private:
  Matrix beta_;
  std::optional<std::vector<double>> phases_;
};

/// Index (m, n) of a Weyl operator, both reduced modulo d.
struct WeylIndex {
  WeylIndex(int m_, int n_, Dim d) : m(mod(m_, d)), n(mod(n_, d)) {}
  int m;
  int n;
};

/// Density matrix on 1..3 qudit registers. Register 0 is the most significant
/// digit of the basis index: for (I, A, B) the index is i_I d^2 + i_A d + i_B.
class DensityMatrix {
 public:
  enum class Normalization { kUnitTrace, kUnnormalized };

  DensityMatrix(Matrix matrix, int d, int registers,
                Normalization normalization = Normalization::kUnitTrace,
                const Tolerances& tol = kTolerances);
  static DensityMatrix from_pure(const Vector& psi, int d, int registers);

  const Matrix& matrix() const { return matrix_; }
  int qudit_dim() const { return d_; }
  int registers() const { return registers_; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  bool unit_trace() const { return normalization_ == Normalization::kUnitTrace; }

  double trace() const { return matrix_.trace().real(); }
  double min_eigenvalue() const;
  bool is_positive(const Tolerances& tol = kTolerances) const;
  Complex operator()(int r, int c) const { return matrix_(r, c); }

 private:
  DensityMatrix(int d, int registers);

  Matrix matrix_;
  int d_;
  int registers_;
  Normalization normalization_;
};

/// U_mn = sum_j w^{jm} |j><j+n|.
Matrix weyl_operator(Dim d, WeylIndex idx);

/// |Phi_mn> as a length d^2 vector (index i_I d + i_A).
Vector bell_state(Dim d, const MeasurementBasis& basis, WeylIndex idx);

/// beta_{km} = w^{km} / sqrt(d).
MeasurementBasis max_entangled_basis(Dim d);

/// beta_{jm} = e^{i phi_j} w^{jm} / sqrt(d) with phi_0 = 0; `phases` holds phi_1..phi_{d-1}.
MeasurementBasis phased_basis(Dim d, std::span<const double> phases);

/// Reduced state on the registers listed in `keep` (any order, no repeats).
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

/// Von Neumann entropy of the Schmidt spectrum, normalized to log d.
double entanglement_entropy(const SchmidtChannel& gamma);

/// Tensor product of two matrices.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qtele
