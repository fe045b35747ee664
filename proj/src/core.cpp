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

#include "qtele/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qtele {

Dim::Dim(int d, int max_dim) : d_(d) {
  if (d < kMinDim || d > max_dim) {
    throw DimensionError("qudit dimension " + std::to_string(d) + " outside [" +
                         std::to_string(kMinDim) + ", " + std::to_string(max_dim) + "]");
  }
}

void require_dim_at_most(int d, int cap, const char* what) {
  if (d > cap) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(d) +
                         " exceeds cap " + std::to_string(cap));
  }
}

Complex root_of_unity(int d, long long k) {
  const double angle = 2.0 * kPi * static_cast<double>(mod(k, d)) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

namespace {

void check_normalized(const Vector& v, double tol, const char* what) {
  if (v.size() < kMinDim) {
    throw DimensionError(std::string(what) + ": need at least 2 amplitudes");
  }
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    throw std::invalid_argument(std::string(what) + ": squared norm " + std::to_string(norm2) +
                                " is not 1");
  }
}

Vector normalize(Vector v, const char* what) {
  const double norm = v.norm();
  if (norm == 0.0) {
    throw std::invalid_argument(std::string(what) + ": zero vector");
  }
  return v / norm;
}

}  // namespace

PureState::PureState(Vector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  check_normalized(amplitudes_, tol.construction, "PureState");
}

PureState PureState::normalized(Vector amplitudes) {
  return PureState(normalize(std::move(amplitudes), "PureState"));
}

PureState PureState::basis_state(Dim dim, int j) {
  const int d = dim;
  if (j < 0 || j >= d) throw std::out_of_range("basis_state: index outside [0, d)");
  Vector v = Vector::Zero(d);
  v[j] = 1.0;
  return PureState(std::move(v));
}

SchmidtChannel::SchmidtChannel(Vector gamma, const Tolerances& tol) : gamma_(std::move(gamma)) {
  check_normalized(gamma_, tol.construction, "SchmidtChannel");
}

SchmidtChannel SchmidtChannel::normalized(Vector gamma) {
  return SchmidtChannel(normalize(std::move(gamma), "SchmidtChannel"));
}

SchmidtChannel SchmidtChannel::maximally_entangled(Dim dim) {
  const int d = dim;
  return SchmidtChannel(Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)))));
}

Vector SchmidtChannel::state_vector() const {
  const int d = dim();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) psi[k * d + k] = gamma_[k];
  return psi;
}

MeasurementBasis::MeasurementBasis(Matrix beta, const Tolerances& tol) : beta_(std::move(beta)) {
  if (beta_.rows() != beta_.cols() || beta_.rows() < kMinDim) {
    throw std::invalid_argument("MeasurementBasis: beta must be a square d x d matrix, d >= 2");
  }
  const Matrix gram = beta_.adjoint() * beta_;
  const double err = (gram - Matrix::Identity(beta_.rows(), beta_.cols())).cwiseAbs().maxCoeff();
  if (err > tol.construction) {
    throw std::invalid_argument("MeasurementBasis: columns are not orthonormal (max deviation " +
                                std::to_string(err) + ")");
  }
}

MeasurementBasis::MeasurementBasis(Matrix beta, std::vector<double> phases, const Tolerances& tol)
    : MeasurementBasis(std::move(beta), tol) {
  if (static_cast<Eigen::Index>(phases.size()) != beta_.rows() - 1) {
    throw std::invalid_argument("MeasurementBasis: expected d-1 phases");
  }
  phases_ = std::move(phases);
}

DensityMatrix::DensityMatrix(Matrix matrix, int d, int registers, Normalization normalization,
                             const Tolerances& tol)
    : matrix_(std::move(matrix)), d_(d), registers_(registers), normalization_(normalization) {
  if (registers < 1 || registers > 3) {
    throw std::invalid_argument("DensityMatrix: register count must be 1, 2 or 3");
  }
  long long expected = 1;
  for (int r = 0; r < registers; ++r) expected *= d;
  if (matrix_.rows() != expected || matrix_.cols() != expected) {
    throw std::invalid_argument("DensityMatrix: matrix size does not match d^registers");
  }
  double herm = 0.0;
  const Eigen::Index n = matrix_.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r <= c; ++r) {
      herm = std::max(herm, std::abs(matrix_(r, c) - std::conj(matrix_(c, r))));
    }
  }
  if (herm > tol.derived) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) +
                                ")");
  }
  if (normalization_ == Normalization::kUnitTrace &&
      std::abs(matrix_.trace().real() - 1.0) > tol.derived) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const Vector& psi, int d, int registers) {
  // psi_i conj(psi_j) and psi_j conj(psi_i) are exact conjugates in floating
  // point, so the Hermiticity scan is skipped.
  DensityMatrix rho(d, registers);
  const Eigen::Index n = psi.size();
  if (rho.size() != n) throw std::invalid_argument("DensityMatrix: vector size does not match d^registers");
  rho.matrix_.resize(n, n);
  rho.matrix_.noalias() = psi * psi.adjoint();
  if (std::abs(rho.matrix_.trace().real() - 1.0) > kTolerances.derived) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  return rho;
}

DensityMatrix::DensityMatrix(int d, int registers)
    : d_(d), registers_(registers), normalization_(Normalization::kUnitTrace) {
  if (registers < 1 || registers > 3) {
    throw std::invalid_argument("DensityMatrix: register count must be 1, 2 or 3");
  }
  long long expected = 1;
  for (int r = 0; r < registers; ++r) expected *= d;
  matrix_.resize(expected, expected);
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive(const Tolerances& tol) const {
  return min_eigenvalue() >= -tol.eigenvalue;
}

Matrix weyl_operator(Dim dim, WeylIndex idx) {
  const int d = dim;
  Matrix u = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    u(j, mod(j + idx.n, d)) = root_of_unity(d, static_cast<long long>(j) * idx.m);
  }
  return u;
}

Vector bell_state(Dim dim, const MeasurementBasis& basis, WeylIndex idx) {
  const int d = dim;
  if (basis.dim() != d) throw std::invalid_argument("bell_state: basis dimension mismatch");
  Vector phi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) phi[k * d + mod(k + idx.n, d)] = basis(k, idx.m);
  return phi;
}

MeasurementBasis max_entangled_basis(Dim dim) {
  const int d = dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix beta(d, d);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) beta(k, m) = scale * root_of_unity(d, static_cast<long long>(k) * m);
  }
  return MeasurementBasis(std::move(beta));
}

MeasurementBasis phased_basis(Dim dim, std::span<const double> phases) {
  const int d = dim;
  if (static_cast<int>(phases.size()) != d - 1) {
    throw std::invalid_argument("phased_basis: expected d-1 phases");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix beta(d, d);
  for (int j = 0; j < d; ++j) {
    const double phi = j == 0 ? 0.0 : phases[j - 1];
    const Complex row_phase = std::polar(1.0, phi);
    for (int m = 0; m < d; ++m) {
      beta(j, m) = scale * row_phase * root_of_unity(d, static_cast<long long>(j) * m);
    }
  }
  return MeasurementBasis(std::move(beta), std::vector<double>(phases.begin(), phases.end()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int r = rho.registers();
  const int d = rho.qudit_dim();
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || std::adjacent_find(keep.begin(), keep.end()) != keep.end() ||
      keep.front() < 0 || keep.back() >= r) {
    throw std::invalid_argument("partial_trace: invalid register subset");
  }
  std::vector<int> traced;
  for (int reg = 0; reg < r; ++reg) {
    if (!std::binary_search(keep.begin(), keep.end(), reg)) traced.push_back(reg);
  }

  // Stride of register `reg` in the full index.
  auto stride = [&](int reg) {
    int s = 1;
    for (int k = reg + 1; k < r; ++k) s *= d;
    return s;
  };
  auto pow_d = [&](std::size_t n) {
    int p = 1;
    for (std::size_t k = 0; k < n; ++k) p *= d;
    return p;
  };
  const int kept_size = pow_d(keep.size());
  const int traced_size = pow_d(traced.size());

  // Full-index offsets for every kept / traced digit assignment.
  auto offsets = [&](const std::vector<int>& regs, int count) {
    std::vector<int> out(count, 0);
    for (int idx = 0; idx < count; ++idx) {
      int rem = idx;
      int off = 0;
      for (auto it = regs.rbegin(); it != regs.rend(); ++it) {
        off += (rem % d) * stride(*it);
        rem /= d;
      }
      out[idx] = off;
    }
    return out;
  };
  const std::vector<int> kept_off = offsets(keep, kept_size);
  const std::vector<int> traced_off = offsets(traced, traced_size);

  Matrix reduced = Matrix::Zero(kept_size, kept_size);
  for (int a = 0; a < kept_size; ++a) {
    for (int b = 0; b < kept_size; ++b) {
      Complex acc = 0.0;
      for (int t = 0; t < traced_size; ++t) {
        acc += rho(kept_off[a] + traced_off[t], kept_off[b] + traced_off[t]);
      }
      reduced(a, b) = acc;
    }
  }
  return DensityMatrix(std::move(reduced), d, static_cast<int>(keep.size()),
                       rho.unit_trace() ? DensityMatrix::Normalization::kUnitTrace
                                        : DensityMatrix::Normalization::kUnnormalized);
}

double entanglement_entropy(const SchmidtChannel& gamma) {
  const int d = gamma.dim();
  double h = 0.0;
  for (int k = 0; k < d; ++k) {
    const double w = std::norm(gamma[k]);
    if (w > 0.0) h -= w * std::log(w);
  }
  return h / std::log(static_cast<double>(d));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qtele
