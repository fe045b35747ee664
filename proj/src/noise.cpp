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

#include "qtele/noise.hpp"


#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qtele {

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kDitFlip: return "F";
    case NoiseKind::kPhaseFlip: return "P";
    case NoiseKind::kDitPhaseFlip: return "FP";
    case NoiseKind::kDepolarizing: return "D";
    case NoiseKind::kAmplitudeDamping: return "AD";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view tag) {
  std::string upper(tag);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "NONE" || upper == "0" || upper == "-") return NoiseKind::kNone;
  if (upper == "F") return NoiseKind::kDitFlip;
  if (upper == "P") return NoiseKind::kPhaseFlip;
  if (upper == "FP") return NoiseKind::kDitPhaseFlip;
  if (upper == "D") return NoiseKind::kDepolarizing;
  if (upper == "AD") return NoiseKind::kAmplitudeDamping;
  throw std::invalid_argument("unknown noise kind '" + std::string(tag) + "'");
}

bool is_weyl_kind(NoiseKind kind) { return kind != NoiseKind::kAmplitudeDamping; }

void NoiseSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("noise fraction " + std::to_string(p) + " outside [0, 1]");
  }
}

std::string NoiseSpec::to_string() const {
  if (kind == NoiseKind::kNone) return "none";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, p);  // shortest round-trip form
  return std::string(qtele::to_string(kind)) + ':' + std::string(buf, res.ptr);
}

const NoiseSpec& ScenarioSpec::at(Register r) const {
  switch (r) {
    case Register::kInput: return input;
    case Register::kAlice: return alice;
    case Register::kBob: return bob;
  }
  throw std::invalid_argument("bad register");
}

NoiseSpec& ScenarioSpec::at(Register r) {
  return const_cast<NoiseSpec&>(static_cast<const ScenarioSpec&>(*this).at(r));
}

void ScenarioSpec::validate() const {
  input.validate();
  alice.validate();
  bob.validate();
}

bool ScenarioSpec::all_weyl() const {
  return is_weyl_kind(input.kind) && is_weyl_kind(alice.kind) && is_weyl_kind(bob.kind);
}

std::string ScenarioSpec::to_string() const {
  return "(" + input.to_string() + "," + alice.to_string() + "," + bob.to_string() + ")";
}

double WeylCoefficients::total_weight(int d) const {
  const double dm1 = d - 1.0;
  return a0 * a0 + dm1 * af * af + dm1 * ap * ap + dm1 * dm1 * ac * ac;
}

KrausChannel::KrausChannel(std::vector<Matrix> operators, int d, const Tolerances& tol)
    : operators_(std::move(operators)), d_(d) {
  for (const Matrix& e : operators_) {
    if (e.rows() != d || e.cols() != d) {
      throw std::invalid_argument("KrausChannel: operator is not d x d");
    }
  }
  if (completeness_error() > tol.construction) {
    throw std::invalid_argument("KrausChannel: completeness relation violated");
  }
}

double KrausChannel::completeness_error() const {
  Matrix sum = Matrix::Zero(d_, d_);
  for (const Matrix& e : operators_) sum += e.adjoint() * e;
  return (sum - Matrix::Identity(d_, d_)).cwiseAbs().maxCoeff();
}

Superoperator::Superoperator(const KrausChannel& channel) : Superoperator(channel.dim()) {
  const int d = d_;
  for (const Matrix& e : channel.operators()) {
    for (int r = 0; r < d; ++r) {
      for (int u = 0; u < d; ++u) {
        const Complex eru = e(r, u);
        if (eru == 0.0) continue;
        for (int s = 0; s < d; ++s) {
          for (int v = 0; v < d; ++v) (*this)(r, s, u, v) += eru * std::conj(e(s, v));
        }
      }
    }
  }
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Superoperator Superoperator::operator*(double scale) const {
  Superoperator out(*this);
  for (Complex& c : out.data_) c *= scale;
  return out;
}

WeylCoefficients weyl_coefficients(NoiseKind kind, double p, Dim dim) {
  const int d = dim;
  NoiseSpec{kind, p}.validate();
  const double dm1 = d - 1.0;
  const double d2 = static_cast<double>(d) * d;
  switch (kind) {
    case NoiseKind::kNone: return {1.0, 0.0, 0.0, 0.0};
    case NoiseKind::kDitFlip: return {std::sqrt(1.0 - p), std::sqrt(p / dm1), 0.0, 0.0};
    case NoiseKind::kPhaseFlip: return {std::sqrt(1.0 - p), 0.0, std::sqrt(p / dm1), 0.0};
    case NoiseKind::kDitPhaseFlip: return {std::sqrt(1.0 - p), 0.0, 0.0, std::sqrt(p) / dm1};
    case NoiseKind::kDepolarizing: {
      const double off = std::sqrt(p) / d;
      return {std::sqrt(1.0 - (d2 - 1.0) / d2 * p), off, off, off};
    }
    case NoiseKind::kAmplitudeDamping: break;
  }
  throw std::invalid_argument("amplitude damping has no Weyl-coefficient form");
}

RealMatrix coefficient_matrix(const NoiseSpec& spec, Dim dim) {
  const int d = dim;
  const WeylCoefficients c = weyl_coefficients(spec.kind, spec.p, d);
  RealMatrix a2(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      double a;
      if (m == 0 && n == 0) a = c.a0;
      else if (m == 0) a = c.af;
      else if (n == 0) a = c.ap;
      else a = c.ac;
      a2(m, n) = a * a;
    }
  }
  return a2;
}

KrausChannel kraus_operators(const NoiseSpec& spec, Dim dim) {
  const int d = dim;
  spec.validate();
  std::vector<Matrix> ops;
  if (spec.kind == NoiseKind::kAmplitudeDamping) {
    Matrix e0 = Matrix::Zero(d, d);
    e0(0, 0) = 1.0;
    const double keep = std::sqrt(1.0 - spec.p);
    for (int j = 1; j < d; ++j) e0(j, j) = keep;
    ops.push_back(std::move(e0));
    const double jump = std::sqrt(spec.p);
    for (int j = 1; j < d; ++j) {
      Matrix ej = Matrix::Zero(d, d);
      ej(0, j) = jump;
      ops.push_back(std::move(ej));
    }
    return KrausChannel(std::move(ops), d);
  }
  const RealMatrix a2 = coefficient_matrix(spec, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (a2(m, n) == 0.0) continue;
      ops.push_back(std::sqrt(a2(m, n)) * weyl_operator(d, WeylIndex(m, n, d)));
    }
  }
  return KrausChannel(std::move(ops), d);
}

namespace {

struct Layout {
  int d;
  int size;
  int stride;  // stride of the target register
};

Layout layout_for(const DensityMatrix& rho, int target) {
  if (target < 0 || target >= rho.registers()) {
    throw std::invalid_argument("register index " + std::to_string(target) + " out of range");
  }
  const int d = rho.qudit_dim();
  int stride = 1;
  for (int r = target + 1; r < rho.registers(); ++r) stride *= d;
  return {d, rho.size(), stride};
}

// Nonzero entries of one Kraus operator, row by row.
struct SparseRow {
  std::vector<std::pair<int, Complex>> entries;
};

std::vector<SparseRow> sparse_rows(const Matrix& e) {
  std::vector<SparseRow> rows(e.rows());
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      if (e(r, c) != 0.0) rows[r].entries.emplace_back(static_cast<int>(c), e(r, c));
    }
  }
  return rows;
}

}  // namespace

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel, int target) {
  const Layout lay = layout_for(rho, target);
  if (channel.dim() != lay.d) throw std::invalid_argument("apply_channel: dimension mismatch");
  const int d = lay.d;
  const int n = lay.size;
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(n, n);
  Matrix left(n, n);

  for (const Matrix& e : channel.operators()) {
    const std::vector<SparseRow> rows = sparse_rows(e);
    // left = E_t rho
    for (int x = 0; x < n; ++x) {
      const int digit = (x / lay.stride) % d;
      const int base = x - digit * lay.stride;
      for (int y = 0; y < n; ++y) {
        Complex acc = 0.0;
        for (const auto& [c, val] : rows[digit].entries) acc += val * in(base + c * lay.stride, y);
        left(x, y) = acc;
      }
    }
    // out += left E_t^dagger
    for (int y = 0; y < n; ++y) {
      const int digit = (y / lay.stride) % d;
      const int base = y - digit * lay.stride;
      for (const auto& [c, val] : rows[digit].entries) {
        const Complex cv = std::conj(val);
        const int col = base + c * lay.stride;
        for (int x = 0; x < n; ++x) out(x, y) += left(x, col) * cv;
      }
    }
  }
  return DensityMatrix(std::move(out), rho.qudit_dim(), rho.registers(),
                       rho.unit_trace() ? DensityMatrix::Normalization::kUnitTrace
                                        : DensityMatrix::Normalization::kUnnormalized);
}

DensityMatrix apply_weyl_coefficients(const DensityMatrix& rho, const RealMatrix& coefficients,
                                      int target) {
  const Layout lay = layout_for(rho, target);
  const int d = lay.d;
  if (coefficients.rows() != d || coefficients.cols() != d) {
    throw std::invalid_argument("apply_weyl_coefficients: coefficient matrix is not d x d");
  }
  const int n = lay.size;
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const double w = coefficients(k, l);
      if (w == 0.0) continue;
      for (int x = 0; x < n; ++x) {
        const int xt = (x / lay.stride) % d;
        const int xs = x + (mod(xt + l, d) - xt) * lay.stride;
        for (int y = 0; y < n; ++y) {
          const int yt = (y / lay.stride) % d;
          const int ys = y + (mod(yt + l, d) - yt) * lay.stride;
          out(x, y) += w * root_of_unity(d, static_cast<long long>(k) * (xt - yt)) * in(xs, ys);
        }
      }
    }
  }
  return DensityMatrix(std::move(out), rho.qudit_dim(), rho.registers(),
                       rho.unit_trace() ? DensityMatrix::Normalization::kUnitTrace
                                        : DensityMatrix::Normalization::kUnnormalized);
}

}  // namespace qtele
