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

#include "qtele/closed_form.hpp"

#include <cmath>
#include <string>

namespace qtele {

namespace {

void check_pair(const MeasurementBasis& basis, const SchmidtChannel& gamma) {
  if (basis.dim() != gamma.dim()) {
    throw std::invalid_argument("measurement basis and channel dimensions differ");
  }
}

// B(j, k, t) = sum_mu beta_jmu beta*_kmu w^{mu t}, stored as [(j d + k) d + t].
std::vector<Complex> basis_overlaps(const MeasurementBasis& basis) {
  const int d = basis.dim();
  std::vector<Complex> out(static_cast<std::size_t>(d) * d * d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      for (int t = 0; t < d; ++t) {
        Complex acc = 0.0;
        for (int mu = 0; mu < d; ++mu) {
          acc += basis(j, mu) * std::conj(basis(k, mu)) *
                 root_of_unity(d, static_cast<long long>(mu) * t);
        }
        out[(static_cast<std::size_t>(j) * d + k) * d + t] = acc;
      }
    }
  }
  return out;
}

}  // namespace

double classical_fidelity(Dim d) { return 2.0 / (d + 1.0); }

double quantum_contribution(const MeasurementBasis& basis, const SchmidtChannel& gamma) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  double sum = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      for (int j = 1; j < d; ++j) {
        for (int k = 0; k < j; ++k) {
          const Complex term = root_of_unity(d, static_cast<long long>(m) * (k - j)) *
                               basis(j, m) * std::conj(basis(k, m)) * gamma[mod(k + n, d)] *
                               std::conj(gamma[mod(j + n, d)]);
          sum += term.real();
        }
      }
    }
  }
  return 2.0 / (d * (d + 1.0)) * sum;
}

double tilde_f(const MeasurementBasis& basis, const SchmidtChannel& gamma) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  // The (nu, q) pair only enters through the shift nu + q.
  std::vector<int> shift_count(d, 0);
  for (int nu = 0; nu < d; ++nu) {
    for (int q = 1; q < d; ++q) ++shift_count[mod(nu + q, d)];
  }
  Complex sum = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      Complex measure = 0.0;
      for (int mu = 0; mu < d; ++mu) {
        measure += basis(j, mu) * std::conj(basis(k, mu)) *
                   root_of_unity(d, static_cast<long long>(mu) * (k - j));
      }
      Complex channel = 0.0;
      for (int s = 0; s < d; ++s) {
        channel += static_cast<double>(shift_count[s]) * gamma[mod(k + s, d)] *
                   std::conj(gamma[mod(j + s, d)]);
      }
      sum += measure * channel;
    }
  }
  return sum.real() / d;
}

FidelityBreakdown noiseless_fidelity(const MeasurementBasis& basis, const SchmidtChannel& gamma) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  double raw = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      for (int j = 1; j < d; ++j) {
        for (int k = 0; k < j; ++k) {
          raw += (root_of_unity(d, static_cast<long long>(m) * (k - j)) * basis(j, m) *
                  std::conj(basis(k, m)) * gamma[mod(k + n, d)] * std::conj(gamma[mod(j + n, d)]))
                     .real();
        }
      }
    }
  }
  FidelityBreakdown out;
  out.classical_part = classical_fidelity(d);
  out.total = out.classical_part * (1.0 + raw / d);
  out.quantum_part = quantum_contribution(basis, gamma);
  out.tilde_f = tilde_f(basis, gamma);
  return out;
}

double boundary_parameter_max(Dim dim, int mu) {
  const int d = dim;
  if (mu < 1 || mu > d - 1) {
    throw std::invalid_argument("boundary family index mu=" + std::to_string(mu) +
                                " outside [1, d-1]");
  }
  return mu == d - 1 ? 1.0 : 1.0 / std::sqrt(mu + 1.0);
}

SchmidtChannel boundary_state(Dim dim, int mu, double a) {
  const int d = dim;
  const double a_max = boundary_parameter_max(d, mu);
  if (!(a >= 0.0 && a <= a_max + kTolerances.construction)) {
    throw std::invalid_argument("boundary parameter a=" + std::to_string(a) + " out of range");
  }
  a = std::min(a, a_max);
  Vector gamma = Vector::Zero(d);
  gamma[0] = a;
  const double rest = std::sqrt(std::max(0.0, 1.0 - a * a) / mu);
  for (int k = 1; k <= mu; ++k) gamma[k] = rest;
  return SchmidtChannel(std::move(gamma));
}

SchmidtChannel rank_state(Dim dim, int nu) {
  const int d = dim;
  if (nu < 1 || nu > d - 1) {
    throw std::invalid_argument("rank nu=" + std::to_string(nu) + " outside [1, d-1]");
  }
  Vector gamma = Vector::Zero(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(nu));
  for (int k = 0; k < nu; ++k) gamma[k] = amp;
  return SchmidtChannel(std::move(gamma));
}

double single_qudit_fidelity(NoiseKind kind, double p, const MeasurementBasis& basis,
                             const SchmidtChannel& gamma) {
  check_pair(basis, gamma);
  NoiseSpec{kind, p}.validate();
  const int d = basis.dim();
  const double f_c = classical_fidelity(d);
  const double f_q = quantum_contribution(basis, gamma);
  switch (kind) {
    case NoiseKind::kNone:
      throw std::invalid_argument("single_qudit_fidelity: noise kind must not be none");
    case NoiseKind::kDitFlip:
    case NoiseKind::kDitPhaseFlip:
      return f_c * (1.0 - p / 2.0) + f_q * (1.0 - p);
    case NoiseKind::kPhaseFlip:
      return f_c + f_q * (1.0 - d * p / (d - 1.0));
    case NoiseKind::kDepolarizing:
      return f_c * (1.0 - (d - 1.0) * p / (2.0 * d)) + f_q * (1.0 - p);
    case NoiseKind::kAmplitudeDamping: {
      if (std::abs(f_q - (d - 1.0) / (d + 1.0)) > kTolerances.derived) {
        throw std::invalid_argument(
            "single_qudit_fidelity: amplitude damping closed form needs maximal entanglement; "
            "use fidelity_computational");
      }
      const double dd = d;
      return f_c * ((dd * dd - dd + 2.0) / (2.0 * dd) - (dd - 1.0) * (dd - 1.0) / (2.0 * dd) * p +
                    (dd - 1.0) / dd * std::sqrt(1.0 - p));
    }
  }
  return 0.0;
}

ThresholdReport threshold(NoiseKind kind, Dim dim) {
  const int d = dim;
  const double dd = d;
  ThresholdReport report{kind, d, 0.0};
  switch (kind) {
    case NoiseKind::kNone:
      throw std::invalid_argument("threshold: noise kind must not be none");
    case NoiseKind::kDitFlip:
    case NoiseKind::kPhaseFlip:
    case NoiseKind::kDitPhaseFlip:
      report.p_star = (dd - 1.0) / dd;
      break;
    case NoiseKind::kDepolarizing:
      report.p_star = dd / (dd + 1.0);
      break;
    case NoiseKind::kAmplitudeDamping: {
      const double root = std::sqrt(dd);
      report.p_star = (dd + 2.0 * root) / ((root + 1.0) * (root + 1.0));
      break;
    }
  }
  return report;
}

double phase_fidelity(Dim dim, double p, std::span<const double> phases) {
  const int d = dim;
  if (static_cast<int>(phases.size()) != d - 1) {
    throw std::invalid_argument("phase_fidelity: expected d-1 phases");
  }
  double single = 0.0;
  double pairs = 0.0;
  for (int k = 0; k < d - 1; ++k) {
    single += std::cos(phases[k]);
    for (int l = 0; l < k; ++l) pairs += std::cos(phases[l] - phases[k]);
  }
  const double dd = d;
  return 2.0 / (dd + 1.0) * (1.0 + (1.0 / dd) * (1.0 - p * dd / (dd - 1.0)) * (single + pairs));
}

double piecewise_phase_optimum(Dim dim, double p) {
  const int d = dim;
  const double dd = d;
  const double p_star = (dd - 1.0) / dd;
  return p <= p_star ? 1.0 - dd * p / (dd + 1.0) : (dd * p + dd - 1.0) / (dd * dd - 1.0);
}

double fidelity_weyl_raw(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                         const RealMatrix& a, const RealMatrix& b, const RealMatrix& c) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  require_dim_at_most(d, kRawSumMaxDim, "fidelity_weyl_raw");
  for (const RealMatrix* m : {&a, &b, &c}) {
    if (m->rows() != d || m->cols() != d) {
      throw std::invalid_argument("fidelity_weyl_raw: coefficient matrix is not d x d");
    }
  }

  // X(j, k, q2) = sum_{mu nu} beta_jmu beta*_kmu w^{(k-j) mu} gamma_{k+nu+q2} gamma*_{j+nu+q2}.
  const std::size_t dz = static_cast<std::size_t>(d);
  std::vector<Complex> x(dz * dz * dz);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      Complex measure = 0.0;
      for (int mu = 0; mu < d; ++mu) {
        measure += basis(j, mu) * std::conj(basis(k, mu)) *
                   root_of_unity(d, static_cast<long long>(k - j) * mu);
      }
      for (int q2 = 0; q2 < d; ++q2) {
        Complex channel = 0.0;
        for (int nu = 0; nu < d; ++nu) {
          channel += gamma[mod(k + nu + q2, d)] * std::conj(gamma[mod(j + nu + q2, d)]);
        }
        x[(j * dz + k) * dz + q2] = measure * channel;
      }
    }
  }

  struct Entry {
    int p;
    int q;
    double w;
  };
  auto nonzero = [d](const RealMatrix& m) {
    std::vector<Entry> out;
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) {
        if (m(p, q) != 0.0) out.push_back({p, q, m(p, q)});
      }
    }
    return out;
  };
  const std::vector<Entry> na = nonzero(a);
  const std::vector<Entry> nc = nonzero(c);

  Complex sum = 0.0;
  for (const Entry& ea : na) {
    for (const Entry& ec : nc) {
      const int q2 = mod(ea.q + ec.q, d);  // delta_{q2, q1 + q3}
      for (int p2 = 0; p2 < d; ++p2) {
        const double wb = b(p2, q2);
        if (wb == 0.0) continue;
        const double weight = ea.w * wb * ec.w;
        const int phase = ea.p + p2 + ec.p;
        Complex inner = 0.0;
        for (int j = 0; j < d; ++j) {
          for (int k = 0; k < d; ++k) {
            inner += root_of_unity(d, static_cast<long long>(k - j) * phase) *
                     x[(j * dz + k) * dz + q2];
          }
        }
        sum += weight * inner;
      }
    }
  }
  return (1.0 + sum.real() / d) / (d + 1.0);
}

double fidelity_weyl_closed(Dim dim, double f_q, double tf, const WeylCoefficients& a,
                            const WeylCoefficients& b, const WeylCoefficients& c) {
  const int d = dim;
  const double dd = d;
  const double a0 = a.a0 * a.a0, af = a.af * a.af, ap = a.ap * a.ap, ac = a.ac * a.ac;
  const double b0 = b.a0 * b.a0, bf = b.af * b.af, bp = b.ap * b.ap, bc = b.ac * b.ac;
  const double c0 = c.a0 * c.a0, cf = c.af * c.af, cp = c.ap * c.ap, cc = c.ac * c.ac;
  const double quad = dd * dd - 3.0 * dd + 3.0;

  const double phase_block =
      dd * (bp * (a0 * c0 + (dd - 1.0) * af * cf) +
            (b0 + (dd - 2.0) * bp) * (ap * c0 + a0 * cp + (dd - 1.0) * (af * cc + ac * cf)) +
            ((dd - 2.0) * b0 + quad * bp) * (ap * cp + (dd - 1.0) * ac * cc));
  const double flip_block =
      dd * (dd - 1.0) *
      (((dd - 2.0) * bf + quad * bc) * (ap * cc + ac * cp + (dd - 2.0) * ac * cc) +
       bc * (af * c0 + a0 * cf + (dd - 2.0) * af * cf) +
       (bf + (dd - 2.0) * bc) *
           (ac * c0 + a0 * cc + af * cp + ap * cf + (dd - 2.0) * (af * cc + ac * cf)));
  const double quantum_block =
      (b0 - bp) * ((a0 - ap) * (c0 - cp) + (dd - 1.0) * (af - ac) * (cf - cc)) *
      (1.0 + (dd + 1.0) * f_q);
  const double tilde_block =
      (bf - bc) *
      ((a0 - ap) * (cf - cc) + (af - ac) * (c0 - cp) + (dd - 2.0) * (af - ac) * (cf - cc)) * tf;
  return (1.0 + phase_block + flip_block + quantum_block + tilde_block) / (dd + 1.0);
}

double fidelity_computational(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                              const Superoperator& a, const Superoperator& b,
                              const Superoperator& c) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  require_dim_at_most(d, kComputationalMaxDim, "fidelity_computational");
  if (a.dim() != d || b.dim() != d || c.dim() != d) {
    throw std::invalid_argument("fidelity_computational: channel dimension mismatch");
  }
  const std::size_t dz = static_cast<std::size_t>(d);
  const std::vector<Complex> overlaps = basis_overlaps(basis);
  auto B = [&](int j, int k, int t) { return overlaps[(j * dz + k) * dz + mod(t, d)]; };

  // H(r, s, x, y) = sum_{n2 p2} gamma_n2 gamma*_p2 b(r, s, n2, p2) c(x, y, n2, p2).
  std::vector<Complex> h(dz * dz * dz * dz);
  auto H = [&](int r, int s, int x, int y) -> Complex& {
    return h[((r * dz + s) * dz + x) * dz + y];
  };
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
          Complex acc = 0.0;
          for (int n2 = 0; n2 < d; ++n2) {
            for (int p2 = 0; p2 < d; ++p2) {
              acc += gamma[n2] * std::conj(gamma[p2]) * b(r, s, n2, p2) * c(x, y, n2, p2);
            }
          }
          H(r, s, x, y) = acc;
        }
      }
    }
  }

  Complex sum = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      for (int m = 0; m < d; ++m) {
        for (int nu = 0; nu < d; ++nu) {
          const int kn = mod(k + nu, d);
          const int jn = mod(j + nu, d);
          const int mn = mod(m + nu, d);
          for (int n1 = 0; n1 < d; ++n1) {
            sum += B(j, k, 0) * a(k, j, n1, n1) * H(kn, jn, mn, mn);
            sum += B(j, k, n1 - m) * a(k, j, n1, m) * H(kn, jn, mod(n1 + nu, d), mn);
          }
        }
      }
    }
  }
  return sum.real() / (d * (d + 1.0));
}

double fidelity_computational(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                              const KrausChannel& a, const KrausChannel& b,
                              const KrausChannel& c) {
  require_dim_at_most(basis.dim(), kComputationalMaxDim, "fidelity_computational");
  return fidelity_computational(basis, gamma, Superoperator(a), Superoperator(b),
                                Superoperator(c));
}

double scenario_fidelity(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                         const ScenarioSpec& scenario) {
  check_pair(basis, gamma);
  scenario.validate();
  const int d = basis.dim();
  if (scenario.all_weyl()) {
    return fidelity_weyl_closed(d, quantum_contribution(basis, gamma), tilde_f(basis, gamma),
                                weyl_coefficients(scenario.input.kind, scenario.input.p, d),
                                weyl_coefficients(scenario.alice.kind, scenario.alice.p, d),
                                weyl_coefficients(scenario.bob.kind, scenario.bob.p, d));
  }
  return fidelity_computational(basis, gamma, kraus_operators(scenario.input, d),
                                kraus_operators(scenario.alice, d),
                                kraus_operators(scenario.bob, d));
}

std::array<Superoperator, 3> DampingSurface::damping_components(Dim dim) {
  const int d = dim;
  std::array<Superoperator, 3> parts{Superoperator(d), Superoperator(d), Superoperator(d)};
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      const int zeros = (r == 0) + (s == 0);
      if (zeros == 2) {
        parts[0](r, s, r, s) = 1.0;
      } else if (zeros == 1) {
        parts[1](r, s, r, s) = 1.0;
      } else {
        // (1-p) = 1 - p
        parts[0](r, s, r, s) = 1.0;
        parts[2](r, s, r, s) = -1.0;
      }
    }
  }
  for (int j = 1; j < d; ++j) parts[2](0, 0, j, j) += 1.0;
  return parts;
}

DampingSurface::DampingSurface(const MeasurementBasis& basis, const SchmidtChannel& gamma,
                               const KrausChannel& input) {
  check_pair(basis, gamma);
  const int d = basis.dim();
  const Superoperator in(input);
  const std::array<Superoperator, 3> parts = damping_components(d);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      coefficients_(x, y) = fidelity_computational(basis, gamma, in, parts[x], parts[y]);
    }
  }
}

double DampingSurface::operator()(double p_alice, double p_bob) const {
  const Eigen::Vector3d u(1.0, std::sqrt(1.0 - p_alice), p_alice);
  const Eigen::Vector3d v(1.0, std::sqrt(1.0 - p_bob), p_bob);
  return u.dot(coefficients_ * v);
}

double region_fraction_below_classical(const NoiseSpec& input, Dim dim, int grid_points) {
  const int d = dim;
  if (grid_points < 2) throw std::invalid_argument("region fraction needs at least 2 grid points");
  const DampingSurface surface(max_entangled_basis(d), SchmidtChannel::maximally_entangled(d),
                               kraus_operators(input, d));
  const double f_c = classical_fidelity(d);
  const double last = grid_points - 1;
  long long below = 0;
  for (int i = 0; i < grid_points; ++i) {
    for (int j = 0; j < grid_points; ++j) {
      if (surface(i / last, j / last) < f_c - kTolerances.derived) ++below;
    }
  }
  return static_cast<double>(below) / (static_cast<double>(grid_points) * grid_points);
}

}  // namespace qtele
