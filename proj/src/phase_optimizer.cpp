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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "qtele/closed_form.hpp"
#include "qtele/random.hpp"

namespace qtele {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (kTwoPi - w < 1e-7) w = 0.0;
  return w;
}

// Nelder-Mead minimization of f from x0.
template <typename F>
std::pair<std::vector<double>, double> nelder_mead(F&& f, std::vector<double> x0, double step,
                                                   int max_iterations, double tolerance) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n > 0 ? n - 1 : 0];

    double spread = values[worst] - values[best];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (spread <= tolerance && size <= 1e-10) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };

    std::vector<double> reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      std::vector<double> expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    std::vector<double> contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best]};
}

// Newton iterations on the pair sum S = sum_{k>l>=0} cos(phi_k - phi_l), with
// phi_0 = 0 pinned. The fidelity is affine in S, so its stationary points are
// those of S. Rank-deficient Hessians (continuous optimum sets) use a
// pseudo-inverse. Steps that lower the objective are rejected.
template <typename F>
std::vector<double> newton_polish(F&& objective, std::vector<double> x) {
  const int n = static_cast<int>(x.size());
  double value = objective(x);
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    auto phase = [&](int k) { return k == 0 ? 0.0 : x[k - 1]; };
    for (int k = 1; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) {
        if (l == k) continue;
        const double delta = phase(k) - phase(l);
        grad[k - 1] -= std::sin(delta);
        hess(k - 1, k - 1) -= std::cos(delta);
        if (l > 0) hess(k - 1, l - 1) += std::cos(delta);
      }
    }
    if (grad.norm() < 1e-15) break;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(hess);
    cod.setThreshold(1e-9);
    const Eigen::VectorXd step = cod.solve(-grad);
    std::vector<double> trial(x);
    for (int k = 0; k < n; ++k) trial[k] += step[k];
    const double trial_value = objective(trial);
    if (!(trial_value <= value + 1e-15)) break;
    x = std::move(trial);
    value = trial_value;
    if (step.norm() < 1e-15) break;
  }
  return x;
}

}  // namespace

std::vector<double> canonical_phases(std::span<const double> phases) {
  // Full phase set including the pinned phi_0 = 0.
  std::vector<double> full{0.0};
  full.insert(full.end(), phases.begin(), phases.end());

  std::vector<double> best;
  for (std::size_t anchor = 0; anchor < full.size(); ++anchor) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> candidate;
      for (std::size_t i = 0; i < full.size(); ++i) {
        if (i != anchor) candidate.push_back(wrap(sign * (full[i] - full[anchor])));
      }
      std::sort(candidate.begin(), candidate.end());
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
  }
  return best;
}

PhaseOptimum optimize_phases(Dim dim, double p, const PhaseOptimizerOptions& options) {
  const int d = dim;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("optimize_phases: p outside [0, 1]");
  const int n = d - 1;
  const int starts = options.starts > 0 ? options.starts : 8 * n;
  auto objective = [&](const std::vector<double>& x) { return -phase_fidelity(d, p, x); };

  SampleRng rng(options.seed);

  std::vector<double> best_x;
  double best_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= starts; ++s) {
    std::vector<double> x0(n, 0.0);
    if (s > 0) {
      for (double& v : x0) v = kTwoPi * rng.uniform();
    }
    auto [x, value] = nelder_mead(objective, std::move(x0), 0.5, options.max_iterations,
                                  options.tolerance);
    if (value < best_value) {
      best_value = value;
      best_x = std::move(x);
    }
  }
  PhaseOptimum out;
  out.phases = canonical_phases(newton_polish(objective, std::move(best_x)));
  out.value = phase_fidelity(d, p, out.phases);
  return out;
}

}  // namespace qtele
