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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qtele/noise.hpp"
#include "reference.hpp"

namespace qtele {
namespace {

using testing::max_abs;

constexpr double kProbe[] = {0.0, 0.05, 0.3, 0.5, 0.77, 1.0};

DensityMatrix random_density(int d, int registers, SampleRng& rng) {
  int n = 1;
  for (int r = 0; r < registers; ++r) n *= d;
  Matrix g(n, 2);
  for (int i = 0; i < n; ++i) {
    g(i, 0) = rng.complex_normal();
    g(i, 1) = rng.complex_normal();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho, d, registers);
}

Matrix embed_n(const Matrix& op, int target, int registers, int d) {
  Matrix out = Matrix::Ones(1, 1);
  for (int r = 0; r < registers; ++r) out = kron(out, r == target ? op : Matrix::Identity(d, d));
  return out;
}

TEST(NoiseKind, ParsesTagsCaseInsensitively) {
  for (NoiseKind kind : kAllNoiseKinds) EXPECT_EQ(parse_noise_kind(to_string(kind)), kind);
  EXPECT_EQ(parse_noise_kind("fp"), NoiseKind::kDitPhaseFlip);
  EXPECT_EQ(parse_noise_kind("ad"), NoiseKind::kAmplitudeDamping);
  EXPECT_THROW(parse_noise_kind("X"), std::invalid_argument);
  EXPECT_TRUE(is_weyl_kind(NoiseKind::kDepolarizing));
  EXPECT_FALSE(is_weyl_kind(NoiseKind::kAmplitudeDamping));
}

TEST(NoiseSpec, RejectsFractionsOutsideUnitInterval) {
  EXPECT_THROW((NoiseSpec{NoiseKind::kDitFlip, -0.01}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseSpec{NoiseKind::kDitFlip, 1.01}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseSpec{NoiseKind::kDitFlip, std::numeric_limits<double>::quiet_NaN()}.validate()),
               std::invalid_argument);
  EXPECT_NO_THROW((NoiseSpec{NoiseKind::kDitFlip, 1.0}.validate()));
  EXPECT_EQ((NoiseSpec{NoiseKind::kDepolarizing, 0.3}.to_string()), "D:0.3");
}

TEST(Kraus, CompleteForEveryKindFractionAndDimension) {
  for (int d = 2; d <= 8; ++d) {
    for (NoiseKind kind : kAllNoiseKinds) {
      for (double p : kProbe) {
        const KrausChannel ch = kraus_operators({kind, p}, d);
        EXPECT_LE(ch.completeness_error(), 1e-12) << to_string(kind) << " p=" << p << " d=" << d;
      }
    }
  }
}

TEST(Kraus, WeylKindsAreUnitalAmplitudeDampingIsNot) {
  for (int d = 2; d <= 5; ++d) {
    for (NoiseKind kind : kAllNoiseKinds) {
      Matrix sum = Matrix::Zero(d, d);
      const KrausChannel ch = kraus_operators({kind, 0.4}, d);
      for (const Matrix& e : ch.operators()) sum += e * e.adjoint();
      const double err = max_abs(sum - Matrix::Identity(d, d));
      if (kind == NoiseKind::kAmplitudeDamping) {
        EXPECT_GT(err, 0.1);
      } else {
        EXPECT_LT(err, 1e-12);
      }
    }
  }
}

TEST(Kraus, DropsZeroWeightOperators) {
  EXPECT_EQ(kraus_operators({NoiseKind::kDitFlip, 0.0}, 3).operators().size(), 1u);
  EXPECT_EQ(kraus_operators({NoiseKind::kDitFlip, 1.0}, 3).operators().size(), 2u);
  EXPECT_EQ(kraus_operators({NoiseKind::kDepolarizing, 0.5}, 3).operators().size(), 9u);
  EXPECT_EQ(kraus_operators({NoiseKind::kNone, 0.5}, 4).operators().size(), 1u);
}

TEST(Kraus, RejectsIncompleteSets) {
  std::vector<Matrix> ops{Matrix::Identity(2, 2) * 0.9};
  EXPECT_THROW(KrausChannel(ops, 2), std::invalid_argument);
}

TEST(WeylCoefficients, SquaredWeightsSumToOne) {
  for (int d = 2; d <= 8; ++d) {
    for (NoiseKind kind : kAllNoiseKinds) {
      if (kind == NoiseKind::kAmplitudeDamping) {
        EXPECT_THROW(weyl_coefficients(kind, 0.2, d), std::invalid_argument);
        continue;
      }
      for (double p : kProbe) {
        EXPECT_NEAR(weyl_coefficients(kind, p, d).total_weight(d), 1.0, 1e-12);
        EXPECT_NEAR(coefficient_matrix({kind, p}, d).sum(), 1.0, 1e-12);
      }
    }
  }
}

TEST(Channels, FullDepolarizingGivesMaximallyMixed) {
  SampleRng rng(3);
  for (int d = 2; d <= 5; ++d) {
    const DensityMatrix rho = random_density(d, 1, rng);
    const DensityMatrix out = apply_channel(rho, kraus_operators({NoiseKind::kDepolarizing, 1.0}, d), 0);
    EXPECT_LT(max_abs(out.matrix() - Matrix::Identity(d, d) / double(d)), 1e-12);
  }
}

TEST(Channels, PhaseFlipPreservesPopulations) {
  SampleRng rng(4);
  const DensityMatrix rho = random_density(4, 1, rng);
  const DensityMatrix out = apply_channel(rho, kraus_operators({NoiseKind::kPhaseFlip, 0.6}, 4), 0);
  EXPECT_LT((out.matrix().diagonal() - rho.matrix().diagonal()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Channels, AmplitudeDampingFixesGroundStateAndEmptiesAtFullStrength) {
  for (int d = 2; d <= 5; ++d) {
    const DensityMatrix ground = DensityMatrix::from_pure(Vector::Unit(d, 0), d, 1);
    for (double p : kProbe) {
      const DensityMatrix out = apply_channel(ground, kraus_operators({NoiseKind::kAmplitudeDamping, p}, d), 0);
      EXPECT_LT(max_abs(out.matrix() - ground.matrix()), 1e-12);
    }
    SampleRng rng(10 + d);
    const DensityMatrix rho = random_density(d, 1, rng);
    const DensityMatrix out = apply_channel(rho, kraus_operators({NoiseKind::kAmplitudeDamping, 1.0}, d), 0);
    EXPECT_LT(max_abs(out.matrix() - ground.matrix()), 1e-12);
  }
}

// Three independent evaluations of the same map: sparse register update,
// coefficient form, and explicit Kronecker-embedded Kraus operators.
TEST(Channels, RegisterUpdateMatchesKroneckerEmbedding) {
  SampleRng rng(77);
  for (int d = 2; d <= 4; ++d) {
    for (int registers : {1, 2, 3}) {
      for (int trial = 0; trial < 4; ++trial) {
        const DensityMatrix rho = random_density(d, registers, rng);
        const int target = static_cast<int>(rng.uniform() * registers);
        const double p = rng.uniform();
        for (NoiseKind kind : kAllNoiseKinds) {
          const KrausChannel ch = kraus_operators({kind, p}, d);
          Matrix expected = Matrix::Zero(rho.size(), rho.size());
          for (const Matrix& e : ch.operators()) {
            const Matrix big = embed_n(e, target, registers, d);
            expected += big * rho.matrix() * big.adjoint();
          }
          const DensityMatrix out = apply_channel(rho, ch, target);
          ASSERT_LT(max_abs(out.matrix() - expected), 1e-12) << to_string(kind);
          EXPECT_NEAR(out.trace(), 1.0, 1e-12);
          EXPECT_GT(out.min_eigenvalue(), -1e-12);
          if (kind != NoiseKind::kAmplitudeDamping) {
            const DensityMatrix alt = apply_weyl_coefficients(rho, coefficient_matrix({kind, p}, d), target);
            ASSERT_LT(max_abs(alt.matrix() - expected), 1e-12) << to_string(kind);
          }
        }
      }
    }
  }
}

TEST(Superoperator, ReproducesKrausAction) {
  SampleRng rng(12);
  for (int d = 2; d <= 4; ++d) {
    for (NoiseKind kind : kAllNoiseKinds) {
      const KrausChannel ch = kraus_operators({kind, 0.35}, d);
      const Superoperator s(ch);
      const DensityMatrix rho = random_density(d, 1, rng);
      const Matrix expected = apply_channel(rho, ch, 0).matrix();
      Matrix got = Matrix::Zero(d, d);
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          for (int u = 0; u < d; ++u) {
            for (int v = 0; v < d; ++v) got(r, c) += s(r, c, u, v) * rho(u, v);
          }
        }
      }
      EXPECT_LT(max_abs(got - expected), 1e-12);
    }
  }
}

TEST(Superoperator, ArithmeticIsEntrywise) {
  const Superoperator a(kraus_operators({NoiseKind::kDitFlip, 0.2}, 3));
  const Superoperator b(kraus_operators({NoiseKind::kPhaseFlip, 0.7}, 3));
  Superoperator c = a * 0.25;
  c += b * 0.75;
  for (int i = 0; i < 81; ++i) {
    const int r = i / 27, s = (i / 9) % 3, u = (i / 3) % 3, v = i % 3;
    EXPECT_LT(std::abs(c(r, s, u, v) - (0.25 * a(r, s, u, v) + 0.75 * b(r, s, u, v))), 1e-15);
  }
}

}  // namespace
}  // namespace qtele
