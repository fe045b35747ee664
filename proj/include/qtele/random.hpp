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

#include <cstdint>
#include <random>

#include "qtele/core.hpp"

namespace qtele {

/// Seed of a reproducible sample stream.
struct RngSeed {
  std::uint64_t value = 1;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Random source pinned to std::mt19937_64 with the uniform and normal
/// transforms implemented here, so streams do not depend on the standard
/// library's distribution classes.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for sample `index` of a run seeded with `seed`.
  static SampleRng for_index(RngSeed seed, std::uint64_t index, std::uint64_t stream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Circular complex normal with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qtele
