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

namespace qtele {

// Numerical tolerance policy shared by every module. Construction invariants
// (normalization, orthonormality, completeness) use `construction`; quantities
// derived through longer arithmetic chains use `derived`; spectrum positivity
// uses `eigenvalue`.
struct Tolerances {
  double construction = 1e-12;
  double derived = 1e-10;
  double eigenvalue = 1e-8;
};

inline constexpr Tolerances kTolerances{};

}  // namespace qtele
