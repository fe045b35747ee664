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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qtele {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;     // observed quantity (worst error, or the value compared)
  double tolerance = 0.0;
  std::string detail;
};

/// Runs the invariant suite. "fast" covers construction invariants and
/// thresholds; "full" adds route cross-checks and Monte Carlo comparisons.
/// Throws std::invalid_argument for any other level.
std::vector<CheckResult> run_validation(std::string_view level, int workers = 1);

/// One JSON object per line.
void write_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace qtele
