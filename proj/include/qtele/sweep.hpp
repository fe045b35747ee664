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
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtele/core.hpp"
#include "qtele/noise.hpp"
#include "qtele/random.hpp"
#include "qtele/sampling.hpp"

namespace qtele {

/// File could not be written; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { kClosed, kOracleMc, kBoth };
enum class OutputFormat { kCsv, kJsonLines };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
OutputFormat parse_format(std::string_view text);

/// Register name I, A or B.
std::string_view register_name(Register r);
Register parse_register(std::string_view text);

/// Parses `I|A|B=KIND:p` tokens (or the single token `none`) into a scenario.
/// A token without `:p` is accepted only when `allow_missing_p`; p is then 0.
ScenarioSpec parse_noise_flags(const std::vector<std::string>& tokens, bool allow_missing_p = false);

/// Channel presets: max, rank:nu, boundary:mu:a, file:path.
SchmidtChannel parse_channel_spec(std::string_view spec, Dim d);
/// Basis presets: max, phased:phi1,phi2,..., file:path.
MeasurementBasis parse_basis_spec(std::string_view spec, Dim d);

/// Library version string.
std::string_view code_version();

/// `%.17g` rendering used by every text output.
std::string format_double(double value);

struct AxisRange {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  double at(int i) const;
};

/// Parses `I|A|B=start:stop:steps`.
std::pair<Register, AxisRange> parse_axis(std::string_view text);

struct SweepGrid {
  int d = 2;
  ScenarioSpec scenario;
  std::array<std::optional<AxisRange>, 3> axes;  // indexed by register
  Method method = Method::kClosed;
  RngSeed seed;
  std::size_t n_samples = 10000;
  std::string gamma_spec = "max";
  std::string basis_spec = "max";

  /// steps >= 2 on each swept axis, at most 3 axes, swept p within [0, 1].
  void validate() const;
  std::size_t point_count() const;
};

struct SweepRecord {
  std::array<double, 3> p{};
  double fidelity = 0.0;                  // closed form, or MC mean for oracle-mc
  std::optional<double> mc_fidelity;      // method both
  std::optional<double> std_error;        // MC methods
  double f_c = 0.0;
  bool above_classical = false;           // fidelity > f_c
};

/// Evaluates every grid point; records come back in lexicographic grid order
/// (I outermost, B innermost) whatever the worker count.
std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int workers = 1);

void write_sweep(std::ostream& out, const SweepGrid& grid, const std::vector<SweepRecord>& records,
                 OutputFormat format);

/// Scatter data as labeled series: `sample` rows and one `family_mu` series per family.
void write_scatter(std::ostream& out, const ScatterResult& result, RngSeed seed,
                   OutputFormat format);

/// Writes through a temporary sibling file and renames it into place; the
/// temporary is removed on failure. Throws IoError naming `path`.
void write_file_atomically(const std::string& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace qtele
