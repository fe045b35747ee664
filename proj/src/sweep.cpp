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

#include "qtele/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qtele/closed_form.hpp"
#include "qtele/parallel.hpp"

namespace qtele {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Whitespace- or comma-separated numbers, '#' starts a comment.
std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) values.push_back(parse_double(token, "number in " + path));
  }
  return values;
}

// d complex numbers given either as d reals or d (re, im) pairs.
Vector to_complex(const std::vector<double>& v, int count, const std::string& path) {
  Vector out(count);
  if (static_cast<int>(v.size()) == count) {
    for (int i = 0; i < count; ++i) out[i] = v[i];
  } else if (static_cast<int>(v.size()) == 2 * count) {
    for (int i = 0; i < count; ++i) out[i] = Complex(v[2 * i], v[2 * i + 1]);
  } else {
    throw std::invalid_argument(path + ": expected " + std::to_string(count) + " real or " +
                                std::to_string(count) + " complex values, found " +
                                std::to_string(v.size()) + " numbers");
  }
  return out;
}

}  // namespace

std::string_view code_version() { return QTELE_VERSION; }

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kClosed: return "closed";
    case Method::kOracleMc: return "oracle-mc";
    case Method::kBoth: return "both";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  const std::string t = lower(text);
  if (t == "closed") return Method::kClosed;
  if (t == "oracle-mc") return Method::kOracleMc;
  if (t == "both") return Method::kBoth;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  const std::string t = lower(text);
  if (t == "csv") return OutputFormat::kCsv;
  if (t == "jsonl" || t == "json-lines") return OutputFormat::kJsonLines;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::string_view register_name(Register r) {
  switch (r) {
    case Register::kInput: return "I";
    case Register::kAlice: return "A";
    case Register::kBob: return "B";
  }
  return "?";
}

Register parse_register(std::string_view text) {
  if (text == "I" || text == "i") return Register::kInput;
  if (text == "A" || text == "a") return Register::kAlice;
  if (text == "B" || text == "b") return Register::kBob;
  throw std::invalid_argument("unknown qudit '" + std::string(text) + "' (expected I, A or B)");
}

ScenarioSpec parse_noise_flags(const std::vector<std::string>& tokens, bool allow_missing_p) {
  ScenarioSpec scenario;
  if (tokens.size() == 1 && lower(tokens[0]) == "none") return scenario;
  std::array<bool, 3> seen{};
  for (const std::string& token : tokens) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("noise flag '" + token + "' is not of the form Q=KIND:p");
    }
    const Register r = parse_register(std::string_view(token).substr(0, eq));
    if (seen[static_cast<int>(r)]) {
      throw std::invalid_argument("qudit " + std::string(register_name(r)) + " given twice");
    }
    seen[static_cast<int>(r)] = true;
    const std::string_view rhs = std::string_view(token).substr(eq + 1);
    const std::size_t colon = rhs.find(':');
    NoiseSpec spec;
    spec.kind = parse_noise_kind(rhs.substr(0, colon));
    if (spec.kind == NoiseKind::kNone) {
      throw std::invalid_argument("noise kind must be one of F, P, FP, D, AD");
    }
    if (colon == std::string_view::npos) {
      if (!allow_missing_p) throw std::invalid_argument("noise flag '" + token + "' lacks :p");
    } else {
      spec.p = parse_double(rhs.substr(colon + 1), "noise fraction");
    }
    spec.validate();
    scenario.at(r) = spec;
  }
  return scenario;
}

SchmidtChannel parse_channel_spec(std::string_view spec, Dim dim) {
  const int d = dim;
  const auto parts = split(spec, ':');
  const std::string head = lower(parts[0]);
  if (head == "max" && parts.size() == 1) return SchmidtChannel::maximally_entangled(d);
  if (head == "rank" && parts.size() == 2) {
    const int nu = parse_int(parts[1], "rank");
    if (nu == d) return SchmidtChannel::maximally_entangled(d);
    return rank_state(d, nu);
  }
  if (head == "boundary" && parts.size() == 3) {
    return boundary_state(d, parse_int(parts[1], "family index"),
                          parse_double(parts[2], "boundary parameter"));
  }
  if (head == "file" && parts.size() >= 2) {
    const std::string path(spec.substr(5));
    const Vector gamma = to_complex(read_numbers(path), d, path);
    if (gamma.norm() == 0.0) throw std::invalid_argument(path + ": zero Schmidt vector");
    return SchmidtChannel::normalized(gamma);
  }
  throw std::invalid_argument("unknown channel spec '" + std::string(spec) + "'");
}

MeasurementBasis parse_basis_spec(std::string_view spec, Dim dim) {
  const int d = dim;
  const std::size_t colon = spec.find(':');
  const std::string head = lower(spec.substr(0, colon));
  if (head == "max" && colon == std::string_view::npos) return max_entangled_basis(d);
  if (head == "phased" && colon != std::string_view::npos) {
    std::vector<double> phases;
    for (std::string_view part : split(spec.substr(colon + 1), ',')) {
      phases.push_back(parse_double(part, "phase"));
    }
    if (static_cast<int>(phases.size()) != d - 1) {
      throw std::invalid_argument("phased basis needs d-1 = " + std::to_string(d - 1) + " phases");
    }
    return phased_basis(d, phases);
  }
  if (head == "file" && colon != std::string_view::npos) {
    const std::string path(spec.substr(colon + 1));
    const Vector flat = to_complex(read_numbers(path), d * d, path);
    Matrix beta(d, d);
    for (int k = 0; k < d; ++k) {
      for (int m = 0; m < d; ++m) beta(k, m) = flat[k * d + m];
    }
    return MeasurementBasis(beta);
  }
  throw std::invalid_argument("unknown basis spec '" + std::string(spec) + "'");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double AxisRange::at(int i) const {
  if (i == steps - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::pair<Register, AxisRange> parse_axis(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("axis '" + std::string(text) + "' is not of the form Q=start:stop:steps");
  }
  const Register r = parse_register(text.substr(0, eq));
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("axis '" + std::string(text) + "' is not of the form Q=start:stop:steps");
  }
  AxisRange range{parse_double(parts[0], "axis start"), parse_double(parts[1], "axis stop"),
                  parse_int(parts[2], "axis steps")};
  return {r, range};
}

void SweepGrid::validate() const {
  require_dim_at_most(d, kClosedFormMaxDim, "sweep");
  if (d < kMinDim) throw DimensionError("dimension must be at least 2");
  if (method != Method::kClosed) require_dim_at_most(d, kOracleMaxDim, "oracle sweep");
  for (int r = 0; r < 3; ++r) {
    const auto& axis = axes[r];
    if (!axis) continue;
    if (axis->steps < 2) throw std::invalid_argument("axis needs at least 2 steps");
    for (double p : {axis->start, axis->stop}) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("axis range outside [0, 1]");
    }
    if (scenario.at(static_cast<Register>(r)).kind == NoiseKind::kNone) {
      throw std::invalid_argument("swept qudit " +
                                  std::string(register_name(static_cast<Register>(r))) +
                                  " has no noise kind");
    }
  }
  scenario.validate();
  if (method != Method::kClosed && n_samples < 100) {
    throw std::invalid_argument("Monte Carlo needs at least 100 samples");
  }
}

std::size_t SweepGrid::point_count() const {
  std::size_t count = 1;
  for (const auto& axis : axes) {
    if (axis) count *= static_cast<std::size_t>(axis->steps);
  }
  return count;
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int workers) {
  grid.validate();
  const SchmidtChannel gamma = parse_channel_spec(grid.gamma_spec, grid.d);
  const MeasurementBasis basis = parse_basis_spec(grid.basis_spec, grid.d);
  const double f_c = classical_fidelity(grid.d);

  std::array<int, 3> steps{};
  for (int r = 0; r < 3; ++r) steps[r] = grid.axes[r] ? grid.axes[r]->steps : 1;

  std::vector<SweepRecord> records(grid.point_count());
  parallel_for(records.size(), workers, [&](std::size_t index) {
    std::size_t rest = index;
    std::array<int, 3> idx{};
    for (int r = 2; r >= 0; --r) {
      idx[r] = static_cast<int>(rest % steps[r]);
      rest /= steps[r];
    }
    ScenarioSpec scenario = grid.scenario;
    SweepRecord rec;
    for (int r = 0; r < 3; ++r) {
      NoiseSpec& spec = scenario.at(static_cast<Register>(r));
      if (grid.axes[r]) spec.p = grid.axes[r]->at(idx[r]);
      rec.p[r] = spec.kind == NoiseKind::kNone ? 0.0 : spec.p;
    }
    rec.f_c = f_c;
    if (grid.method != Method::kOracleMc) rec.fidelity = scenario_fidelity(basis, gamma, scenario);
    if (grid.method != Method::kClosed) {
      const RngSeed seed{splitmix64(grid.seed.value + index)};
      const McEstimate mc = mc_average_fidelity(gamma, basis, scenario, grid.n_samples, seed, 1);
      rec.std_error = mc.std_error;
      if (grid.method == Method::kOracleMc) {
        rec.fidelity = mc.mean;
      } else {
        rec.mc_fidelity = mc.mean;
      }
    }
    rec.above_classical = rec.fidelity > rec.f_c;
    records[index] = rec;
  });
  return records;
}

namespace {

nlohmann::json sweep_config(const SweepGrid& grid) {
  nlohmann::json axes = nlohmann::json::object();
  for (int r = 0; r < 3; ++r) {
    if (!grid.axes[r]) continue;
    axes[std::string(register_name(static_cast<Register>(r)))] = {
        {"start", grid.axes[r]->start}, {"stop", grid.axes[r]->stop}, {"steps", grid.axes[r]->steps}};
  }
  nlohmann::json config = {{"command", "sweep"},
                           {"version", std::string(code_version())},
                           {"d", grid.d},
                           {"scenario", grid.scenario.to_string()},
                           {"axes", axes},
                           {"method", std::string(to_string(grid.method))},
                           {"gamma", grid.gamma_spec},
                           {"basis", grid.basis_spec}};
  if (grid.method != Method::kClosed) {
    config["seed"] = grid.seed.value;
    config["n_samples"] = grid.n_samples;
  }
  return config;
}

void write_header_comment(std::ostream& out, const nlohmann::json& config) {
  out << "# qtele " << code_version() << '\n';
  for (const auto& [key, value] : config.items()) {
    if (key == "version") continue;
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
}

}  // namespace

void write_sweep(std::ostream& out, const SweepGrid& grid, const std::vector<SweepRecord>& records,
                 OutputFormat format) {
  const nlohmann::json config = sweep_config(grid);
  if (format == OutputFormat::kJsonLines) {
    out << nlohmann::json{{"config", config}}.dump() << '\n';
    for (const SweepRecord& rec : records) {
      nlohmann::json row = {{"p_I", rec.p[0]}, {"p_A", rec.p[1]}, {"p_B", rec.p[2]},
                            {"fidelity", rec.fidelity}};
      if (rec.mc_fidelity) row["mc_fidelity"] = *rec.mc_fidelity;
      if (rec.std_error) row["std_error"] = *rec.std_error;
      row["f_c"] = rec.f_c;
      row["above_classical"] = rec.above_classical;
      out << row.dump() << '\n';
    }
    return;
  }
  write_header_comment(out, config);
  out << "p_I,p_A,p_B,fidelity";
  if (grid.method == Method::kBoth) out << ",mc_fidelity";
  if (grid.method != Method::kClosed) out << ",std_error";
  out << ",f_c,above_classical\n";
  for (const SweepRecord& rec : records) {
    out << format_double(rec.p[0]) << ',' << format_double(rec.p[1]) << ','
        << format_double(rec.p[2]) << ',' << format_double(rec.fidelity);
    if (grid.method == Method::kBoth) out << ',' << format_double(rec.mc_fidelity.value_or(0.0));
    if (grid.method != Method::kClosed) out << ',' << format_double(rec.std_error.value_or(0.0));
    out << ',' << format_double(rec.f_c) << ',' << (rec.above_classical ? 1 : 0) << '\n';
  }
}

void write_scatter(std::ostream& out, const ScatterResult& result, RngSeed seed,
                   OutputFormat format) {
  const nlohmann::json config = {{"command", "scatter"},
                                 {"version", std::string(code_version())},
                                 {"d", result.d},
                                 {"n", result.records.size()},
                                 {"seed", seed.value}};
  if (format == OutputFormat::kJsonLines) {
    out << nlohmann::json{{"config", config}}.dump() << '\n';
    for (const ScatterRecord& rec : result.records) {
      out << nlohmann::json{{"series", "sample"},
                            {"entropy", rec.entanglement},
                            {"fq_normalized", rec.fq_normalized}}
                 .dump()
          << '\n';
    }
    for (const BoundaryPoint& pt : result.boundary) {
      out << nlohmann::json{{"series", "family_" + std::to_string(pt.mu)},
                            {"mu", pt.mu},
                            {"a", pt.a},
                            {"entropy", pt.entanglement},
                            {"fq_normalized", pt.fq_normalized}}
                 .dump()
          << '\n';
    }
    return;
  }
  write_header_comment(out, config);
  out << "series,mu,a,entropy,fq_normalized\n";
  for (const ScatterRecord& rec : result.records) {
    out << "sample,,," << format_double(rec.entanglement) << ','
        << format_double(rec.fq_normalized) << '\n';
  }
  for (const BoundaryPoint& pt : result.boundary) {
    out << "family_" << pt.mu << ',' << pt.mu << ',' << format_double(pt.a) << ','
        << format_double(pt.entanglement) << ',' << format_double(pt.fq_normalized) << '\n';
  }
}

void write_file_atomically(const std::string& path,
                           const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open " + path + " for writing");
      writer(out);
      out.flush();
      if (!out) throw IoError("write failed for " + path);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot move output into place at " + path + ": " + ec.message());
  } catch (...) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw;
  }
}

}  // namespace qtele
