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

#include "qtele/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtele/closed_form.hpp"
#include "qtele/core.hpp"
#include "qtele/noise.hpp"
#include "qtele/sampling.hpp"
#include "qtele/sweep.hpp"
#include "qtele/validate.hpp"

namespace qtele {
namespace {

struct Common {
  int d = 2;
  int workers = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  std::string method = "closed";
  std::string gamma = "max";
  std::string basis = "max";
  std::vector<std::string> noise{"none"};
  std::string out_path;
  std::string format = "csv";
};

void add_workers(CLI::App* cmd, Common& c) {
  cmd->add_option("--workers", c.workers, "Worker threads (wall time only)")
      ->envname("QTELE_WORKERS")
      ->check(CLI::PositiveNumber);
}

void add_state_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--d", c.d, "Qudit dimension")->required();
  cmd->add_option("--noise", c.noise, "Noise flags Q=KIND:p (Q in I,A,B), or none");
  cmd->add_option("--gamma", c.gamma, "Channel: max | rank:nu | boundary:mu:a | file:path");
  cmd->add_option("--basis", c.basis, "Basis: max | phased:phi1,... | file:path");
  cmd->add_option("--method", c.method, "closed | oracle-mc | both");
  cmd->add_option("--seed", c.seed, "Monte Carlo seed");
  cmd->add_option("--samples", c.samples, "Monte Carlo samples per point");
}

void print_kv(std::ostream& out, const std::string& key, double value) {
  out << key << '=' << format_double(value) << '\n';
}

int cmd_fidelity(const Common& c, std::ostream& out) {
  const Dim d(c.d);
  const ScenarioSpec scenario = parse_noise_flags(c.noise);
  const Method method = parse_method(c.method);
  if (method != Method::kClosed) require_dim_at_most(d, kOracleMaxDim, "oracle");
  const SchmidtChannel gamma = parse_channel_spec(c.gamma, d);
  const MeasurementBasis basis = parse_basis_spec(c.basis, d);
  const double f_c = classical_fidelity(d);

  out << "d=" << c.d << '\n';
  out << "scenario=" << scenario.to_string() << '\n';
  out << "method=" << to_string(method) << '\n';
  double fidelity = 0.0;
  if (method != Method::kOracleMc) {
    fidelity = scenario_fidelity(basis, gamma, scenario);
    print_kv(out, "fidelity", fidelity);
  }
  if (method != Method::kClosed) {
    const McEstimate mc =
        mc_average_fidelity(gamma, basis, scenario, c.samples, RngSeed{c.seed}, c.workers);
    if (method == Method::kOracleMc) fidelity = mc.mean;
    print_kv(out, method == Method::kOracleMc ? "fidelity" : "mc_fidelity", mc.mean);
    print_kv(out, "std_error", mc.std_error);
    out << "seed=" << c.seed << "\nsamples=" << c.samples << '\n';
  }
  print_kv(out, "f_c", f_c);
  out << "above_classical=" << (fidelity > f_c ? "true" : "false") << '\n';
  std::set<NoiseKind> kinds;
  for (Register r : {Register::kInput, Register::kAlice, Register::kBob}) {
    if (scenario.at(r).kind != NoiseKind::kNone) kinds.insert(scenario.at(r).kind);
  }
  for (NoiseKind kind : kinds) {
    print_kv(out, "single_qudit_threshold_" + std::string(to_string(kind)), threshold(kind, d).p_star);
  }
  return kExitOk;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& axes, std::ostream& out) {
  SweepGrid grid;
  grid.d = Dim(c.d);
  grid.scenario = parse_noise_flags(c.noise, true);
  if (axes.size() > 3) throw std::invalid_argument("at most 3 swept axes");
  for (const std::string& text : axes) {
    const auto [reg, range] = parse_axis(text);
    auto& slot = grid.axes[static_cast<int>(reg)];
    if (slot) throw std::invalid_argument("axis for qudit " + std::string(register_name(reg)) + " given twice");
    slot = range;
  }
  grid.method = parse_method(c.method);
  grid.seed = RngSeed{c.seed};
  grid.n_samples = c.samples;
  grid.gamma_spec = c.gamma;
  grid.basis_spec = c.basis;
  const OutputFormat format = parse_format(c.format);
  const std::vector<SweepRecord> records = run_sweep(grid, c.workers);
  write_file_atomically(c.out_path, [&](std::ostream& os) { write_sweep(os, grid, records, format); });
  out << "wrote " << records.size() << " records to " << c.out_path << '\n';
  return kExitOk;
}

int cmd_optimize(int d_raw, double p, const PhaseOptimizerOptions& options, std::ostream& out) {
  const Dim d(d_raw);
  NoiseSpec{NoiseKind::kPhaseFlip, p}.validate();
  const PhaseOptimum opt = optimize_phases(d, p, options);
  const double predicted = piecewise_phase_optimum(d, p);
  out << "phases=";
  for (std::size_t k = 0; k < opt.phases.size(); ++k) {
    out << (k ? "," : "") << format_double(opt.phases[k]);
  }
  out << '\n';
  print_kv(out, "value", opt.value);
  print_kv(out, "piecewise", predicted);
  print_kv(out, "difference", opt.value - predicted);
  return kExitOk;
}

int cmd_validate(const std::string& level, int workers, std::ostream& out) {
  const std::vector<CheckResult> checks = run_validation(level, workers);
  write_checks(out, checks);
  for (const CheckResult& check : checks) {
    if (!check.passed) return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_scatter(const Common& c, std::size_t n, int curve_points, std::ostream& out) {
  const Dim d(c.d);
  const OutputFormat format = parse_format(c.format);
  const ScatterResult result = scatter_experiment(d, n, RngSeed{c.seed}, curve_points, c.workers);
  write_file_atomically(c.out_path,
                        [&](std::ostream& os) { write_scatter(os, result, RngSeed{c.seed}, format); });
  out << "wrote " << result.records.size() << " samples and " << result.boundary.size()
      << " boundary points to " << c.out_path << '\n';
  return kExitOk;
}

int cmd_thresholds(int d_raw, std::ostream& out) {
  const Dim d(d_raw);
  out << "kind,d,p_star\n";
  for (NoiseKind kind : kAllNoiseKinds) {
    if (kind == NoiseKind::kNone) continue;
    out << to_string(kind) << ',' << d.value() << ',' << format_double(threshold(kind, d).p_star) << '\n';
  }
  return kExitOk;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

// Expands `--config FILE` into flags. Each `key = value ...` line becomes
// `--key value ...` unless --key already appears on the command line.
// '#' and ';' start comments; section headers are ignored.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
  }
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line '" + line + "' has no '='");
    const std::string flag = "--" + trim(line.substr(0, eq));
    if (given.count(flag)) continue;
    args.push_back(flag);
    std::istringstream values(line.substr(eq + 1));
    std::string value;
    while (values >> value) {
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qudit teleportation fidelity under local noise", "qtele"};
  app.set_version_flag("--version", std::string(code_version()));
  app.require_subcommand(1);

  Common c;
  std::vector<std::string> axes;
  double opt_p = 0.0;
  PhaseOptimizerOptions opt_options;
  std::string level = "fast";
  std::size_t scatter_n = 10000;
  int curve_points = 201;

  auto* fidelity = app.add_subcommand("fidelity", "Average fidelity of one configuration");
  add_state_options(fidelity, c);
  add_workers(fidelity, c);

  auto* sweep = app.add_subcommand("sweep", "Fidelity over a grid of noise fractions");
  add_state_options(sweep, c);
  add_workers(sweep, c);
  sweep->add_option("--axis", axes, "Swept axis Q=start:stop:steps (repeatable)")->required();
  sweep->add_option("--out", c.out_path, "Output file")->required();
  sweep->add_option("--format", c.format, "csv | jsonl");

  auto* optimize = app.add_subcommand("optimize", "Optimal phased basis under phase-flip noise on one qudit");
  optimize->add_option("--d", c.d, "Qudit dimension")->required();
  optimize->add_option("--p", opt_p, "Noise fraction")->required();
  optimize->add_option("--starts", opt_options.starts, "Random starts (0 = automatic)");
  optimize->add_option("--seed", opt_options.seed, "Seed for the random starts");

  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  validate->add_option("--level", level, "fast | full");
  add_workers(validate, c);

  auto* scatter = app.add_subcommand("scatter", "Random channel states and boundary families");
  scatter->add_option("--d", c.d, "Qudit dimension")->required();
  scatter->add_option("--n", scatter_n, "Number of random states");
  scatter->add_option("--seed", c.seed, "Sampling seed");
  scatter->add_option("--curve-points", curve_points, "Points per boundary branch");
  scatter->add_option("--out", c.out_path, "Output file")->required();
  scatter->add_option("--format", c.format, "csv | jsonl");
  add_workers(scatter, c);

  auto* thresholds = app.add_subcommand("thresholds", "Single-qudit noise thresholds");
  thresholds->add_option("--d", c.d, "Qudit dimension")->required();

  std::string config_path;
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--config", config_path, "Plain key=value file; command-line flags take precedence");
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    // CLI11 consumes the vector from the back.
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (fidelity->parsed()) return cmd_fidelity(c, out);
    if (sweep->parsed()) return cmd_sweep(c, axes, out);
    if (optimize->parsed()) return cmd_optimize(c.d, opt_p, opt_options, out);
    if (validate->parsed()) return cmd_validate(level, c.workers, out);
    if (scatter->parsed()) return cmd_scatter(c, scatter_n, curve_points, out);
    if (thresholds->parsed()) return cmd_thresholds(c.d, out);
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDimension;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace qtele
