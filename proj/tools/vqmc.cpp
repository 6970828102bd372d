// Copyright 2026 The vqmc Authors
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

// Command-line front end: vqmc <check|overhead|approx|sweep|sample|recover> [options]

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "vqmc/cli.hpp"
#include "vqmc/io.hpp"

int main(int argc, char** argv) {
  using vqmc::cli::RunConfig;
  CLI::App app{"Virtual quantum Markov chain toolkit"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::size_t shots = 0;
  bool no_critical = false;
  bool no_overhead = false;

  const auto add_state = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "State family (or sweep family for 'sweep')");
    sub->add_option("--param", cfg.params, "Family parameter key=value (repeatable)");
    sub->add_option("--p", cfg.p, "Shorthand for --param p=VALUE");
    sub->add_option("--state", cfg.state_file, "State JSON file")->check(CLI::ExistingFile);
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.rank_tol, "Relative rank tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--gap-tol", cfg.solver.gap_tol, "Solver relative gap tolerance")->capture_default_str();
    sub->add_option("--feas-tol", cfg.solver.feas_tol, "Solver feasibility tolerance")->capture_default_str();
    sub->add_option("--max-iter", cfg.solver.max_iter, "Solver iteration cap")->capture_default_str();
    sub->add_option("--verbosity", cfg.solver.verbosity, "Solver log level (0 = quiet)");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  };

  auto* check = app.add_subcommand("check", "Decide whether a state is a VQMC");
  auto* overhead = app.add_subcommand("overhead", "Optimal sampling overhead of virtual recovery");
  auto* approx = app.add_subcommand("approx", "Approximate recoverability SDP");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps over state families");
  auto* sample = app.add_subcommand("sample", "Simulate the quasiprobability recovery protocol");
  auto* recover = app.add_subcommand("recover", "Construct the virtual recovery map");
  for (auto* sub : {check, overhead, approx, sample, recover}) add_state(sub);
  for (auto* sub : {check, overhead, approx, sweep, sample, recover}) add_common(sub);

  approx->add_option("--mode", cfg.mode, "Map class")->check(CLI::IsMember({"hptp", "cptp"}))->capture_default_str();
  sweep->add_option("--family", cfg.family,
                    "w_depolarized_overhead | gw_mix_overhead | ghz_depolarized_eps")
      ->required();
  sweep->add_option("--grid", cfg.grid, "START:STOP:N (default 0:1:21)");
  sweep->add_flag("--no-critical", no_critical, "gw_mix_overhead: do not add p = 7 - 3 sqrt5");
  sample->add_option("--observable", cfg.observable, "Pauli string such as ZZZ")->capture_default_str();
  sample->add_option("--observable-file", cfg.observable_file, "Dense observable JSON file")
      ->check(CLI::ExistingFile);
  sample->add_option("--eps", cfg.eps, "Target accuracy")->capture_default_str();
  sample->add_option("--delta", cfg.delta, "Failure probability")->capture_default_str();
  sample->add_option("--records", cfg.records_file, "Per-shot CSV output");
  sample->add_option("--shots", shots, "Override the Hoeffding shot count");
  recover->add_flag("--no-overhead", no_overhead, "Skip the overhead SDP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vqmc::cli::kError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (shots > 0) cfg.shots = shots;
  cfg.include_critical = !no_critical;
  cfg.with_overhead = !no_overhead;

  const auto result = vqmc::cli::run_command(cfg);
  for (const auto& w : result.warnings) std::cerr << w << "\n";
  if (result.exit_code == vqmc::cli::kError) {
    std::cerr << result.report;
    return result.exit_code;
  }
  if (!cfg.out.empty() && cfg.command != "recover") {
    try {
      vqmc::io::write_text_file(cfg.out, result.report);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return vqmc::cli::kError;
    }
  } else {
    std::cout << result.report;
  }
  return result.exit_code;
}
