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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqmc/sdp/solver.hpp"
#include "vqmc/states.hpp"

namespace vqmc::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kError = 2 };

struct RunConfig {
  std::string command;
  // State source: a family with parameters, or a JSON file.
  std::string family;
  std::vector<std::string> params;  // "key=value"
  std::optional<double> p;
  std::string state_file;

  double rank_tol = 1e-10;
  std::string grid;  // START:STOP:N
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string mode = "hptp";
  sdp::Options solver;
  std::size_t threads = 0;
  bool include_critical = true;  // gw_mix_overhead: add p = 7 - 3 sqrt5 to the grid

  // sample
  std::string observable = "ZZZ";
  std::string observable_file;
  double eps = 0.05;
  double delta = 0.01;
  std::string records_file;
  std::optional<std::size_t> shots;

  // recover
  bool with_overhead = true;
};

struct CommandResult {
  int exit_code = kSuccess;
  std::string report;
  std::vector<std::string> warnings;
};

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 0;

  std::vector<double> values() const;
};

/// Parses START:STOP:N with N >= 2.
Grid parse_grid(const std::string& spec);

TripartiteState resolve_state(const RunConfig& config);

/// Runs one subcommand. Input errors are returned as exit code 2 with the
/// message in `report`; they are not thrown.
CommandResult run_command(const RunConfig& config);

}  // namespace vqmc::cli
