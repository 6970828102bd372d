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
#include <string_view>
#include <vector>

#include "vqmc/numerics.hpp"
#include "vqmc/sdp/problems.hpp"
#include "vqmc/states.hpp"

namespace vqmc {

/// Quasiprobability sampling of a recovery map c1 N1 - c2 N2.
struct SamplingPlan {
  std::vector<ComplexMatrix> channels;  // Choi matrices J_i / c_i, CPTP
  std::vector<double> probs;            // c_i / gamma
  std::vector<int> signs;               // +1 for N1, -1 for N2
  std::vector<std::size_t> channel_ids; // 1 or 2, matching the decomposition
  double gamma = 1.0;
  ComplexMatrix observable;
  double observable_norm = 0.0;  // spectral norm
  std::size_t shots = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::uint64_t seed = 0;
};

/// ceil(2 gamma^2 ||O||^2 ln(2/delta) / eps^2).
std::size_t hoeffding_shots(double gamma, double observable_norm, double eps, double delta);

/// Builds a plan from an overhead solution. A channel whose weight is at most
/// `weight_tol` is dropped, giving a single-channel plan.
SamplingPlan make_plan(const sdp::OverheadResult& result, const ComplexMatrix& observable,
                       double eps, double delta, std::uint64_t seed = 0,
                       double weight_tol = 1e-7);
SamplingPlan make_plan(const sdp::Decomposition& decomposition, const ComplexMatrix& observable,
                       double eps, double delta, std::uint64_t seed = 0,
                       double weight_tol = 1e-7);

struct ShotRecord {
  std::size_t shot_index = 0;
  std::size_t channel = 0;
  double eigenvalue = 0.0;
  double signed_contribution = 0.0;
};

struct SamplingReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double variance = 0.0;
  std::size_t shots = 0;
  std::size_t clipped = 0;  // Born probabilities clipped from [-1e-8, 0)
  std::vector<ShotRecord> records;
};

/// Born probabilities within this distance outside [0, 1] are clipped;
/// anything further is an error.
inline constexpr double kBornClip = 1e-8;

/// Shots are drawn in fixed-size batches, batch b from Rng::stream(seed, b),
/// so the records do not depend on `threads` (0 = hardware concurrency).
inline constexpr std::size_t kShotBatch = 4096;

SamplingReport run(const SamplingPlan& plan, const ComplexMatrix& rho_ab, bool keep_records = false,
                   std::size_t threads = 0);

/// tr(O rho).
double exact_expectation(const TripartiteState& state, const ComplexMatrix& observable);

/// Tensor product of single-qubit Paulis, e.g. "ZZZ" or "XIY".
ComplexMatrix pauli_observable(std::string_view spec);

}  // namespace vqmc
