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
#include <string>
#include <vector>

#include "vqmc/numerics.hpp"

namespace vqmc::sdp {

enum class Cone { kPsd, kFree };

/// A variable block: a real symmetric dim x dim matrix constrained to the
/// PSD cone, or `dim` unconstrained scalars.
struct Block {
  std::size_t dim = 0;
  Cone cone = Cone::kPsd;
};

/// One term v * X_block(row, col). For free blocks `col` must be 0.
struct Term {
  std::uint32_t block = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;
};

/// Real linear functional on the variable blocks, as a sum of terms.
/// Terms on PSD blocks act on the symmetric matrix, so v * X(r, c) and
/// v * X(c, r) are the same term.
struct Functional {
  std::vector<Term> terms;

  void add(std::uint32_t block, std::uint32_t row, std::uint32_t col, double value) {
    if (value != 0.0) terms.push_back({block, row, col, value});
  }
};

/// minimize objective(X) s.t. constraints[i](X) = rhs[i], PSD blocks >= 0.
///
/// The dual is: maximize rhs . y s.t. C - sum_i y_i A_i = Z >= 0 on PSD
/// blocks and equality on free blocks.
struct Problem {
  std::vector<Block> blocks;
  Functional objective;
  std::vector<Functional> constraints;
  std::vector<double> rhs;

  std::uint32_t add_block(std::size_t dim, Cone cone) {
    blocks.push_back({dim, cone});
    return static_cast<std::uint32_t>(blocks.size() - 1);
  }
  void add_constraint(Functional f, double b) {
    constraints.push_back(std::move(f));
    rhs.push_back(b);
  }
};

struct Options {
  double gap_tol = 1e-7;   // relative duality gap
  double feas_tol = 1e-7;  // relative primal/dual infeasibility
  std::size_t max_iter = 50000;
  /// Dual objective (scaled) beyond which a diverging dual iterate is
  /// tested as a certificate of primal infeasibility.
  double divergence = 1e6;
  int verbosity = 0;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kMaxIter };

const char* to_string(Status s);

struct Solution {
  Status status = Status::kMaxIter;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;           // |primal - dual|
  double relative_gap = 0.0;  // |primal - dual| / (1 + |primal| + |dual|)
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::size_t iterations = 0;
  std::string message;

  std::vector<RealMatrix> x;  // one per block; free blocks are dim x 1
  std::vector<RealMatrix> z;  // dual slack per PSD block (empty for free blocks)
  RealVector y;               // equality multipliers
};

/// Validates block indices and dimensions; throws std::invalid_argument.
void validate(const Problem& problem);

Solution solve(const Problem& problem, const Options& options = {});

}  // namespace vqmc::sdp
