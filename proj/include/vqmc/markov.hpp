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

#include "vqmc/numerics.hpp"
#include "vqmc/states.hpp"

namespace vqmc {

/// Matricized block maps of a tripartite state.
///
/// With Q^(ij) = <i|_A rho |j>_A, column (i * d_A + j) of `mat_bc` is
/// vec(Q_BC^(ij)) and the same column of `mat_b` is vec(tr_C Q_BC^(ij)).
struct BlockMatrixSystem {
  ComplexMatrix mat_b;   // d_B^2 x d_A^2
  ComplexMatrix mat_bc;  // (d_B d_C)^2 x d_A^2
  DimSplit dims;

  static std::size_t column(std::size_t i, std::size_t j, std::size_t d_a) { return i * d_a + j; }

  ComplexMatrix block_b(std::size_t i, std::size_t j) const;
  ComplexMatrix block_bc(std::size_t i, std::size_t j) const;
};

BlockMatrixSystem block_system(const TripartiteState& state);

/// Superoperator (column-stacking) of tr_C : L(B (x) C) -> L(B).
ComplexMatrix trace_c_superop(std::size_t d_b, std::size_t d_c);

/// Orthonormal basis (as columns) of the numerical null space of `mat`.
ComplexMatrix kernel_basis(const ComplexMatrix& mat, double rank_tol = tol::kRank);

struct VqmcVerdict {
  bool is_vqmc = false;
  std::size_t rank_b = 0;
  std::size_t rank_bc = 0;
  std::size_t kernel_dim_b = 0;
  std::size_t kernel_dim_bc = 0;
  /// Smallest retained over largest discarded singular value of mat_b,
  /// infinite when nothing is discarded.
  double singular_gap = 0.0;
  /// Smallest retained over largest singular value of mat_b. Small values
  /// mean the verdict sits near a rank transition.
  double min_retained_ratio = 0.0;
  double rank_tol = tol::kRank;

  /// True when the rank decision is close enough to the threshold that a
  /// modest change of rank_tol could flip it.
  bool near_threshold() const {
    return singular_gap < 1e3 || min_retained_ratio < 1e-4 || min_retained_ratio < 1e3 * rank_tol;
  }
};

/// Decides virtual recoverability by comparing ranks of the two block maps.
/// tr_C maps mat_bc onto mat_b, so ker mat_bc is always contained in ker
/// mat_b and kernel inclusion reduces to rank equality.
VqmcVerdict is_vqmc(const TripartiteState& state, double rank_tol = tol::kRank);

/// Quantum Markov chain test: I(A:C|B) <= tol (in bits).
bool is_qmc(const TripartiteState& state, double tol = 1e-8);

}  // namespace vqmc
