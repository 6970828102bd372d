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
#include <string_view>
#include <vector>

#include "vqmc/numerics.hpp"

namespace vqmc {

struct StateTolerance {
  double hermitian = tol::kHermitian;
  double psd = tol::kPsd;
  double trace = 1e-10;
};

/// A density matrix on A (x) B (x) C with its dimension split.
///
/// Construction validates Hermiticity, positivity and unit trace; an
/// invalid matrix never becomes a TripartiteState.
class TripartiteState {
 public:
  TripartiteState(ComplexMatrix rho, DimSplit dims, StateTolerance tolerance = {});

  const ComplexMatrix& rho() const { return rho_; }
  const DimSplit& dims() const { return dims_; }
  std::size_t dim() const { return dims_.total(); }

  ComplexMatrix rho_ab() const;  // tr_C
  ComplexMatrix rho_bc() const;  // tr_A
  ComplexMatrix rho_b() const;   // tr_AC

 private:
  ComplexMatrix rho_;
  DimSplit dims_;
};

/// Projector |psi><psi| for a normalized copy of `psi`.
ComplexMatrix pure_density(const ComplexVector& psi);

/// Computational-basis ket on qubits, e.g. ket("010").
ComplexVector ket(std::string_view bits);

/// sqrt(a0)|001> + sqrt(a1)|010> + sqrt(1 - a0 - a1)|100>.
TripartiteState w_state(double a0, double a1);

/// (|000> + |111>) / sqrt(2).
TripartiteState ghz_state();

/// (1 - p) rho + p I / d.
TripartiteState depolarize(const TripartiteState& state, double p);

/// p |GHZ><GHZ| + (1 - p) |W><W| with the symmetric W state.
TripartiteState ghz_w_mix(double p);

/// One of s1, s2, rho_s, psi1, psi2.
TripartiteState named_state(std::string_view name);

/// rho_1 (x) rho_2 regrouped as (A1 A2)(B1 B2)(C1 C2).
TripartiteState merged_product(const TripartiteState& first, const TripartiteState& second);

/// G G^dagger / tr(G G^dagger) with G a d x rank complex Gaussian matrix.
TripartiteState random_state(DimSplit dims, std::size_t rank, std::uint64_t seed);

/// sum_k p_k rho_AB^(k) (x) |k><k|_C with random p and full-rank rho_AB^(k).
TripartiteState random_classical_on_c(DimSplit dims, std::uint64_t seed);

/// One direct-sum block of B: dimensions of its left and right factors and
/// its weight q_j.
struct QmcBlock {
  std::size_t left = 1;
  std::size_t right = 1;
  double weight = 1.0;
};

/// (+)_j q_j rho_{A bL_j} (x) rho_{bR_j C}, followed by a random unitary on B
/// (which preserves the Markov structure). d_B = sum_j left_j * right_j.
TripartiteState random_qmc(const std::vector<QmcBlock>& blocks, std::size_t d_a,
                           std::size_t d_c, std::uint64_t seed);

/// Random classical Markov chain: diagonal state with p(a,b,c) = p(a,b) p(c|b).
TripartiteState random_classical_markov(DimSplit dims, std::uint64_t seed);

}  // namespace vqmc
