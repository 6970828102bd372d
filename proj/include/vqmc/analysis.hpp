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

/// Entropies in bits. cmi = S_AB + S_BC - S_B - S_ABC.
struct EntropyReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double s_bc = 0.0;
  double s_abc = 0.0;
  double cmi = 0.0;
};

/// -sum lambda log2 lambda over eigenvalues above 1e-12.
double von_neumann_entropy(const ComplexMatrix& rho);

EntropyReport cmi(const TripartiteState& state);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

struct FawziRennerReport {
  double lhs = 0.0;  // I(A:C|B)
  double rhs = 0.0;  // -log2 F(rho_ABC, (id_A (x) Petz)(rho_AB))
  bool holds = false;
};

/// Compares the conditional mutual information with the fidelity loss of
/// the plain Petz map. Diagnostic only: the inequality is guaranteed for
/// some recovery channel, not necessarily this one.
FawziRennerReport fawzi_renner_check(const TripartiteState& state);

}  // namespace vqmc
