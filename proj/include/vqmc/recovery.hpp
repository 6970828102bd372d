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

#include <stdexcept>

#include "vqmc/markov.hpp"
#include "vqmc/numerics.hpp"
#include "vqmc/states.hpp"

namespace vqmc {

struct MapFlags {
  bool hermitian_preserving = false;
  bool trace_preserving = false;
  bool completely_positive = false;
  double hermitian_defect = 0.0;  // relative, of the Choi matrix
  double trace_defect = 0.0;      // max |tr_out J - I| entry
  double min_choi_eigenvalue = 0.0;
};

struct FlagTolerance {
  double hermitian = tol::kHermitian;
  double trace = 1e-9;
  double psd = tol::kPsd;
};

/// A linear map L(in) -> L(out), stored both as a column-stacking
/// superoperator and as a Choi matrix J = sum_ij |i><j| (x) R(|i><j|)
/// (input factor first). With this convention R(X) = tr_in[(X^T (x) I) J].
class LinearMap {
 public:
  static LinearMap from_choi(ComplexMatrix choi, std::size_t in_dim, std::size_t out_dim,
                             FlagTolerance tolerance = {});
  static LinearMap from_superop(ComplexMatrix superop, std::size_t in_dim, std::size_t out_dim,
                                FlagTolerance tolerance = {});

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const ComplexMatrix& superop() const { return superop_; }
  const ComplexMatrix& choi() const { return choi_; }
  const MapFlags& flags() const { return flags_; }

 private:
  LinearMap() = default;
  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
  ComplexMatrix superop_;
  ComplexMatrix choi_;
  MapFlags flags_;
};

ComplexMatrix choi_to_superop(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim);
ComplexMatrix superop_to_choi(const ComplexMatrix& superop, std::size_t in_dim,
                              std::size_t out_dim);

/// Recomputes HP/TP/CP flags from the Choi matrix.
MapFlags check_flags(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim,
                     FlagTolerance tolerance = {});
MapFlags check_flags(const LinearMap& map, FlagTolerance tolerance = {});

/// Applies `map` to x. If x lives on A (x) in, the map acts on the second
/// factor and A is carried along unchanged.
ComplexMatrix apply_map(const LinearMap& map, const ComplexMatrix& x);

/// tr_B[(x^{T_B} (x) I_out)(I_A (x) J)] evaluated literally from the Choi matrix.
ComplexMatrix apply_choi(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim,
                         const ComplexMatrix& x);

/// Thrown when no recovery map exists for a state.
class NotRecoverableError : public std::runtime_error {
 public:
  NotRecoverableError(const std::string& what, VqmcVerdict verdict)
      : std::runtime_error(what), verdict_(verdict) {}
  const VqmcVerdict& verdict() const { return verdict_; }

 private:
  VqmcVerdict verdict_;
};

/// Hermitian-preserving, trace-preserving map B -> BC with
/// (id_A (x) R)(rho_AB) = rho_ABC. On the image of the block map it inverts
/// tr_C; on the orthogonal complement it sends M to tr(M) I / (d_B d_C).
LinearMap build_virtual_recovery(const TripartiteState& state, double rank_tol = tol::kRank);

/// Closed-form Choi matrix of a recovery map for the generalized W state.
/// Requires a0, a1 > 0 and a0 + a1 < 1.
LinearMap w_choi_formula(double a0, double a1);

/// X -> rho_BC^{1/2} (rho_B^{-1/2} X rho_B^{-1/2} (x) I_C) rho_BC^{1/2}, with
/// inverse square roots taken on the support of rho_B.
LinearMap petz_map(const ComplexMatrix& rho_bc, std::size_t d_b, std::size_t d_c);

/// || (id_A (x) R)(rho_AB) - rho_ABC ||_1.
double recovery_residual(const LinearMap& map, const TripartiteState& state);

}  // namespace vqmc
