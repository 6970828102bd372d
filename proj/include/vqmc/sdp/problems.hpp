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

#include <optional>
#include <stdexcept>
#include <string>

#include "vqmc/markov.hpp"
#include "vqmc/recovery.hpp"
#include "vqmc/sdp/solver.hpp"
#include "vqmc/states.hpp"

namespace vqmc::sdp {

struct ProblemOptions {
  Options solver;
  double rank_tol = tol::kRank;
};

/// Raised when the solver ends without certifying optimality.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Status status)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

/// A quasiprobability decomposition c1 N1 - c2 N2 given by unnormalized
/// Choi matrices J_i = c_i * Choi(N_i) on B (x) B'C.
struct Decomposition {
  double c1 = 0.0;
  double c2 = 0.0;
  ComplexMatrix j1;
  ComplexMatrix j2;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
};

/// Optimal sampling overhead of virtual recovery with both certificates.
struct OverheadResult {
  double gamma = 0.0;  // c1 + c2
  double nu = 0.0;     // log2(gamma)
  double c1 = 0.0;
  double c2 = 0.0;
  ComplexMatrix j1;
  ComplexMatrix j2;
  // Dual certificate: K on A B'C, M and N on B, with
  // M (x) I - T(K) >= 0, N (x) I + T(K) >= 0, tr M <= 1, tr N <= 1.
  ComplexMatrix k;
  ComplexMatrix m;
  ComplexMatrix n;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  Status status = Status::kMaxIter;
  std::size_t iterations = 0;
  VqmcVerdict verdict;
  DimSplit dims;

  Decomposition decomposition() const;
  LinearMap recovery_map() const;
};

/// min c1 + c2 over J1, J2 >= 0 with tr_{B'C} J_i = c_i I_B and
/// (id_A (x) R_{J1 - J2})(rho_AB) = rho_ABC.
/// Throws NotRecoverableError when the state is not a VQMC and SolverError
/// when the solver fails to certify an optimum.
OverheadResult sampling_overhead(const TripartiteState& state, const ProblemOptions& options = {});

/// The adjoint of the recovery constraint: the operator W on B (x) B'C with
/// tr(K (id_A (x) R_J)(rho_AB)) = tr(W J) for every Choi matrix J.
ComplexMatrix recovery_adjoint(const TripartiteState& state, const ComplexMatrix& k);

enum class ApproxMode { kHptp, kCptp };

const char* to_string(ApproxMode mode);

struct ApproxResult {
  double sdp_value = 0.0;   // optimal tr S
  double eps_report = 0.0;  // 2 * sdp_value
  double dual_value = 0.0;
  double relative_gap = 0.0;
  Status status = Status::kMaxIter;
  std::size_t iterations = 0;
  ComplexMatrix choi;  // Choi matrix of the optimal map B -> BC
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;

  LinearMap map() const { return LinearMap::from_choi(choi, in_dim, out_dim); }
};

/// min tr S over S >= 0, S >= rho_ABC - (id_A (x) R_J)(rho_AB), with J
/// trace-preserving and Hermitian (HPTP) or additionally PSD (CPTP).
ApproxResult approx_recoverability(const TripartiteState& state, ApproxMode mode,
                                   const ProblemOptions& options = {});

struct FeasibilityReport {
  double min_eigenvalue = 0.0;   // smallest eigenvalue over J1, J2
  double marginal_defect = 0.0;  // max entry of |tr_{B'C} J_i - c_i I|
  double recovery_defect = 0.0;  // trace norm of the recovery residual
  bool feasible(double tol) const {
    return min_eigenvalue >= -tol && marginal_defect <= tol && recovery_defect <= tol;
  }
};

/// Checks a decomposition against the constraints of the overhead problem.
FeasibilityReport check_decomposition(const TripartiteState& state, const Decomposition& d);

/// Product decomposition for merged_product(first, second):
/// J1 (x) J1' + J2 (x) J2' and J1 (x) J2' + J2 (x) J1', reordered to the
/// merged subsystem layout.
Decomposition tensor_decomposition(const Decomposition& first, const DimSplit& first_dims,
                                   const Decomposition& second, const DimSplit& second_dims);

struct AdditivityReport {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu_joint = 0.0;
  double gamma_joint = 0.0;
  double defect = 0.0;  // |nu_joint - nu1 - nu2|
};

/// Maximum total dimension d_A d_B d_C accepted by additivity_check.
inline constexpr std::size_t kAdditivityBudget = 64;

AdditivityReport additivity_check(const TripartiteState& first, const TripartiteState& second,
                                  const ProblemOptions& options = {});

}  // namespace vqmc::sdp
