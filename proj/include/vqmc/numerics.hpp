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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqmc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when an input violates a numerical precondition (shape, symmetry,
/// positivity). The message names the violated condition and its magnitude.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions of the three parties of a tripartite system. Subsystem A is
/// always the slowest-varying tensor index, C the fastest.
struct DimSplit {
  std::size_t a = 1;
  std::size_t b = 1;
  std::size_t c = 1;

  std::size_t total() const { return a * b * c; }
  std::vector<std::size_t> as_list() const { return {a, b, c}; }
  friend bool operator==(const DimSplit&, const DimSplit&) = default;
};

namespace tol {
/// Relative Hermiticity tolerance, scaled by the Frobenius norm.
inline constexpr double kHermitian = 1e-10;
/// Absolute eigenvalue slack below which PSD inputs are clipped to zero.
inline constexpr double kPsd = 1e-9;
/// Relative singular-value threshold for numerical rank.
inline constexpr double kRank = 1e-10;
}  // namespace tol

struct HermEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

struct Svd {
  ComplexMatrix u;
  RealVector singular;  // descending
  ComplexMatrix v;
};

/// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Largest |H - H^dagger| entry relative to ||H||_F (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix& h);

bool is_hermitian(const ComplexMatrix& h, double rel_tol = tol::kHermitian);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Rejects inputs whose anti-Hermitian part exceeds rel_tol * ||H||_F.
HermEig herm_eig(const ComplexMatrix& h, double rel_tol = tol::kHermitian);

/// Thin singular value decomposition M = U diag(s) V^dagger.
Svd svd(const ComplexMatrix& m);

/// Numerical rank: singular values above rank_tol * s_max.
std::size_t numerical_rank(const RealVector& singular, double rank_tol = tol::kRank);

/// Moore-Penrose pseudoinverse; singular values <= rank_tol * s_max are dropped.
ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol = tol::kRank);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace over the subsystems listed in `traced`. `dims` gives the
/// factor dimensions, slowest first. Remaining factors keep their order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> traced);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> traced);

/// Transpose on tensor factor `sys` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t sys);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                std::size_t sys);

/// Reorders tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol::kPsd, 0) are clipped; anything more negative is rejected.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Pseudo-inverse square root on the support (eigenvalues <= cutoff dropped).
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m, double cutoff = 1e-12);

double trace_norm(const ComplexMatrix& m);

/// Column-stacking vectorization: vec(M)[i + j*rows] = M(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);

/// Hermitian part (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

}  // namespace vqmc
