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

#include <tuple>
#include <vector>

#include "vqmc/numerics.hpp"
#include "vqmc/sdp/solver.hpp"

namespace vqmc::sdp {

/// A Hermitian matrix stored as its nonzero entries.
struct SparseHermitian {
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> entries;

  ComplexMatrix dense(std::size_t dim) const;
};

/// Orthonormal (Hilbert-Schmidt) basis of d x d Hermitian matrices: the
/// diagonal units, then (E_pq + E_qp)/sqrt2 and i(E_pq - E_qp)/sqrt2 for p < q.
std::vector<SparseHermitian> hermitian_basis(std::size_t dim);

/// Coordinates of a Hermitian matrix in hermitian_basis(dim). The map is an
/// isometry from the Hilbert-Schmidt inner product to the Euclidean one.
RealVector hermitian_coords(const ComplexMatrix& h);
ComplexMatrix from_hermitian_coords(const RealVector& coords, std::size_t dim);

/// [[Re H, -Im H], [Im H, Re H]].
RealMatrix realify(const ComplexMatrix& h);

/// Inverse of realify for a realified Hermitian matrix, averaging the two copies.
ComplexMatrix fold(const RealMatrix& x);

/// Adds scale * tr(F H) to `f`, where H is the complex Hermitian variable
/// whose realification is stored in PSD block `block`. F must be Hermitian.
void add_hermitian_term(Functional& f, std::uint32_t block, const ComplexMatrix& F,
                        double scale = 1.0);
void add_hermitian_term(Functional& f, std::uint32_t block, std::size_t dim,
                        const SparseHermitian& F, double scale = 1.0);

}  // namespace vqmc::sdp
