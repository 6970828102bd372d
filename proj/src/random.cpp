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

#include "vqmc/random.hpp"

namespace vqmc {

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = rng.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  return hermitian_part(rng.gaussian_matrix(dim, dim));
}

RealVector random_distribution(std::size_t n, Rng& rng) {
  RealVector p(n);
  for (std::size_t k = 0; k < n; ++k) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    p(k) = -std::log(u);
  }
  return p / p.sum();
}

}  // namespace vqmc
