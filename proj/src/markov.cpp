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

#include "vqmc/markov.hpp"

#include <limits>

#include "vqmc/analysis.hpp"

namespace vqmc {

ComplexMatrix BlockMatrixSystem::block_b(std::size_t i, std::size_t j) const {
  return unvec(mat_b.col(column(i, j, dims.a)), dims.b, dims.b);
}

ComplexMatrix BlockMatrixSystem::block_bc(std::size_t i, std::size_t j) const {
  const auto n = dims.b * dims.c;
  return unvec(mat_bc.col(column(i, j, dims.a)), n, n);
}

BlockMatrixSystem block_system(const TripartiteState& state) {
  const auto& d = state.dims();
  const auto n_bc = d.b * d.c;
  BlockMatrixSystem sys{ComplexMatrix(d.b * d.b, d.a * d.a), ComplexMatrix(n_bc * n_bc, d.a * d.a),
                        d};
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.a; ++j) {
      const ComplexMatrix q_bc = state.rho().block(i * n_bc, j * n_bc, n_bc, n_bc);
      const auto col = BlockMatrixSystem::column(i, j, d.a);
      sys.mat_bc.col(col) = vec(q_bc);
      sys.mat_b.col(col) = vec(partial_trace(q_bc, {d.b, d.c}, {1}));
    }
  return sys;
}

ComplexMatrix trace_c_superop(std::size_t d_b, std::size_t d_c) {
  const auto n = d_b * d_c;
  ComplexMatrix t = ComplexMatrix::Zero(d_b * d_b, n * n);
  // (tr_C X)(b, b') = sum_c X(b d_c + c, b' d_c + c)
  for (std::size_t b = 0; b < d_b; ++b)
    for (std::size_t bp = 0; bp < d_b; ++bp)
      for (std::size_t c = 0; c < d_c; ++c) t(b + bp * d_b, (b * d_c + c) + (bp * d_c + c) * n) = 1.0;
  return t;
}

ComplexMatrix kernel_basis(const ComplexMatrix& mat, double rank_tol) {
  const auto cols = static_cast<std::size_t>(mat.cols());
  if (cols == 0) return ComplexMatrix(0, 0);
  // Full V is needed for the null space, so use a full SVD here.
  Eigen::JacobiSVD<ComplexMatrix> s(mat, Eigen::ComputeFullV);
  const auto rank = numerical_rank(s.singularValues(), rank_tol);
  return s.matrixV().rightCols(cols - rank);
}

VqmcVerdict is_vqmc(const TripartiteState& state, double rank_tol) {
  const auto sys = block_system(state);
  const auto sb = svd(sys.mat_b).singular;
  const auto sbc = svd(sys.mat_bc).singular;
  VqmcVerdict v;
  v.rank_tol = rank_tol;
  v.rank_b = numerical_rank(sb, rank_tol);
  v.rank_bc = numerical_rank(sbc, rank_tol);
  const auto cols = static_cast<std::size_t>(sys.mat_b.cols());
  v.kernel_dim_b = cols - v.rank_b;
  v.kernel_dim_bc = cols - v.rank_bc;
  v.is_vqmc = v.rank_b == v.rank_bc;
  if (v.rank_b < static_cast<std::size_t>(sb.size()) && v.rank_b > 0) {
    const double discarded = sb(v.rank_b);
    v.singular_gap = discarded > 0 ? sb(v.rank_b - 1) / discarded
                                   : std::numeric_limits<double>::infinity();
  } else {
    v.singular_gap = std::numeric_limits<double>::infinity();
  }
  v.min_retained_ratio = v.rank_b > 0 ? sb(v.rank_b - 1) / sb(0) : 0.0;
  return v;
}

bool is_qmc(const TripartiteState& state, double tol) { return cmi(state).cmi <= tol; }

}  // namespace vqmc
