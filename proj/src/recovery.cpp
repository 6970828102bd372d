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

#include "vqmc/recovery.hpp"

#include <cmath>
#include <sstream>

namespace vqmc {

ComplexMatrix choi_to_superop(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim) {
  if (static_cast<std::size_t>(choi.rows()) != in_dim * out_dim || choi.rows() != choi.cols())
    throw NumericalError("choi_to_superop: Choi matrix has the wrong shape");
  ComplexMatrix s(out_dim * out_dim, in_dim * in_dim);
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j)
      for (std::size_t p = 0; p < out_dim; ++p)
        for (std::size_t q = 0; q < out_dim; ++q)
          s(p + q * out_dim, i + j * in_dim) = choi(i * out_dim + p, j * out_dim + q);
  return s;
}

ComplexMatrix superop_to_choi(const ComplexMatrix& superop, std::size_t in_dim,
                              std::size_t out_dim) {
  if (static_cast<std::size_t>(superop.rows()) != out_dim * out_dim ||
      static_cast<std::size_t>(superop.cols()) != in_dim * in_dim)
    throw NumericalError("superop_to_choi: superoperator has the wrong shape");
  ComplexMatrix j(in_dim * out_dim, in_dim * out_dim);
  for (std::size_t a = 0; a < in_dim; ++a)
    for (std::size_t b = 0; b < in_dim; ++b)
      for (std::size_t p = 0; p < out_dim; ++p)
        for (std::size_t q = 0; q < out_dim; ++q)
          j(a * out_dim + p, b * out_dim + q) = superop(p + q * out_dim, a + b * in_dim);
  return j;
}

MapFlags check_flags(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim,
                     FlagTolerance tolerance) {
  MapFlags f;
  f.hermitian_defect = hermiticity_defect(choi);
  f.hermitian_preserving = f.hermitian_defect <= tolerance.hermitian;
  const ComplexMatrix marginal = partial_trace(choi, {in_dim, out_dim}, {1});
  f.trace_defect =
      (marginal - ComplexMatrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
  f.trace_preserving = f.trace_defect <= tolerance.trace;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(choi), Eigen::EigenvaluesOnly);
  f.min_choi_eigenvalue = es.eigenvalues()(0);
  f.completely_positive = f.hermitian_preserving && f.min_choi_eigenvalue >= -tolerance.psd;
  return f;
}

MapFlags check_flags(const LinearMap& map, FlagTolerance tolerance) {
  return check_flags(map.choi(), map.in_dim(), map.out_dim(), tolerance);
}

LinearMap LinearMap::from_choi(ComplexMatrix choi, std::size_t in_dim, std::size_t out_dim,
                               FlagTolerance tolerance) {
  require_finite(choi, "LinearMap");
  LinearMap m;
  m.in_dim_ = in_dim;
  m.out_dim_ = out_dim;
  m.superop_ = choi_to_superop(choi, in_dim, out_dim);
  m.choi_ = std::move(choi);
  m.flags_ = check_flags(m.choi_, in_dim, out_dim, tolerance);
  return m;
}

LinearMap LinearMap::from_superop(ComplexMatrix superop, std::size_t in_dim, std::size_t out_dim,
                                  FlagTolerance tolerance) {
  require_finite(superop, "LinearMap");
  LinearMap m;
  m.in_dim_ = in_dim;
  m.out_dim_ = out_dim;
  m.choi_ = superop_to_choi(superop, in_dim, out_dim);
  m.superop_ = std::move(superop);
  m.flags_ = check_flags(m.choi_, in_dim, out_dim, tolerance);
  return m;
}

ComplexMatrix apply_map(const LinearMap& map, const ComplexMatrix& x) {
  const auto in = map.in_dim();
  const auto out = map.out_dim();
  const auto n = static_cast<std::size_t>(x.rows());
  if (x.rows() != x.cols() || n == 0 || n % in != 0) {
    std::ostringstream os;
    os << "apply_map: input is " << x.rows() << "x" << x.cols() << ", map input dimension is "
       << in;
    throw NumericalError(os.str());
  }
  const auto d_a = n / in;
  ComplexMatrix y(d_a * out, d_a * out);
  for (std::size_t a = 0; a < d_a; ++a)
    for (std::size_t b = 0; b < d_a; ++b) {
      const ComplexMatrix blk = x.block(a * in, b * in, in, in);
      y.block(a * out, b * out, out, out) = unvec(map.superop() * vec(blk), out, out);
    }
  return y;
}

ComplexMatrix apply_choi(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim,
                         const ComplexMatrix& x) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (x.rows() != x.cols() || n == 0 || n % in_dim != 0)
    throw NumericalError("apply_choi: input dimension is not a multiple of the map input");
  const auto d_a = n / in_dim;
  const ComplexMatrix xt = partial_transpose(x, {d_a, in_dim}, 1);
  const ComplexMatrix lhs = kron(xt, ComplexMatrix::Identity(out_dim, out_dim));
  const ComplexMatrix rhs = kron(ComplexMatrix::Identity(d_a, d_a), choi);
  return partial_trace(lhs * rhs, {d_a, in_dim, out_dim}, {1});
}

LinearMap build_virtual_recovery(const TripartiteState& state, double rank_tol) {
  const auto verdict = is_vqmc(state, rank_tol);
  if (!verdict.is_vqmc) {
    std::ostringstream os;
    os << "state is not virtually recoverable: rank of the B block map is " << verdict.rank_b
       << " but the BC block map has rank " << verdict.rank_bc;
    throw NotRecoverableError(os.str(), verdict);
  }
  const auto& d = state.dims();
  const auto sys = block_system(state);
  const auto n_b = d.b * d.b;
  const auto n_bc = d.b * d.c;

  const ComplexMatrix b_pinv = pinv(sys.mat_b, rank_tol);
  const ComplexMatrix proj = sys.mat_b * b_pinv;  // orthogonal projector onto im mat_b
  const ComplexMatrix on_image = sys.mat_bc * b_pinv;
  const ComplexVector id_b = vec(ComplexMatrix::Identity(d.b, d.b));
  const ComplexVector id_bc = vec(ComplexMatrix::Identity(n_bc, n_bc));
  // Trace functional restricted to the orthogonal complement of the image.
  const ComplexVector w =
      (ComplexMatrix::Identity(n_b, n_b) - proj).adjoint() * id_b;
  ComplexMatrix superop = on_image + (1.0 / static_cast<double>(n_bc)) * id_bc * w.adjoint();
  return LinearMap::from_superop(std::move(superop), d.b, n_bc);
}

LinearMap w_choi_formula(double a0, double a1) {
  const double rest = 1.0 - a0 - a1;
  if (!(a0 > 0.0 && a1 > 0.0 && rest > 0.0)) {
    std::ostringstream os;
    os << "w_choi_formula: need a0, a1 > 0 and a0 + a1 < 1, got (" << a0 << ", " << a1 << ")";
    throw NumericalError(os.str());
  }
  const auto sys = block_system(w_state(a0, a1));
  const auto q = [&](std::size_t i, std::size_t j) { return sys.block_bc(i, j); };
  const auto e = [](std::size_t i, std::size_t j) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(i, j) = 1.0;
    return m;
  };
  // Both off-diagonal blocks carry 1 / sqrt(a1 (1 - a0 - a1)): Q_B^(01) and
  // Q_B^(10) are sqrt(a1 (1 - a0 - a1)) |1><0| and its adjoint.
  const double off = std::sqrt(a1 * rest);
  ComplexMatrix choi = kron(e(0, 0), q(1, 1) / rest) + kron(e(0, 1), q(1, 0) / off) +
                       kron(e(1, 0), q(0, 1) / off) +
                       kron(e(1, 1), (rest * q(0, 0) - a0 * q(1, 1)) / (a1 * rest));
  return LinearMap::from_choi(std::move(choi), 2, 4);
}

LinearMap petz_map(const ComplexMatrix& rho_bc, std::size_t d_b, std::size_t d_c) {
  const auto n_bc = d_b * d_c;
  if (static_cast<std::size_t>(rho_bc.rows()) != n_bc || rho_bc.rows() != rho_bc.cols())
    throw NumericalError("petz_map: rho_BC has the wrong shape");
  const ComplexMatrix rho_b = partial_trace(rho_bc, {d_b, d_c}, {1});
  const ComplexMatrix root_bc = psd_sqrt(rho_bc);
  const ComplexMatrix inv_root_b = psd_inv_sqrt(rho_b);
  const ComplexMatrix id_c = ComplexMatrix::Identity(d_c, d_c);
  ComplexMatrix choi(d_b * n_bc, d_b * n_bc);
  for (std::size_t i = 0; i < d_b; ++i)
    for (std::size_t j = 0; j < d_b; ++j) {
      const ComplexMatrix sandwiched =
          inv_root_b.col(i) * inv_root_b.col(j).adjoint();  // rho_B^{-1/2}|i><j|rho_B^{-1/2}
      choi.block(i * n_bc, j * n_bc, n_bc, n_bc) = root_bc * kron(sandwiched, id_c) * root_bc;
    }
  return LinearMap::from_choi(std::move(choi), d_b, n_bc);
}

double recovery_residual(const LinearMap& map, const TripartiteState& state) {
  return trace_norm(apply_map(map, state.rho_ab()) - state.rho());
}

}  // namespace vqmc
