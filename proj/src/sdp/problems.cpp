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

#include "vqmc/sdp/problems.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "vqmc/sdp/realify.hpp"

namespace vqmc::sdp {

namespace {

/// (F (x) I_k) for sparse Hermitian F.
SparseHermitian kron_identity(const SparseHermitian& f, std::size_t k) {
  SparseHermitian out;
  for (const auto& [p, q, v] : f.entries)
    for (std::size_t x = 0; x < k; ++x) out.entries.emplace_back(p * k + x, q * k + x, v);
  return out;
}

/// (G^T (x) E) with G dense d x d and E sparse on the second factor of size k.
SparseHermitian transpose_kron(const ComplexMatrix& g, const SparseHermitian& e, std::size_t k) {
  SparseHermitian out;
  const auto d = static_cast<std::size_t>(g.rows());
  for (std::size_t b1 = 0; b1 < d; ++b1)
    for (std::size_t b2 = 0; b2 < d; ++b2) {
      const Complex gv = g(b2, b1);
      if (std::abs(gv) == 0.0) continue;
      for (const auto& [p, q, v] : e.entries) out.entries.emplace_back(b1 * k + p, b2 * k + q, gv * v);
    }
  return out;
}

double trace_product(const SparseHermitian& e, const ComplexMatrix& h) {
  Complex s = 0.0;
  for (const auto& [p, q, v] : e.entries) s += v * h(q, p);
  return s.real();
}

/// A spanning set of Hermitian test functionals on dim x dim matrices:
/// off-diagonal basis elements, consecutive diagonal differences and,
/// last, the identity.
std::vector<SparseHermitian> functional_basis(std::size_t dim) {
  std::vector<SparseHermitian> out;
  auto full = hermitian_basis(dim);
  for (std::size_t k = dim; k < full.size(); ++k) out.push_back(std::move(full[k]));
  for (std::size_t p = 0; p + 1 < dim; ++p)
    out.push_back({{{p, p, Complex(1.0, 0.0)}, {p + 1, p + 1, Complex(-1.0, 0.0)}}});
  SparseHermitian id;
  for (std::size_t p = 0; p < dim; ++p) id.entries.emplace_back(p, p, Complex(1.0, 0.0));
  out.push_back(std::move(id));
  return out;
}

void require_optimal(const Solution& s, const char* what) {
  if (s.status == Status::kOptimal) return;
  std::ostringstream os;
  os << what << ": solver ended with status " << to_string(s.status) << " (" << s.message
     << "), relative gap " << s.relative_gap << ", primal infeasibility "
     << s.primal_infeasibility << ", dual infeasibility " << s.dual_infeasibility;
  throw SolverError(os.str(), s.status);
}

/// <a|rho_AB|a'> on B.
ComplexMatrix ab_block(const ComplexMatrix& rho_ab, std::size_t d_b, std::size_t a,
                       std::size_t a2) {
  return rho_ab.block(a * d_b, a2 * d_b, d_b, d_b);
}

}  // namespace

Decomposition OverheadResult::decomposition() const {
  return {c1, c2, j1, j2, dims.b, dims.b * dims.c};
}

LinearMap OverheadResult::recovery_map() const {
  return LinearMap::from_choi(j1 - j2, dims.b, dims.b * dims.c);
}

ComplexMatrix recovery_adjoint(const TripartiteState& state, const ComplexMatrix& k) {
  const auto& d = state.dims();
  const auto nbc = d.b * d.c;
  if (static_cast<std::size_t>(k.rows()) != d.a * nbc || k.rows() != k.cols())
    throw NumericalError("recovery_adjoint: K must act on A (x) B'C");
  const ComplexMatrix rho_ab = state.rho_ab();
  ComplexMatrix w = ComplexMatrix::Zero(d.b * nbc, d.b * nbc);
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t a2 = 0; a2 < d.a; ++a2)
      w += kron(ab_block(rho_ab, d.b, a, a2).transpose(), k.block(a2 * nbc, a * nbc, nbc, nbc));
  return w;
}

OverheadResult sampling_overhead(const TripartiteState& state, const ProblemOptions& options) {
  const auto& d = state.dims();
  const auto verdict = is_vqmc(state, options.rank_tol);
  if (!verdict.is_vqmc) {
    std::ostringstream os;
    os << "sampling overhead is infinite: state is not virtually recoverable (block map ranks "
       << verdict.rank_b << " vs " << verdict.rank_bc << ")";
    throw NotRecoverableError(os.str(), verdict);
  }
  const auto nb = d.b;
  const auto nbc = d.b * d.c;
  const auto n = nb * nbc;
  const auto sys = block_system(state);

  // Hermitian combinations of the blocks, scaled so that the coefficient
  // change is unitary and singular values match those of mat_b.
  const double s2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  std::vector<ComplexMatrix> herm_b, herm_bc;
  for (std::size_t i = 0; i < d.a; ++i) {
    herm_b.push_back(sys.block_b(i, i));
    herm_bc.push_back(sys.block_bc(i, i));
    for (std::size_t j = i + 1; j < d.a; ++j) {
      herm_b.push_back(s2 * (sys.block_b(i, j) + sys.block_b(j, i)));
      herm_bc.push_back(s2 * (sys.block_bc(i, j) + sys.block_bc(j, i)));
      herm_b.push_back(s2 * i_unit * (sys.block_b(i, j) - sys.block_b(j, i)));
      herm_bc.push_back(s2 * i_unit * (sys.block_bc(i, j) - sys.block_bc(j, i)));
    }
  }
  const auto cols = static_cast<Eigen::Index>(herm_b.size());
  RealMatrix p(nb * nb, cols), p_bc(nbc * nbc, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    p.col(c) = hermitian_coords(hermitian_part(herm_b[c]));
    p_bc.col(c) = hermitian_coords(hermitian_part(herm_bc[c]));
  }
  Eigen::JacobiSVD<RealMatrix> svd(p, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const auto r = static_cast<Eigen::Index>(numerical_rank(sv, options.rank_tol));
  const RealMatrix v = svd.matrixV();
  if (r < cols) {
    const double resid = (p_bc * v.rightCols(cols - r)).norm() / std::max(p_bc.norm(), 1e-300);
    if (resid > 1e-6) {
      std::ostringstream os;
      os << "sampling overhead is infinite: recovery constraints are inconsistent (residual "
         << resid << ") although the rank test accepted the state";
      throw NotRecoverableError(os.str(), verdict);
    }
  }
  RealMatrix g_coords = svd.matrixU().leftCols(r);
  RealMatrix t_coords = p_bc * v.leftCols(r) * sv.head(r).cwiseInverse().asDiagonal();
  // Rotate so that only the first test operator carries trace.
  RealVector trace_fn = RealVector::Zero(nb * nb);
  trace_fn.head(nb).setOnes();
  const RealVector w = g_coords.transpose() * trace_fn;
  const RealMatrix w_col = w;
  Eigen::HouseholderQR<RealMatrix> qr(w_col);
  const RealMatrix rot = qr.householderQ();
  g_coords = g_coords * rot;
  t_coords = t_coords * rot;

  Problem prob;
  const auto bj1 = prob.add_block(2 * n, Cone::kPsd);
  const auto bj2 = prob.add_block(2 * n, Cone::kPsd);
  const auto bc1 = prob.add_block(1, Cone::kPsd);
  const auto bc2 = prob.add_block(1, Cone::kPsd);
  prob.objective.add(bc1, 0, 0, 1.0);
  prob.objective.add(bc2, 0, 0, 1.0);

  const auto basis_b = hermitian_basis(nb);
  for (const auto& [bj, bc] : {std::pair{bj1, bc1}, std::pair{bj2, bc2}}) {
    for (const auto& f : basis_b) {
      Functional row;
      add_hermitian_term(row, bj, n, kron_identity(f, nbc));
      double tr = 0.0;
      for (const auto& [pp, qq, val] : f.entries)
        if (pp == qq) tr += val.real();
      row.add(bc, 0, 0, -tr);
      prob.add_constraint(std::move(row), 0.0);
    }
  }
  const std::size_t n_marginal = prob.constraints.size();

  const auto tests = functional_basis(nbc);
  std::vector<ComplexMatrix> g(r), t(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    g[k] = from_hermitian_coords(g_coords.col(k), nb);
    t[k] = from_hermitian_coords(t_coords.col(k), nbc);
  }
  std::vector<std::pair<Eigen::Index, std::size_t>> rows;
  for (Eigen::Index k = 0; k < r; ++k) {
    // The identity test on traceless G_k repeats the marginal rows.
    const std::size_t count = k == 0 ? tests.size() : tests.size() - 1;
    for (std::size_t e = 0; e < count; ++e) {
      const auto w_sparse = transpose_kron(g[k], tests[e], nbc);
      Functional row;
      add_hermitian_term(row, bj1, n, w_sparse, 1.0);
      add_hermitian_term(row, bj2, n, w_sparse, -1.0);
      prob.add_constraint(std::move(row), trace_product(tests[e], t[k]));
      rows.emplace_back(k, e);
    }
  }

  const auto sol = solve(prob, options.solver);
  if (sol.status == Status::kInfeasible) {
    std::ostringstream os;
    os << "sampling overhead: solver reports infeasibility although the rank test found a "
          "virtual quantum Markov chain (block map ranks "
       << verdict.rank_b << " vs " << verdict.rank_bc << ")";
    throw NotRecoverableError(os.str(), verdict);
  }
  require_optimal(sol, "sampling_overhead");

  OverheadResult res;
  res.dims = d;
  res.verdict = verdict;
  res.status = sol.status;
  res.iterations = sol.iterations;
  res.primal_value = sol.primal_value;
  res.dual_value = sol.dual_value;
  res.gap = sol.gap;
  res.relative_gap = sol.relative_gap;
  res.j1 = fold(sol.x[bj1]);
  res.j2 = fold(sol.x[bj2]);
  res.c1 = sol.x[bc1](0, 0);
  res.c2 = sol.x[bc2](0, 0);
  res.gamma = sol.primal_value;
  res.nu = std::log2(res.gamma);

  res.m = ComplexMatrix::Zero(nb, nb);
  res.n = ComplexMatrix::Zero(nb, nb);
  for (std::size_t f = 0; f < basis_b.size(); ++f) {
    res.m -= sol.y(f) * basis_b[f].dense(nb);
    res.n -= sol.y(basis_b.size() + f) * basis_b[f].dense(nb);
  }
  ComplexMatrix w_dual = ComplexMatrix::Zero(n, n);
  for (std::size_t q = 0; q < rows.size(); ++q) {
    const auto [k, e] = rows[q];
    w_dual += sol.y(n_marginal + q) * transpose_kron(g[k], tests[e], nbc).dense(n);
  }
  // Minimal-norm K with recovery_adjoint(K) = W, solved block by block:
  // W_pq = sum_{a a'} <a|rho_AB|a'>_{qp} K^{(a' a)}.
  const ComplexMatrix rho_ab = state.rho_ab();
  ComplexMatrix coeff(nb * nb, d.a * d.a);
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t a2 = 0; a2 < d.a; ++a2) {
      const ComplexMatrix q = ab_block(rho_ab, nb, a, a2);
      for (std::size_t pp = 0; pp < nb; ++pp)
        for (std::size_t qq = 0; qq < nb; ++qq) coeff(pp * nb + qq, a2 * d.a + a) = q(qq, pp);
    }
  ComplexMatrix w_stack(nb * nb, nbc * nbc);
  for (std::size_t pp = 0; pp < nb; ++pp)
    for (std::size_t qq = 0; qq < nb; ++qq)
      w_stack.row(pp * nb + qq) = vec(w_dual.block(pp * nbc, qq * nbc, nbc, nbc)).transpose();
  const ComplexMatrix k_stack = pinv(coeff, options.rank_tol) * w_stack;
  res.k = ComplexMatrix::Zero(d.a * nbc, d.a * nbc);
  for (std::size_t a2 = 0; a2 < d.a; ++a2)
    for (std::size_t a = 0; a < d.a; ++a)
      res.k.block(a2 * nbc, a * nbc, nbc, nbc) =
          unvec(k_stack.row(a2 * d.a + a).transpose(), nbc, nbc);
  res.k = hermitian_part(res.k);
  return res;
}

const char* to_string(ApproxMode mode) { return mode == ApproxMode::kHptp ? "hptp" : "cptp"; }

ApproxResult approx_recoverability(const TripartiteState& state, ApproxMode mode,
                                   const ProblemOptions& options) {
  const auto& d = state.dims();
  const auto nb = d.b;
  const auto nbc = d.b * d.c;
  const auto n = nb * nbc;
  const auto dim = d.total();
  const ComplexMatrix rho_ab = state.rho_ab();
  const bool hptp = mode == ApproxMode::kHptp;

  Problem prob;
  const auto bs = prob.add_block(2 * dim, Cone::kPsd);
  const auto bt = prob.add_block(2 * dim, Cone::kPsd);
  const auto bj = hptp ? prob.add_block(n * n, Cone::kFree) : prob.add_block(2 * n, Cone::kPsd);
  add_hermitian_term(prob.objective, bs, ComplexMatrix::Identity(dim, dim));

  const auto add_j = [&](Functional& row, const ComplexMatrix& w) {
    if (hptp) {
      const RealVector c = hermitian_coords(w);
      for (Eigen::Index k = 0; k < c.size(); ++k) row.add(bj, static_cast<std::uint32_t>(k), 0, c(k));
    } else {
      add_hermitian_term(row, bj, w);
    }
  };

  std::vector<ComplexMatrix> blocks(d.a * d.a);
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t a2 = 0; a2 < d.a; ++a2) blocks[a * d.a + a2] = ab_block(rho_ab, nb, a, a2);

  // S - T + (id_A (x) R_J)(rho_AB) = rho, tested against a basis of Herm(ABC).
  for (const auto& e : hermitian_basis(dim)) {
    Functional row;
    add_hermitian_term(row, bs, dim, e, 1.0);
    add_hermitian_term(row, bt, dim, e, -1.0);
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    for (const auto& [p, q, v] : e.entries) {
      const auto a2 = p / nbc, x = p % nbc;
      const auto a = q / nbc, y = q % nbc;
      const ComplexMatrix& blk = blocks[a * d.a + a2];
      for (std::size_t b1 = 0; b1 < nb; ++b1)
        for (std::size_t b2 = 0; b2 < nb; ++b2) w(b1 * nbc + x, b2 * nbc + y) += blk(b2, b1) * v;
    }
    add_j(row, hermitian_part(w));
    prob.add_constraint(std::move(row), trace_product(e, state.rho()));
  }
  // tr_{B'C} J = I_B.
  for (const auto& f : hermitian_basis(nb)) {
    Functional row;
    add_j(row, kron_identity(f, nbc).dense(n));
    double tr = 0.0;
    for (const auto& [p, q, v] : f.entries)
      if (p == q) tr += v.real();
    prob.add_constraint(std::move(row), tr);
  }

  const auto sol = solve(prob, options.solver);
  require_optimal(sol, "approx_recoverability");
  ApproxResult res;
  res.sdp_value = sol.primal_value;
  res.eps_report = 2.0 * sol.primal_value;
  res.dual_value = sol.dual_value;
  res.relative_gap = sol.relative_gap;
  res.status = sol.status;
  res.iterations = sol.iterations;
  res.in_dim = nb;
  res.out_dim = nbc;
  res.choi = hptp ? from_hermitian_coords(sol.x[bj].col(0), n) : fold(sol.x[bj]);
  return res;
}

FeasibilityReport check_decomposition(const TripartiteState& state, const Decomposition& dec) {
  FeasibilityReport r;
  const auto eig1 = herm_eig(hermitian_part(dec.j1));
  const auto eig2 = herm_eig(hermitian_part(dec.j2));
  r.min_eigenvalue = std::min(eig1.values(0), eig2.values(0));
  const ComplexMatrix id = ComplexMatrix::Identity(dec.in_dim, dec.in_dim);
  const auto marg = [&](const ComplexMatrix& j, double c) {
    return (partial_trace(j, {dec.in_dim, dec.out_dim}, {1}) - c * id).cwiseAbs().maxCoeff();
  };
  r.marginal_defect = std::max(marg(dec.j1, dec.c1), marg(dec.j2, dec.c2));
  const auto map = LinearMap::from_choi(dec.j1 - dec.j2, dec.in_dim, dec.out_dim);
  r.recovery_defect = recovery_residual(map, state);
  return r;
}

Decomposition tensor_decomposition(const Decomposition& first, const DimSplit& d1,
                                   const Decomposition& second, const DimSplit& d2) {
  const std::array<std::size_t, 6> dims{d1.b, d1.b, d1.c, d2.b, d2.b, d2.c};
  const std::array<std::size_t, 6> perm{0, 3, 1, 4, 2, 5};
  const auto join = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
    return permute_subsystems(kron(x, y), dims, perm);
  };
  Decomposition out;
  out.c1 = first.c1 * second.c1 + first.c2 * second.c2;
  out.c2 = first.c1 * second.c2 + first.c2 * second.c1;
  out.j1 = join(first.j1, second.j1) + join(first.j2, second.j2);
  out.j2 = join(first.j1, second.j2) + join(first.j2, second.j1);
  out.in_dim = d1.b * d2.b;
  out.out_dim = d1.b * d1.c * d2.b * d2.c;
  return out;
}

AdditivityReport additivity_check(const TripartiteState& first, const TripartiteState& second,
                                  const ProblemOptions& options) {
  const auto joint_dim = first.dim() * second.dim();
  if (joint_dim > kAdditivityBudget) {
    std::ostringstream os;
    os << "additivity_check: joint dimension " << joint_dim << " exceeds the budget of "
       << kAdditivityBudget;
    throw std::invalid_argument(os.str());
  }
  AdditivityReport r;
  r.nu1 = sampling_overhead(first, options).nu;
  r.nu2 = sampling_overhead(second, options).nu;
  const auto joint = sampling_overhead(merged_product(first, second), options);
  r.nu_joint = joint.nu;
  r.gamma_joint = joint.gamma;
  r.defect = std::abs(r.nu_joint - r.nu1 - r.nu2);
  return r;
}

}  // namespace vqmc::sdp
