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

#include "vqmc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vqmc {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_square_dims(const ComplexMatrix& m, std::span<const std::size_t> dims,
                       const char* op) {
  const auto n = product(dims);
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != n) {
    std::ostringstream os;
    os << op << ": matrix is " << m.rows() << "x" << m.cols()
       << " but subsystem dimensions multiply to " << n;
    throw NumericalError(os.str());
  }
}

// strides[k] = product of dims after k (A slowest).
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + ": non-finite entry");
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  const double norm = h.norm();
  if (norm == 0.0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / norm;
}

bool is_hermitian(const ComplexMatrix& h, double rel_tol) {
  return hermiticity_defect(h) <= rel_tol;
}

HermEig herm_eig(const ComplexMatrix& h, double rel_tol) {
  require_finite(h, "herm_eig");
  const double defect = hermiticity_defect(h);
  if (defect > rel_tol) {
    std::ostringstream os;
    os << "herm_eig: input is not Hermitian (relative symmetry violation " << defect
       << " > " << rel_tol << ")";
    throw NumericalError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  if (es.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Svd svd(const ComplexMatrix& m) {
  require_finite(m, "svd");
  if (m.size() == 0) return {ComplexMatrix(m.rows(), 0), RealVector(0), ComplexMatrix(m.cols(), 0)};
  if (std::max(m.rows(), m.cols()) > 64) {
    Eigen::BDCSVD<ComplexMatrix> s(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {s.matrixU(), s.singularValues(), s.matrixV()};
  }
  Eigen::JacobiSVD<ComplexMatrix> s(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

std::size_t numerical_rank(const RealVector& singular, double rank_tol) {
  if (singular.size() == 0) return 0;
  const double smax = singular.maxCoeff();
  if (smax == 0.0) return 0;
  return static_cast<std::size_t>((singular.array() > rank_tol * smax).count());
}

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol) {
  if (rank_tol < 0) throw NumericalError("pinv: rank_tol must be non-negative");
  const auto s = svd(m);
  const auto r = numerical_rank(s.singular, rank_tol);
  ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
  for (std::size_t k = 0; k < r; ++k) {
    out.noalias() += (s.v.col(k) / s.singular(k)) * s.u.col(k).adjoint();
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> traced) {
  check_square_dims(m, dims, "partial_trace");
  std::vector<bool> is_traced(dims.size(), false);
  for (auto t : traced) {
    if (t >= dims.size()) throw NumericalError("partial_trace: subsystem index out of range");
    is_traced[t] = true;
  }
  const auto strides = strides_of(dims);
  std::size_t kept_dim = 1, traced_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) (is_traced[k] ? traced_dim : kept_dim) *= dims[k];

  // Split every full index into (kept index, traced index), each row-major in
  // its own factors.
  const auto n = product(dims);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> buckets(traced_dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t kept = 0, tr = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto digit = (i / strides[k]) % dims[k];
      if (is_traced[k]) tr = tr * dims[k] + digit;
      else kept = kept * dims[k] + digit;
    }
    buckets[tr].emplace_back(i, kept);
  }
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (const auto& bucket : buckets)
    for (const auto& [i, ki] : bucket)
      for (const auto& [j, kj] : bucket) out(ki, kj) += m(i, j);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> traced) {
  return partial_trace(m, std::span(dims.begin(), dims.size()),
                       std::span(traced.begin(), traced.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t sys) {
  check_square_dims(m, dims, "partial_transpose");
  if (sys >= dims.size()) throw NumericalError("partial_transpose: subsystem index out of range");
  const auto stride = strides_of(dims)[sys];
  const auto d = dims[sys];
  const auto n = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = (i / stride) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = (j / stride) % d;
      const auto i2 = i - di * stride + dj * stride;
      const auto j2 = j - dj * stride + di * stride;
      out(i, j) = m(i2, j2);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                std::size_t sys) {
  return partial_transpose(m, std::span(dims.begin(), dims.size()), sys);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  check_square_dims(m, dims, "permute_subsystems");
  if (perm.size() != dims.size()) throw NumericalError("permute_subsystems: bad permutation");
  std::vector<bool> seen(dims.size(), false);
  for (auto p : perm) {
    if (p >= dims.size() || seen[p]) throw NumericalError("permute_subsystems: bad permutation");
    seen[p] = true;
  }
  const auto in_strides = strides_of(dims);
  std::vector<std::size_t> out_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) out_dims[k] = dims[perm[k]];
  const auto out_strides = strides_of(out_dims);

  const auto n = product(dims);
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      o += ((i / in_strides[perm[k]]) % dims[perm[k]]) * out_strides[k];
    map[i] = o;
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto e = herm_eig(m);
  if (e.values.size() > 0 && e.values(0) < -tol::kPsd) {
    std::ostringstream os;
    os << "psd_sqrt: eigenvalue " << e.values(0) << " below -" << tol::kPsd;
    throw NumericalError(os.str());
  }
  const RealVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m, double cutoff) {
  const auto e = herm_eig(m);
  RealVector inv(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    inv(k) = e.values(k) > cutoff ? 1.0 / std::sqrt(e.values(k)) : 0.0;
  return e.vectors * inv.asDiagonal() * e.vectors.adjoint();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && is_hermitian(m, 1e-14)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  return svd(m).singular.sum();
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    std::ostringstream os;
    os << "unvec: vector of length " << v.size() << " cannot be reshaped to " << rows << "x"
       << cols;
    throw NumericalError(os.str());
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace vqmc
