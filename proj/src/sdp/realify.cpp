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

#include "vqmc/sdp/realify.hpp"

#include <cmath>

namespace vqmc::sdp {

namespace {

void add_entry(Functional& f, std::uint32_t block, std::size_t dim, std::size_t p, std::size_t q,
               Complex v, double scale) {
  // tr(F H) = 1/2 tr(R(F) R(H)); symmetric terms are split by the solver.
  const double re = 0.5 * scale * v.real();
  const double im = 0.5 * scale * v.imag();
  const auto r = static_cast<std::uint32_t>(p);
  const auto c = static_cast<std::uint32_t>(q);
  const auto n = static_cast<std::uint32_t>(dim);
  if (re != 0.0) {
    f.add(block, r, c, re);
    f.add(block, n + r, n + c, re);
  }
  if (im != 0.0) {
    f.add(block, r, n + c, -im);
    f.add(block, n + r, c, im);
  }
}

}  // namespace

ComplexMatrix SparseHermitian::dense(std::size_t dim) const {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [p, q, v] : entries) m(p, q) += v;
  return m;
}

std::vector<SparseHermitian> hermitian_basis(std::size_t dim) {
  std::vector<SparseHermitian> out;
  out.reserve(dim * dim);
  for (std::size_t p = 0; p < dim; ++p) out.push_back({{{p, p, Complex(1.0, 0.0)}}});
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p + 1; q < dim; ++q) {
      out.push_back({{{p, q, Complex(s, 0.0)}, {q, p, Complex(s, 0.0)}}});
      out.push_back({{{p, q, Complex(0.0, s)}, {q, p, Complex(0.0, -s)}}});
    }
  return out;
}

RealVector hermitian_coords(const ComplexMatrix& h) {
  const auto d = static_cast<std::size_t>(h.rows());
  RealVector out(d * d);
  std::size_t k = 0;
  for (std::size_t p = 0; p < d; ++p) out(k++) = h(p, p).real();
  const double r2 = std::sqrt(2.0);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      const Complex v = 0.5 * (h(p, q) + std::conj(h(q, p)));
      out(k++) = r2 * v.real();
      out(k++) = r2 * v.imag();
    }
  return out;
}

ComplexMatrix from_hermitian_coords(const RealVector& coords, std::size_t dim) {
  if (static_cast<std::size_t>(coords.size()) != dim * dim)
    throw NumericalError("from_hermitian_coords: coordinate count does not match dimension");
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (std::size_t p = 0; p < dim; ++p) h(p, p) = coords(k++);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p + 1; q < dim; ++q) {
      const double a = coords(k++);
      const double b = coords(k++);
      h(p, q) = Complex(s * a, s * b);
      h(q, p) = std::conj(h(p, q));
    }
  return h;
}

RealMatrix realify(const ComplexMatrix& h) {
  const auto n = h.rows();
  RealMatrix x(2 * n, 2 * n);
  x << h.real(), -h.imag(), h.imag(), h.real();
  return x;
}

ComplexMatrix fold(const RealMatrix& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0)
    throw NumericalError("fold: expected an even square matrix");
  const auto n = x.rows() / 2;
  const RealMatrix re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  const RealMatrix im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  ComplexMatrix h(n, n);
  h.real() = re;
  h.imag() = im;
  return hermitian_part(h);
}

void add_hermitian_term(Functional& f, std::uint32_t block, const ComplexMatrix& F, double scale) {
  const auto n = static_cast<std::size_t>(F.rows());
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p)
      if (F(p, q) != Complex(0.0, 0.0)) add_entry(f, block, n, p, q, F(p, q), scale);
}

void add_hermitian_term(Functional& f, std::uint32_t block, std::size_t dim,
                        const SparseHermitian& F, double scale) {
  for (const auto& [p, q, v] : F.entries) add_entry(f, block, dim, p, q, v, scale);
}

}  // namespace vqmc::sdp
