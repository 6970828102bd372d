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

#include "vqmc/states.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "vqmc/random.hpp"

namespace vqmc {

TripartiteState::TripartiteState(ComplexMatrix rho, DimSplit dims, StateTolerance tolerance)
    : rho_(std::move(rho)), dims_(dims) {
  if (dims_.a == 0 || dims_.b == 0 || dims_.c == 0)
    throw NumericalError("TripartiteState: subsystem dimensions must be positive");
  if (rho_.rows() != rho_.cols() || static_cast<std::size_t>(rho_.rows()) != dims_.total()) {
    std::ostringstream os;
    os << "TripartiteState: matrix is " << rho_.rows() << "x" << rho_.cols() << " but dims "
       << dims_.a << "x" << dims_.b << "x" << dims_.c << " need " << dims_.total();
    throw NumericalError(os.str());
  }
  require_finite(rho_, "TripartiteState");
  const double defect = hermiticity_defect(rho_);
  if (defect > tolerance.hermitian) {
    std::ostringstream os;
    os << "TripartiteState: not Hermitian (relative defect " << defect << ")";
    throw NumericalError(os.str());
  }
  rho_ = hermitian_part(rho_);
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tolerance.trace) {
    std::ostringstream os;
    os << "TripartiteState: trace is " << tr << ", expected 1";
    throw NumericalError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tolerance.psd) {
    std::ostringstream os;
    os << "TripartiteState: negative eigenvalue " << es.eigenvalues()(0);
    throw NumericalError(os.str());
  }
}

ComplexMatrix TripartiteState::rho_ab() const {
  return partial_trace(rho_, {dims_.a, dims_.b, dims_.c}, {2});
}

ComplexMatrix TripartiteState::rho_bc() const {
  return partial_trace(rho_, {dims_.a, dims_.b, dims_.c}, {0});
}

ComplexMatrix TripartiteState::rho_b() const {
  return partial_trace(rho_, {dims_.a, dims_.b, dims_.c}, {0, 2});
}

ComplexMatrix pure_density(const ComplexVector& psi) {
  const ComplexVector v = psi.normalized();
  return v * v.adjoint();
}

ComplexVector ket(std::string_view bits) {
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw NumericalError("ket: expected a bit string");
    index = 2 * index + static_cast<std::size_t>(ch - '0');
  }
  ComplexVector v = ComplexVector::Zero(std::size_t{1} << bits.size());
  v(index) = 1.0;
  return v;
}

namespace {

constexpr DimSplit kQubits{2, 2, 2};

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << ": parameter " << p << " outside [0, 1]";
    throw NumericalError(os.str());
  }
}

ComplexVector w_vector(double a0, double a1) {
  const double rest = std::max(0.0, 1.0 - a0 - a1);
  return std::sqrt(a0) * ket("001") + std::sqrt(a1) * ket("010") + std::sqrt(rest) * ket("100");
}

ComplexVector ghz_vector() { return (ket("000") + ket("111")) / std::sqrt(2.0); }

}  // namespace

TripartiteState w_state(double a0, double a1) {
  if (!(a0 >= 0.0 && a1 >= 0.0 && a0 + a1 <= 1.0 + 1e-15)) {
    std::ostringstream os;
    os << "w_state: (" << a0 << ", " << a1 << ") outside the simplex a0, a1 >= 0, a0 + a1 <= 1";
    throw NumericalError(os.str());
  }
  return {pure_density(w_vector(a0, a1)), kQubits};
}

TripartiteState ghz_state() { return {pure_density(ghz_vector()), kQubits}; }

TripartiteState depolarize(const TripartiteState& state, double p) {
  require_probability(p, "depolarize");
  const auto d = static_cast<double>(state.dim());
  ComplexMatrix rho = (1.0 - p) * state.rho() + (p / d) * ComplexMatrix::Identity(state.dim(), state.dim());
  return {std::move(rho), state.dims()};
}

TripartiteState ghz_w_mix(double p) {
  require_probability(p, "ghz_w_mix");
  ComplexMatrix rho = p * pure_density(ghz_vector()) +
                      (1.0 - p) * pure_density(w_vector(1.0 / 3.0, 1.0 / 3.0));
  return {std::move(rho), kQubits};
}

TripartiteState named_state(std::string_view name) {
  const ComplexVector s1 = 0.5 * (ket("001") + ket("100") + ket("110") + ket("111"));
  const ComplexVector s2 = 0.5 * (ket("000") + ket("011") + ket("101") + ket("111"));
  if (name == "s1") return {pure_density(s1), kQubits};
  if (name == "s2") return {pure_density(s2), kQubits};
  if (name == "rho_s") return {0.5 * pure_density(s1) + 0.5 * pure_density(s2), kQubits};
  if (name == "psi1") return {pure_density(ket("010") + ket("101") + ket("110")), kQubits};
  if (name == "psi2") return {pure_density(ket("010") + ket("011") + ket("100")), kQubits};
  throw NumericalError("named_state: unknown state '" + std::string(name) +
                       "' (expected s1, s2, rho_s, psi1 or psi2)");
}

TripartiteState merged_product(const TripartiteState& first, const TripartiteState& second) {
  const auto& d1 = first.dims();
  const auto& d2 = second.dims();
  const std::array<std::size_t, 6> dims{d1.a, d1.b, d1.c, d2.a, d2.b, d2.c};
  const std::array<std::size_t, 6> perm{0, 3, 1, 4, 2, 5};
  ComplexMatrix rho = permute_subsystems(kron(first.rho(), second.rho()), dims, perm);
  return {std::move(rho), {d1.a * d2.a, d1.b * d2.b, d1.c * d2.c}};
}

namespace {

ComplexMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  const ComplexMatrix g = rng.gaussian_matrix(dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace

TripartiteState random_state(DimSplit dims, std::size_t rank, std::uint64_t seed) {
  const auto d = dims.total();
  if (rank < 1 || rank > d) {
    std::ostringstream os;
    os << "random_state: rank " << rank << " outside [1, " << d << "]";
    throw NumericalError(os.str());
  }
  Rng rng(seed);
  return {random_density(d, rank, rng), dims};
}

TripartiteState random_classical_on_c(DimSplit dims, std::uint64_t seed) {
  Rng rng(seed);
  const auto dab = dims.a * dims.b;
  const RealVector p = random_distribution(dims.c, rng);
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (std::size_t k = 0; k < dims.c; ++k) {
    ComplexMatrix proj = ComplexMatrix::Zero(dims.c, dims.c);
    proj(k, k) = 1.0;
    rho += p(k) * kron(random_density(dab, dab, rng), proj);
  }
  return {std::move(rho), dims};
}

TripartiteState random_qmc(const std::vector<QmcBlock>& blocks, std::size_t d_a,
                           std::size_t d_c, std::uint64_t seed) {
  if (blocks.empty()) throw NumericalError("random_qmc: no blocks");
  std::size_t d_b = 0;
  double total_weight = 0.0;
  for (const auto& blk : blocks) {
    if (blk.left == 0 || blk.right == 0 || blk.weight < 0.0)
      throw NumericalError("random_qmc: block dimensions must be positive and weights non-negative");
    d_b += blk.left * blk.right;
    total_weight += blk.weight;
  }
  if (std::abs(total_weight - 1.0) > 1e-12)
    throw NumericalError("random_qmc: block weights must sum to 1");

  Rng rng(seed);
  const DimSplit dims{d_a, d_b, d_c};
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  std::size_t offset = 0;
  for (const auto& blk : blocks) {
    const auto bdim = blk.left * blk.right;
    // Isometry from bL (x) bR into its slot of B.
    ComplexMatrix embed = ComplexMatrix::Zero(d_b, bdim);
    embed.block(offset, 0, bdim, bdim).setIdentity();
    const ComplexMatrix iso = kron(kron(ComplexMatrix::Identity(d_a, d_a), embed),
                                   ComplexMatrix::Identity(d_c, d_c));
    const ComplexMatrix left = random_density(d_a * blk.left, d_a * blk.left, rng);
    const ComplexMatrix right = random_density(blk.right * d_c, blk.right * d_c, rng);
    rho += blk.weight * iso * kron(left, right) * iso.adjoint();
    offset += bdim;
  }
  const ComplexMatrix u = kron(kron(ComplexMatrix::Identity(d_a, d_a), random_unitary(d_b, rng)),
                               ComplexMatrix::Identity(d_c, d_c));
  return {hermitian_part(u * rho * u.adjoint()), dims};
}

TripartiteState random_classical_markov(DimSplit dims, std::uint64_t seed) {
  Rng rng(seed);
  const RealVector p_ab = random_distribution(dims.a * dims.b, rng);
  std::vector<RealVector> c_given_b;
  for (std::size_t b = 0; b < dims.b; ++b) c_given_b.push_back(random_distribution(dims.c, rng));
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (std::size_t a = 0; a < dims.a; ++a)
    for (std::size_t b = 0; b < dims.b; ++b)
      for (std::size_t c = 0; c < dims.c; ++c) {
        const auto idx = (a * dims.b + b) * dims.c + c;
        rho(idx, idx) = p_ab(a * dims.b + b) * c_given_b[b](c);
      }
  return {std::move(rho), dims};
}

}  // namespace vqmc
