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

#include <cmath>

#include "doctest.h"
#include "vqmc/markov.hpp"
#include "vqmc/random.hpp"
#include "vqmc/states.hpp"

using namespace vqmc;

namespace {

// Least-squares oracle: the recovery equations X mat_b = mat_bc are solvable
// exactly when the minimum residual vanishes.
bool lstsq_solvable(const TripartiteState& s) {
  const auto sys = block_system(s);
  const ComplexMatrix at = sys.mat_b.transpose();
  const ComplexMatrix bt = sys.mat_bc.transpose();
  const ComplexMatrix x = at.completeOrthogonalDecomposition().solve(bt);
  return (at * x - bt).norm() <= 1e-8 * std::max(1.0, bt.norm());
}

TripartiteState local_rotation(const TripartiteState& s, std::uint64_t seed) {
  Rng rng(seed);
  const auto& d = s.dims();
  const ComplexMatrix u =
      kron(kron(random_unitary(d.a, rng), random_unitary(d.b, rng)), random_unitary(d.c, rng));
  return TripartiteState(hermitian_part(u * s.rho() * u.adjoint()), d);
}

}  // namespace

TEST_CASE("block system layout") {
  const auto s = random_state({2, 3, 2}, 3, 11);
  const auto sys = block_system(s);
  CHECK(sys.mat_b.rows() == 9);
  CHECK(sys.mat_b.cols() == 4);
  CHECK(sys.mat_bc.rows() == 36);
  const ComplexMatrix q01 = s.rho().block(0, 6, 6, 6);
  CHECK((sys.block_bc(0, 1) - q01).norm() < 1e-14);
  CHECK((sys.block_b(0, 1) - partial_trace(q01, {3, 2}, {1})).norm() < 1e-14);
  CHECK((trace_c_superop(3, 2) * sys.mat_bc - sys.mat_b).norm() < 1e-13);
}

TEST_CASE("verdicts on reference states") {
  const auto w = is_vqmc(w_state(1.0 / 3, 1.0 / 3));
  CHECK(w.is_vqmc);
  CHECK(w.rank_b == 4);
  CHECK(w.rank_bc == 4);
  const auto g = is_vqmc(ghz_state());
  CHECK_FALSE(g.is_vqmc);
  CHECK(g.rank_b == 2);
  CHECK(g.rank_bc == 4);
  CHECK(g.kernel_dim_b == 2);
  CHECK(g.kernel_dim_bc == 0);
  CHECK(is_vqmc(depolarize(w_state(1.0 / 3, 1.0 / 3), 0.4)).is_vqmc);
  CHECK_FALSE(is_vqmc(depolarize(ghz_state(), 0.4)).is_vqmc);
  CHECK(is_vqmc(depolarize(ghz_state(), 1.0)).is_vqmc);
  CHECK(is_vqmc(ghz_w_mix(0.25)).is_vqmc);
  CHECK_FALSE(is_vqmc(ghz_w_mix(7.0 - 3.0 * std::sqrt(5.0))).is_vqmc);
  CHECK_FALSE(is_vqmc(ghz_w_mix(1.0)).is_vqmc);
  CHECK(is_vqmc(named_state("s1")).is_vqmc);
  CHECK(is_vqmc(named_state("s2")).is_vqmc);
  const auto mix = is_vqmc(named_state("rho_s"));
  CHECK_FALSE(mix.is_vqmc);
  CHECK(mix.rank_b == 2);
  CHECK(mix.rank_bc == 4);
  CHECK_FALSE(is_vqmc(named_state("psi1")).is_vqmc);
  CHECK(is_vqmc(named_state("psi2")).is_vqmc);
}

TEST_CASE("QMC and classical families are VQMC") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto q = random_qmc({{1, 2, 0.5}, {2, 1, 0.5}}, 2, 2, seed);
    CHECK(is_vqmc(q).is_vqmc);
    CHECK(is_qmc(q));
    CHECK(is_vqmc(random_classical_on_c({2, 2, 3}, seed)).is_vqmc);
    CHECK(is_vqmc(random_classical_markov({2, 3, 2}, seed)).is_vqmc);
  }
  CHECK_FALSE(is_qmc(w_state(1.0 / 3, 1.0 / 3)));
}

TEST_CASE("classical on C with d_A > d_B is not VQMC in general") {
  // span{Q_B} has dimension at most d_B^2 = 4 while span{Q_BC} reaches 8, and
  // no linear map on B raises the dimension of a span.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_classical_on_c({3, 2, 2}, seed);
    const auto v = is_vqmc(s);
    CHECK(v.rank_b == 4);
    CHECK(v.rank_bc == 8);
    CHECK_FALSE(v.is_vqmc);
    CHECK_FALSE(lstsq_solvable(s));
  }
}

TEST_CASE("rank test agrees with a least-squares oracle") {
  int positives = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = seed % 2 == 0
                       ? random_state({2, 2, 2}, 1 + seed % 8, seed)
                       : local_rotation(depolarize(ghz_state(), 0.9 * (seed % 10) / 10.0), seed);
    const bool oracle = lstsq_solvable(s);
    CHECK(is_vqmc(s).is_vqmc == oracle);
    positives += oracle;
  }
  CHECK(positives > 0);
  CHECK(positives < 50);
}

TEST_CASE("kernel basis") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  const ComplexMatrix k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).norm() < 1e-14);
  CHECK(std::abs(k.norm() - 1.0) < 1e-14);
}
