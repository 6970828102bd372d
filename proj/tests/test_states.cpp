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
#include "vqmc/analysis.hpp"
#include "vqmc/markov.hpp"
#include "vqmc/states.hpp"

using namespace vqmc;

namespace {

ComplexMatrix qb(const TripartiteState& s, std::size_t i, std::size_t j) {
  return block_system(s).block_b(i, j);
}

ComplexMatrix outer(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("W state blocks") {
  const auto w = w_state(1.0 / 3, 1.0 / 3);
  CHECK((qb(w, 0, 1) - outer(2, 1, 0) / 3.0).norm() < 1e-14);
  const auto w4 = w_state(0.25, 0.25);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.25;
  CHECK((qb(w4, 0, 0) - diag).norm() < 1e-14);
  const auto prod = w_state(1.0, 0.0);
  CHECK((prod.rho() - pure_density(ket("001"))).norm() < 1e-14);
  CHECK_THROWS_AS(w_state(0.7, 0.5), NumericalError);
  CHECK_THROWS_AS(w_state(-0.1, 0.5), NumericalError);
}

TEST_CASE("GHZ state blocks") {
  const auto g = ghz_state();
  CHECK(qb(g, 0, 1).norm() < 1e-15);
  CHECK((qb(g, 0, 0) - outer(2, 0, 0) / 2.0).norm() < 1e-15);
  CHECK(std::abs(g.rho().trace() - 1.0) < 1e-15);
}

TEST_CASE("depolarizing") {
  const auto g = ghz_state();
  CHECK((depolarize(g, 0.0).rho() - g.rho()).norm() < 1e-15);
  CHECK((depolarize(g, 1.0).rho() - ComplexMatrix::Identity(8, 8) / 8.0).norm() < 1e-15);
  const double p = 0.5;
  const ComplexMatrix expected = (1 - p) / 2 * outer(2, 0, 0) + p / 4 * ComplexMatrix::Identity(2, 2);
  CHECK((qb(depolarize(g, p), 0, 0) - expected).norm() < 1e-15);
  CHECK_THROWS_AS(depolarize(g, 1.5), NumericalError);
}

TEST_CASE("GHZ-W mixture") {
  CHECK((ghz_w_mix(0.0).rho() - w_state(1.0 / 3, 1.0 / 3).rho()).norm() < 1e-14);
  CHECK((ghz_w_mix(1.0).rho() - ghz_state().rho()).norm() < 1e-14);
  const double p = 0.5;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = (1 - p) / 3;
  expected(1, 1) = p / 2;
  CHECK((qb(ghz_w_mix(p), 1, 1) - expected).norm() < 1e-14);
  CHECK_THROWS_AS(ghz_w_mix(-0.2), NumericalError);
}

TEST_CASE("named states") {
  const auto s1 = named_state("s1");
  CHECK(std::abs((s1.rho() * s1.rho()).trace() - 1.0) < 1e-14);
  const auto e = herm_eig(named_state("rho_s").rho());
  int rank = 0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) rank += e.values(k) > 1e-12;
  CHECK(rank == 2);
  CHECK((qb(named_state("psi2"), 0, 0) - 2.0 / 3 * outer(2, 1, 1)).norm() < 1e-14);
  CHECK_THROWS_AS(named_state("psi3"), NumericalError);
}

TEST_CASE("state validation") {
  ComplexMatrix m = ComplexMatrix::Identity(8, 8) / 8.0;
  CHECK_NOTHROW(TripartiteState(m, {2, 2, 2}));
  CHECK_THROWS_AS(TripartiteState(m, {2, 2, 3}), NumericalError);
  CHECK_THROWS_AS(TripartiteState(2.0 * m, {2, 2, 2}), NumericalError);
  ComplexMatrix neg = m;
  neg(0, 0) = -0.1;
  neg(1, 1) += 0.1 + 0.125;
  neg(2, 2) -= 0.125;
  CHECK_THROWS_AS(TripartiteState(neg, {2, 2, 2}), NumericalError);
  ComplexMatrix nh = m;
  nh(0, 1) = 0.1;
  CHECK_THROWS_AS(TripartiteState(nh, {2, 2, 2}), NumericalError);
}

TEST_CASE("random states") {
  const auto pure = random_state({2, 2, 2}, 1, 3);
  CHECK(std::abs((pure.rho() * pure.rho()).trace() - 1.0) < 1e-12);
  CHECK((random_state({2, 3, 2}, 4, 9).rho() - random_state({2, 3, 2}, 4, 9).rho()).norm() == 0.0);
  CHECK(herm_eig(random_state({2, 2, 2}, 8, 5).rho()).values(0) > 0.0);
  CHECK_THROWS_AS(random_state({2, 2, 2}, 0, 1), NumericalError);
  CHECK_THROWS_AS(random_state({2, 2, 2}, 9, 1), NumericalError);
}

TEST_CASE("classical on C states are dephased on C") {
  const auto s = random_classical_on_c({2, 2, 3}, 4);
  ComplexMatrix dephased = ComplexMatrix::Zero(12, 12);
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix p = kron(ComplexMatrix::Identity(4, 4), outer(3, k, k));
    dephased += p * s.rho() * p;
  }
  CHECK((dephased - s.rho()).norm() < 1e-14);
  const auto flat = random_classical_on_c({2, 2, 1}, 4);
  CHECK(flat.dims().c == 1);
}

TEST_CASE("random quantum Markov chains") {
  const auto prod_a = random_qmc({{1, 3, 1.0}}, 2, 2, 1);
  const ComplexMatrix rho_a = partial_trace(prod_a.rho(), {2, 3, 2}, {1, 2});
  CHECK((kron(rho_a, prod_a.rho_bc()) - prod_a.rho()).norm() < 1e-12);
  const auto prod_c = random_qmc({{3, 1, 1.0}}, 2, 2, 1);
  const ComplexMatrix rho_c = partial_trace(prod_c.rho(), {2, 3, 2}, {0, 1});
  CHECK((kron(prod_c.rho_ab(), rho_c) - prod_c.rho()).norm() < 1e-12);
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    CHECK(cmi(random_qmc({{1, 2, 0.4}, {2, 1, 0.6}}, 2, 2, seed)).cmi <= 1e-8);
  CHECK_THROWS_AS(random_qmc({{1, 2, 0.4}}, 2, 2, 0), NumericalError);
}

TEST_CASE("merged product") {
  const auto a = w_state(0.2, 0.3);
  const auto b = random_state({1, 2, 2}, 2, 8);
  const auto m = merged_product(a, b);
  CHECK(m.dims() == DimSplit{2, 4, 4});
  // Tracing the second copy's factors (A2, B2, C2) returns the first state.
  const ComplexMatrix first = partial_trace(m.rho(), {2, 1, 2, 2, 2, 2}, {1, 3, 5});
  CHECK((first - a.rho()).norm() < 1e-13);
}
