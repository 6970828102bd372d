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

#include <array>
#include <cmath>
#include <iomanip>

#include "doctest.h"
#include "vqmc/recovery.hpp"
#include "vqmc/sdp/problems.hpp"
#include "vqmc/sdp/realify.hpp"
#include "vqmc/random.hpp"

using namespace vqmc;
using namespace vqmc::sdp;

namespace {

double min_eig(const ComplexMatrix& m) { return herm_eig(hermitian_part(m)).values(0); }

// tr_A[(K (x) I_B)(rho_AB^{T_B} (x) I_{B'C})] with factors ordered A B B'C,
// written out with explicit embeddings.
ComplexMatrix literal_adjoint(const TripartiteState& s, const ComplexMatrix& k) {
  const auto& d = s.dims();
  const auto nbc = d.b * d.c;
  const ComplexMatrix rt = partial_transpose(s.rho_ab(), {d.a, d.b}, 1);
  const ComplexMatrix rho_big = kron(rt, ComplexMatrix::Identity(nbc, nbc));
  // K lives on A B'C; insert I_B between A and B'C.
  const std::array<std::size_t, 3> dims{d.a, nbc, d.b};
  const std::array<std::size_t, 3> perm{0, 2, 1};
  const ComplexMatrix k_big =
      permute_subsystems(kron(k, ComplexMatrix::Identity(d.b, d.b)), dims, perm);
  return partial_trace(k_big * rho_big, {d.a, d.b, nbc}, {0});
}

void check_certificate(const TripartiteState& s, const OverheadResult& r) {
  const auto& d = s.dims();
  const auto nbc = d.b * d.c;
  const ComplexMatrix w = recovery_adjoint(s, r.k);
  const ComplexMatrix id = ComplexMatrix::Identity(nbc, nbc);
  CHECK(min_eig(kron(r.m, id) - w) >= -1e-6);
  CHECK(min_eig(kron(r.n, id) + w) >= -1e-6);
  CHECK(r.m.trace().real() <= 1.0 + 1e-6);
  CHECK(r.n.trace().real() <= 1.0 + 1e-6);
  // tr(K rho_ABC) is the dual value.
  CHECK((r.k * s.rho()).trace().real() == doctest::Approx(r.dual_value).epsilon(1e-5));
}

}  // namespace

TEST_CASE("recovery adjoint matches the literal partial-trace formula") {
  const auto s = random_state({2, 2, 3}, 4, 11);
  Rng rng(5);
  const ComplexMatrix g = rng.gaussian_matrix(12, 12);
  const ComplexMatrix k = hermitian_part(g);
  const ComplexMatrix w = recovery_adjoint(s, k);
  CHECK((w - literal_adjoint(s, k)).norm() < 1e-12);
  // Defining property against apply_choi for a random Choi matrix.
  const ComplexMatrix j = hermitian_part(rng.gaussian_matrix(2 * 6, 2 * 6));
  const ComplexMatrix out = apply_choi(j, 2, 6, s.rho_ab());
  CHECK(std::abs((k * out).trace() - (w * j).trace()) < 1e-12);
}

TEST_CASE("realification round trip and trace functional") {
  Rng rng(3);
  const ComplexMatrix h = hermitian_part(rng.gaussian_matrix(4, 4));
  const ComplexMatrix f = hermitian_part(rng.gaussian_matrix(4, 4));
  CHECK((fold(realify(h)) - h).norm() < 1e-14);
  CHECK((from_hermitian_coords(hermitian_coords(h), 4) - h).norm() < 1e-14);
  CHECK(hermitian_coords(h).dot(hermitian_coords(f)) ==
        doctest::Approx((h * f).trace().real()).epsilon(1e-12));
  CHECK(0.5 * (realify(f) * realify(h)).trace() ==
        doctest::Approx((f * h).trace().real()).epsilon(1e-12));
}

TEST_CASE("W state overhead is 3") {
  const auto s = w_state(1.0 / 3, 1.0 / 3);
  const auto r = sampling_overhead(s);
  CHECK(r.status == Status::kOptimal);
  CHECK(r.gamma == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(r.nu == doctest::Approx(std::log2(3.0)).epsilon(1e-3));
  CHECK(r.dual_value <= r.primal_value + 1e-7);
  CHECK(r.relative_gap <= 1e-6);
  const auto rep = check_decomposition(s, r.decomposition());
  CHECK(rep.feasible(1e-6));
  // tr_{B'C} J_i = c_i I_B, so tr J_i = c_i d_B.
  CHECK(std::abs(r.j1.trace().real() - 2.0 * r.c1) < 1e-6);
  CHECK(std::abs(r.j2.trace().real() - 2.0 * r.c2) < 1e-6);
  check_certificate(s, r);
}

TEST_CASE("depolarized W overhead stays at 3") {
  const auto s = depolarize(w_state(1.0 / 3, 1.0 / 3), 0.5);
  const auto r = sampling_overhead(s);
  CHECK(r.gamma == doctest::Approx(3.0).epsilon(1e-3));
  check_certificate(s, r);
}

TEST_CASE("quantum Markov chains have unit overhead") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = random_qmc({{1, 2, 0.5}, {1, 1, 0.5}}, 2, 2, seed);
    const auto r = sampling_overhead(s);
    CHECK(r.gamma == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(check_decomposition(s, r.decomposition()).feasible(1e-6));
  }
}

TEST_CASE("GHZ overhead is reported as not recoverable") {
  CHECK_THROWS_AS(sampling_overhead(ghz_state()), NotRecoverableError);
}

TEST_CASE("tensor construction is feasible for the joint problem") {
  const auto w = w_state(1.0 / 3, 1.0 / 3);
  const auto q = random_qmc({{1, 2, 1.0}}, 2, 2, 4);
  const auto rw = sampling_overhead(w);
  const auto rq = sampling_overhead(q);
  const auto joint = merged_product(w, q);
  const auto dec = tensor_decomposition(rw.decomposition(), w.dims(), rq.decomposition(), q.dims());
  CHECK(dec.c1 + dec.c2 == doctest::Approx(rw.gamma * rq.gamma).epsilon(1e-9));
  CHECK(check_decomposition(joint, dec).feasible(1e-6));
}

TEST_CASE("additivity on W and a Markov chain") {
  const auto r = additivity_check(w_state(1.0 / 3, 1.0 / 3), random_qmc({{1, 2, 1.0}}, 2, 2, 4));
  CHECK(r.defect <= 1e-3);
  CHECK(r.gamma_joint == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("additivity budget is enforced") {
  const auto s = random_state({2, 2, 4}, 2, 1);
  CHECK_THROWS_AS(additivity_check(s, s), std::invalid_argument);
}

TEST_CASE("approximate recoverability") {
  SUBCASE("zero for a VQMC in HPTP mode") {
    const auto r = approx_recoverability(w_state(0.2, 0.3), ApproxMode::kHptp);
    CHECK(std::abs(r.sdp_value) <= 1e-6);
    CHECK(r.map().flags().trace_preserving);
  }
  SUBCASE("maximally mixed is recoverable in both modes") {
    const auto s = depolarize(ghz_state(), 1.0);
    CHECK(std::abs(approx_recoverability(s, ApproxMode::kHptp).sdp_value) <= 1e-6);
    CHECK(std::abs(approx_recoverability(s, ApproxMode::kCptp).sdp_value) <= 1e-6);
  }
  SUBCASE("HPTP is no worse than CPTP") {
    const auto s = depolarize(ghz_state(), 0.3);
    const auto h = approx_recoverability(s, ApproxMode::kHptp);
    const auto c = approx_recoverability(s, ApproxMode::kCptp);
    CHECK(h.sdp_value <= c.sdp_value + 1e-6);
    CHECK(c.map().flags().completely_positive);
    CHECK(h.eps_report == doctest::Approx(2 * h.sdp_value));
  }
  SUBCASE("GHZ value") {
    const auto s = ghz_state();
    const auto h = approx_recoverability(s, ApproxMode::kHptp);
    MESSAGE("ghz hptp " << std::setprecision(17) << h.sdp_value << " cptp "
                        << approx_recoverability(s, ApproxMode::kCptp).sdp_value);
    CHECK(h.sdp_value > 0.0);
  }
}
