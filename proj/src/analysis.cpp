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

#include "vqmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vqmc/recovery.hpp"

namespace vqmc {

namespace {

constexpr double kEntropyCutoff = 1e-12;

void require_state(const ComplexMatrix& m, const char* what) {
  const auto e = herm_eig(m);
  if (e.values.size() > 0 && e.values(0) < -tol::kPsd) {
    std::ostringstream os;
    os << what << ": negative eigenvalue " << e.values(0);
    throw NumericalError(os.str());
  }
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto e = herm_eig(rho);
  if (e.values.size() > 0 && e.values(0) < -tol::kPsd) {
    std::ostringstream os;
    os << "von_neumann_entropy: negative eigenvalue " << e.values(0);
    throw NumericalError(os.str());
  }
  double s = 0.0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    const double lam = e.values(k);
    if (lam > kEntropyCutoff) s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

EntropyReport cmi(const TripartiteState& state) {
  const auto& d = state.dims();
  EntropyReport r;
  r.s_abc = von_neumann_entropy(state.rho());
  r.s_ab = von_neumann_entropy(state.rho_ab());
  r.s_bc = von_neumann_entropy(state.rho_bc());
  r.s_b = von_neumann_entropy(state.rho_b());
  r.s_a = von_neumann_entropy(partial_trace(state.rho(), {d.a, d.b, d.c}, {1, 2}));
  r.cmi = r.s_ab + r.s_bc - r.s_b - r.s_abc;
  return r;
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw NumericalError("fidelity: dimension mismatch");
  require_state(rho, "fidelity");
  require_state(sigma, "fidelity");
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix inner = hermitian_part(root * sigma * root);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(inner, Eigen::EigenvaluesOnly);
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

FawziRennerReport fawzi_renner_check(const TripartiteState& state) {
  const auto& d = state.dims();
  const auto petz = petz_map(state.rho_bc(), d.b, d.c);
  const ComplexMatrix recovered = hermitian_part(apply_map(petz, state.rho_ab()));
  FawziRennerReport r;
  r.lhs = cmi(state).cmi;
  // Petz output is trace non-increasing; fidelity is evaluated as is.
  const double f = fidelity(state.rho(), recovered);
  r.rhs = f > 0 ? -std::log2(f) : std::numeric_limits<double>::infinity();
  r.holds = r.lhs >= r.rhs - 1e-8;
  return r;
}

}  // namespace vqmc
