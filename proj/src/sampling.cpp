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

#include "vqmc/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <thread>

#include "vqmc/random.hpp"
#include "vqmc/recovery.hpp"

namespace vqmc {

std::size_t hoeffding_shots(double gamma, double observable_norm, double eps, double delta) {
  if (!(eps > 0.0)) throw std::invalid_argument("hoeffding_shots: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("hoeffding_shots: delta must lie in (0, 1)");
  if (!(gamma >= 0.0) || !(observable_norm >= 0.0))
    throw std::invalid_argument("hoeffding_shots: gamma and the observable norm must be nonnegative");
  const double n = 2.0 * gamma * gamma * observable_norm * observable_norm *
                   std::log(2.0 / delta) / (eps * eps);
  return static_cast<std::size_t>(std::ceil(n));
}

SamplingPlan make_plan(const sdp::OverheadResult& result, const ComplexMatrix& observable,
                       double eps, double delta, std::uint64_t seed, double weight_tol) {
  return make_plan(result.decomposition(), observable, eps, delta, seed, weight_tol);
}

SamplingPlan make_plan(const sdp::Decomposition& dec, const ComplexMatrix& observable, double eps,
                       double delta, std::uint64_t seed, double weight_tol) {
  const auto total = dec.in_dim * dec.out_dim;
  if (static_cast<std::size_t>(dec.j1.rows()) != total || static_cast<std::size_t>(dec.j2.rows()) != total)
    throw NumericalError("make_plan: Choi matrices do not match the decomposition dimensions");
  if (!is_hermitian(observable)) throw NumericalError("make_plan: observable is not Hermitian");
  SamplingPlan plan;
  plan.in_dim = dec.in_dim;
  plan.out_dim = dec.out_dim;
  plan.observable = hermitian_part(observable);
  const auto eig = herm_eig(plan.observable);
  plan.observable_norm = eig.values.cwiseAbs().maxCoeff();
  plan.eps = eps;
  plan.delta = delta;
  plan.seed = seed;

  const std::array<const ComplexMatrix*, 2> js{&dec.j1, &dec.j2};
  const std::array<double, 2> cs{dec.c1, dec.c2};
  double gamma = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    if (cs[i] <= weight_tol) continue;
    ComplexMatrix n = hermitian_part(*js[i]) / cs[i];
    const auto flags = check_flags(n, dec.in_dim, dec.out_dim, {tol::kHermitian, 1e-6, tol::kPsd});
    if (!flags.completely_positive || !flags.trace_preserving) {
      std::ostringstream os;
      os << "make_plan: normalized channel " << i + 1 << " is not CPTP (trace defect "
         << flags.trace_defect << ", min Choi eigenvalue " << flags.min_choi_eigenvalue << ")";
      throw NumericalError(os.str());
    }
    plan.channels.push_back(std::move(n));
    plan.signs.push_back(i == 0 ? 1 : -1);
    plan.channel_ids.push_back(i + 1);
    plan.probs.push_back(cs[i]);
    gamma += cs[i];
  }
  if (plan.channels.empty()) throw NumericalError("make_plan: both channel weights vanish");
  if (plan.channels.size() == 1) {
    // Trace preservation forces c1 - c2 = 1, so the surviving channel
    // carries unit weight.
    gamma = 1.0;
  }
  for (auto& p : plan.probs) p = plan.channels.size() == 1 ? 1.0 : p / gamma;
  plan.gamma = gamma;
  plan.shots = hoeffding_shots(gamma, plan.observable_norm, eps, delta);
  return plan;
}

namespace {

std::size_t draw(const std::vector<double>& cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

}  // namespace

SamplingReport run(const SamplingPlan& plan, const ComplexMatrix& rho_ab, bool keep_records,
                   std::size_t threads) {
  const auto n_in = static_cast<std::size_t>(rho_ab.rows());
  if (rho_ab.rows() != rho_ab.cols() || n_in % plan.in_dim != 0)
    throw NumericalError("run: rho_AB does not match the plan input dimension");
  const auto d_out = n_in / plan.in_dim * plan.out_dim;
  if (static_cast<std::size_t>(plan.observable.rows()) != d_out)
    throw NumericalError("run: observable does not match the recovered state dimension");

  const auto eig = herm_eig(plan.observable);
  SamplingReport report;
  report.shots = plan.shots;
  std::vector<std::vector<double>> cumulative(plan.channels.size());
  for (std::size_t i = 0; i < plan.channels.size(); ++i) {
    const auto map = LinearMap::from_choi(plan.channels[i], plan.in_dim, plan.out_dim);
    const ComplexMatrix sigma = apply_map(map, rho_ab);
    auto& cum = cumulative[i];
    double acc = 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      double p = (eig.vectors.col(k).adjoint() * sigma * eig.vectors.col(k))(0, 0).real();
      if (p < -kBornClip || p > 1.0 + kBornClip) {
        std::ostringstream os;
        os << "run: Born probability " << p << " for channel " << plan.channel_ids[i]
           << " lies outside [0, 1] beyond the clipping tolerance";
        throw NumericalError(os.str());
      }
      if (p < 0.0) {
        p = 0.0;
        ++report.clipped;
      }
      acc += p;
      cum.push_back(acc);
    }
    for (auto& c : cum) c /= acc;
  }
  std::vector<double> channel_cum(plan.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < plan.probs.size(); ++i) channel_cum[i] = (acc += plan.probs[i]);

  const std::size_t batches = (plan.shots + kShotBatch - 1) / kShotBatch;
  std::vector<double> sums(batches, 0.0), sq_sums(batches, 0.0);
  std::vector<ShotRecord> records(keep_records ? plan.shots : 0);
  const auto work = [&](std::size_t b) {
    auto rng = Rng::stream(plan.seed, b);
    const std::size_t begin = b * kShotBatch;
    const std::size_t end = std::min(plan.shots, begin + kShotBatch);
    for (std::size_t s = begin; s < end; ++s) {
      const auto ch = draw(channel_cum, rng.uniform());
      const auto k = draw(cumulative[ch], rng.uniform());
      const double lam = eig.values(k);
      const double v = plan.signs[ch] * plan.gamma * lam;
      sums[b] += v;
      sq_sums[b] += v * v;
      if (keep_records) records[s] = {s, plan.channel_ids[ch], lam, v};
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, batches);
  if (threads <= 1) {
    for (std::size_t b = 0; b < batches; ++b) work(b);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < batches; b += threads) work(b);
      });
    for (auto& th : pool) th.join();
  }
  double sum = 0.0, sq = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    sum += sums[b];
    sq += sq_sums[b];
  }
  const auto n = static_cast<double>(plan.shots);
  if (plan.shots > 0) {
    report.estimate = sum / n;
    report.variance = plan.shots > 1 ? std::max(0.0, (sq - n * report.estimate * report.estimate) / (n - 1)) : 0.0;
    report.std_error = std::sqrt(report.variance / n);
  }
  report.records = std::move(records);
  return report;
}

double exact_expectation(const TripartiteState& state, const ComplexMatrix& observable) {
  if (observable.rows() != state.rho().rows() || observable.cols() != state.rho().cols()) {
    std::ostringstream os;
    os << "exact_expectation: observable is " << observable.rows() << "x" << observable.cols()
       << ", state dimension is " << state.dim();
    throw NumericalError(os.str());
  }
  return (observable * state.rho()).trace().real();
}

ComplexMatrix pauli_observable(std::string_view spec) {
  if (spec.empty()) throw std::invalid_argument("pauli_observable: empty Pauli string");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  const Complex i(0.0, 1.0);
  for (char c : spec) {
    ComplexMatrix p(2, 2);
    switch (c) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -i, i, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: {
        std::ostringstream os;
        os << "pauli_observable: unknown Pauli '" << c << "' in \"" << spec << "\"";
        throw std::invalid_argument(os.str());
      }
    }
    out = kron(out, p);
  }
  return out;
}

}  // namespace vqmc
