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

// Infeasible-start primal-dual interior point method for real SDPs with
// free variables. Search direction is HKM (X dZ Z^{-1}); each iteration
// takes a Mehrotra predictor and a corrector step sharing one Schur
// complement factorization.

#include "vqmc/sdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vqmc::sdp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kMaxIter: return "max_iter";
  }
  return "unknown";
}

void validate(const Problem& problem) {
  if (problem.constraints.size() != problem.rhs.size())
    throw std::invalid_argument("sdp: constraint and rhs counts differ");
  const auto check = [&](const Functional& f, const char* what) {
    for (const auto& t : f.terms) {
      if (t.block >= problem.blocks.size())
        throw std::invalid_argument(std::string("sdp: ") + what + " references a missing block");
      const auto& b = problem.blocks[t.block];
      const bool ok = b.cone == Cone::kPsd ? (t.row < b.dim && t.col < b.dim)
                                           : (t.row < b.dim && t.col == 0);
      if (!ok) throw std::invalid_argument(std::string("sdp: ") + what + " term out of range");
      if (!std::isfinite(t.value))
        throw std::invalid_argument(std::string("sdp: ") + what + " has a non-finite coefficient");
    }
  };
  for (const auto& b : problem.blocks)
    if (b.dim == 0) throw std::invalid_argument("sdp: empty block");
  check(problem.objective, "objective");
  for (const auto& c : problem.constraints) check(c, "constraint");
  for (double b : problem.rhs)
    if (!std::isfinite(b)) throw std::invalid_argument("sdp: non-finite rhs");
}

namespace {

struct Entry {
  std::uint32_t r;
  std::uint32_t c;
  double v;
};

// Sparse symmetric coefficient matrix, both triangles stored.
using SparseSym = std::vector<Entry>;

struct RowPart {
  std::uint32_t row;
  SparseSym entries;
};

class Ipm {
 public:
  Ipm(const Problem& p, const Options& o) : opt_(o) {
    validate(p);
    m_ = p.constraints.size();
    block_slot_.resize(p.blocks.size());
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      const auto& b = p.blocks[k];
      if (b.cone == Cone::kPsd) {
        block_slot_[k] = psd_dims_.size();
        psd_dims_.push_back(b.dim);
      } else {
        block_slot_[k] = n_free_;
        n_free_ += b.dim;
      }
    }
    blocks_ = p.blocks;
    const auto nb = psd_dims_.size();
    c_.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) c_[k] = RealMatrix::Zero(psd_dims_[k], psd_dims_[k]);
    c_free_ = RealVector::Zero(n_free_);
    for (const auto& t : p.objective.terms) add_term(t, c_, c_free_);

    parts_.assign(nb, {});
    a_free_full_ = RealMatrix::Zero(m_, n_free_);
    b_ = RealVector(m_);
    row_scale_ = RealVector(m_);
    std::vector<std::vector<SparseSym>> per_block(m_, std::vector<SparseSym>(nb));
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& t : p.constraints[i].terms) {
        const auto& blk = p.blocks[t.block];
        const auto slot = block_slot_[t.block];
        if (blk.cone == Cone::kFree) {
          a_free_full_(i, slot + t.row) += t.value;
        } else if (t.row == t.col) {
          per_block[i][slot].push_back({t.row, t.col, t.value});
        } else {
          per_block[i][slot].push_back({t.row, t.col, 0.5 * t.value});
          per_block[i][slot].push_back({t.col, t.row, 0.5 * t.value});
        }
      }
      double norm2 = a_free_full_.row(i).squaredNorm();
      for (auto& s : per_block[i]) {
        merge(s);
        for (const auto& e : s) norm2 += e.v * e.v;
      }
      const double scale = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 1.0;
      if (norm2 == 0 && p.rhs[i] != 0) zero_row_inconsistent_ = true;
      row_scale_(i) = scale;
      b_(i) = p.rhs[i] * scale;
      a_free_full_.row(i) *= scale;
      for (std::size_t k = 0; k < nb; ++k) {
        if (per_block[i][k].empty()) continue;
        for (auto& e : per_block[i][k]) e.v *= scale;
        parts_[k].push_back({static_cast<std::uint32_t>(i), std::move(per_block[i][k])});
      }
    }
    reduce_free_variables();
    n_total_ = 0;
    for (auto d : psd_dims_) n_total_ += d;
  }

  Solution run();

 private:
  static void merge(SparseSym& s) {
    std::sort(s.begin(), s.end(), [](const Entry& a, const Entry& b) {
      return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    SparseSym out;
    for (const auto& e : s) {
      if (!out.empty() && out.back().r == e.r && out.back().c == e.c) out.back().v += e.v;
      else out.push_back(e);
    }
    std::erase_if(out, [](const Entry& e) { return e.v == 0.0; });
    s = std::move(out);
  }

  void add_term(const Term& t, std::vector<RealMatrix>& mats, RealVector& free) const {
    const auto slot = block_slot_[t.block];
    if (blocks_[t.block].cone == Cone::kFree) {
      free(slot + t.row) += t.value;
    } else if (t.row == t.col) {
      mats[slot](t.row, t.col) += t.value;
    } else {
      mats[slot](t.row, t.col) += 0.5 * t.value;
      mats[slot](t.col, t.row) += 0.5 * t.value;
    }
  }

  // Free directions invisible to both constraints and objective carry no
  // information; restrict free variables to the complementary subspace so the
  // KKT system stays nonsingular.
  void reduce_free_variables() {
    if (n_free_ == 0) {
      free_basis_ = RealMatrix(0, 0);
      a_free_ = RealMatrix(m_, 0);
      return;
    }
    RealMatrix stacked(m_ + 1, n_free_);
    stacked << a_free_full_, c_free_.transpose();
    Eigen::JacobiSVD<RealMatrix> s(stacked, Eigen::ComputeFullV);
    const auto& sv = s.singularValues();
    std::size_t rank = 0;
    const double smax = sv.size() ? sv(0) : 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-12 * smax) ++rank;
    free_basis_ = s.matrixV().leftCols(rank);
    a_free_ = a_free_full_ * free_basis_;
    c_free_red_ = free_basis_.transpose() * c_free_;
  }

  RealVector apply_a(const std::vector<RealMatrix>& x, const RealVector& t) const {
    RealVector out = a_free_ * t;
    for (std::size_t k = 0; k < parts_.size(); ++k)
      for (const auto& part : parts_[k]) {
        double s = 0.0;
        for (const auto& e : part.entries) s += e.v * x[k](e.r, e.c);
        out(part.row) += s;
      }
    return out;
  }

  std::vector<RealMatrix> apply_at(const RealVector& y) const {
    std::vector<RealMatrix> out(psd_dims_.size());
    for (std::size_t k = 0; k < psd_dims_.size(); ++k) {
      out[k] = RealMatrix::Zero(psd_dims_[k], psd_dims_[k]);
      for (const auto& part : parts_[k]) {
        const double yi = y(part.row);
        if (yi == 0.0) continue;
        for (const auto& e : part.entries) out[k](e.r, e.c) += yi * e.v;
      }
    }
    return out;
  }

  static double inner(const std::vector<RealMatrix>& a, const std::vector<RealMatrix>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
    return s;
  }

  static RealMatrix sym(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

  // Schur complement M_ij = <A_i, X A_j Z^{-1}>, lower triangle then mirrored.
  RealMatrix schur(const std::vector<RealMatrix>& x, const std::vector<RealMatrix>& zinv) const {
    RealMatrix m = RealMatrix::Zero(m_, m_);
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      const auto n = psd_dims_[k];
      const auto& parts = parts_[k];
      std::vector<std::int64_t> col_index(n, -1);
      for (std::size_t jp = 0; jp < parts.size(); ++jp) {
        const auto& aj = parts[jp].entries;
        std::vector<std::uint32_t> cols;
        for (const auto& e : aj)
          if (col_index[e.c] < 0) {
            col_index[e.c] = static_cast<std::int64_t>(cols.size());
            cols.push_back(e.c);
          }
        RealMatrix w = RealMatrix::Zero(n, cols.size());
        for (const auto& e : aj) w.col(col_index[e.c]) += e.v * x[k].col(e.r);
        RealMatrix zrows(cols.size(), n);
        for (std::size_t q = 0; q < cols.size(); ++q) zrows.row(q) = zinv[k].row(cols[q]);
        for (auto c : cols) col_index[c] = -1;
        const RealMatrix g = w * zrows;  // X A_j Z^{-1}
        const auto j = parts[jp].row;
        for (std::size_t ip = jp; ip < parts.size(); ++ip) {
          double s = 0.0;
          for (const auto& e : parts[ip].entries) s += e.v * g(e.r, e.c);
          m(parts[ip].row, j) += s;
        }
      }
    }
    // Rows are sorted within each block, so every block wrote into
    // m(i, j) with i >= j.
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j) m(i, j) = m(j, i);
    return m;
  }

  // Max step keeping X + alpha dX positive definite.
  static double max_step(const RealMatrix& x, const RealMatrix& dx) {
    Eigen::LLT<RealMatrix> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    RealMatrix s = llt.matrixL().solve(dx);
    s = llt.matrixL().solve(s.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(s), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
  }

  struct Factor {
    bool with_free = false;
    Eigen::LLT<RealMatrix> llt;
    Eigen::PartialPivLU<RealMatrix> lu;
    bool ok = true;
  };

  Factor factorize(RealMatrix m) const {
    Factor f;
    if (a_free_.cols() == 0) {
      const double diag = std::max(m.diagonal().maxCoeff(), 1e-300);
      for (double reg : {0.0, 1e-14, 1e-12, 1e-10}) {
        if (reg > 0) m.diagonal().array() += reg * diag;
        f.llt.compute(m);
        if (f.llt.info() == Eigen::Success) return f;
      }
      f.ok = false;
      return f;
    }
    f.with_free = true;
    const auto nf = a_free_.cols();
    RealMatrix kkt = RealMatrix::Zero(m_ + nf, m_ + nf);
    kkt.topLeftCorner(m_, m_) = m;
    kkt.topRightCorner(m_, nf) = a_free_;
    kkt.bottomLeftCorner(nf, m_) = a_free_.transpose();
    f.lu.compute(kkt);
    return f;
  }

  void solve_kkt(const Factor& f, const RealVector& h, const RealVector& rf, RealVector& dy,
                 RealVector& dt) const {
    if (!f.with_free) {
      dy = f.llt.solve(h);
      dt = RealVector(0);
      return;
    }
    RealVector rhs(m_ + rf.size());
    rhs << h, rf;
    const RealVector sol = f.lu.solve(rhs);
    dy = sol.head(m_);
    dt = sol.tail(rf.size());
  }

  const Options opt_;
  std::size_t m_ = 0;
  std::size_t n_free_ = 0;
  std::size_t n_total_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_slot_;
  std::vector<std::size_t> psd_dims_;
  std::vector<RealMatrix> c_;
  RealVector c_free_;
  RealVector c_free_red_;
  std::vector<std::vector<RowPart>> parts_;
  RealMatrix a_free_full_;
  RealMatrix a_free_;
  RealMatrix free_basis_;
  RealVector b_;
  RealVector row_scale_;
  bool zero_row_inconsistent_ = false;
};

Solution Ipm::run() {
  Solution sol;
  const auto nb = psd_dims_.size();
  const auto nf = static_cast<std::size_t>(a_free_.cols());

  const auto finish = [&](Status st, const std::vector<RealMatrix>& x, const RealVector& t,
                          const std::vector<RealMatrix>& z, const RealVector& y,
                          std::string message) {
    sol.status = st;
    sol.message = std::move(message);
    sol.x.clear();
    sol.z.clear();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto slot = block_slot_[k];
      if (blocks_[k].cone == Cone::kPsd) {
        sol.x.push_back(x[slot]);
        sol.z.push_back(z[slot]);
      } else {
        const RealVector full = nf ? RealVector(free_basis_ * t) : RealVector::Zero(n_free_);
        sol.x.push_back(full.segment(slot, blocks_[k].dim));
        sol.z.emplace_back();
      }
    }
    sol.y = y.cwiseProduct(row_scale_);
    return sol;
  };

  std::vector<RealMatrix> x(nb), z(nb);
  double c_norm2 = c_free_.squaredNorm();
  for (std::size_t k = 0; k < nb; ++k) c_norm2 += c_[k].squaredNorm();
  const double c_norm = std::sqrt(c_norm2);
  const double b_norm = b_.norm();
  for (std::size_t k = 0; k < nb; ++k) {
    const auto n = static_cast<double>(psd_dims_[k]);
    double xi = std::max(10.0, std::sqrt(n));
    double eta = std::max({10.0, std::sqrt(n), c_[k].norm()});
    for (const auto& part : parts_[k]) {
      double an = 0.0;
      for (const auto& e : part.entries) an += e.v * e.v;
      an = std::sqrt(an);
      xi = std::max(xi, n * (1.0 + std::abs(b_(part.row))) / (1.0 + an));
      eta = std::max(eta, an);
    }
    x[k] = xi * RealMatrix::Identity(psd_dims_[k], psd_dims_[k]);
    z[k] = eta * RealMatrix::Identity(psd_dims_[k], psd_dims_[k]);
  }
  RealVector y = RealVector::Zero(m_);
  RealVector t = RealVector::Zero(nf);

  if (zero_row_inconsistent_) {
    return finish(Status::kInfeasible, x, t, z, y, "a constraint with no terms has nonzero rhs");
  }

  double step_factor = 0.9;
  int stall = 0;
  for (std::size_t iter = 0; iter < opt_.max_iter; ++iter) {
    sol.iterations = iter;
    const RealVector rp = b_ - apply_a(x, t);
    const auto aty = apply_at(y);
    std::vector<RealMatrix> rd(nb);
    double rd_norm2 = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      rd[k] = c_[k] - z[k] - aty[k];
      rd_norm2 += rd[k].squaredNorm();
    }
    const RealVector rf = nf ? RealVector(c_free_red_ - a_free_.transpose() * y) : RealVector(0);
    rd_norm2 += rf.squaredNorm();

    double pobj = inner(c_, x) + (nf ? c_free_red_.dot(t) : 0.0);
    const double dobj = b_.dot(y);
    sol.primal_value = pobj;
    sol.dual_value = dobj;
    sol.gap = std::abs(pobj - dobj);
    sol.relative_gap = sol.gap / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    sol.dual_infeasibility = std::sqrt(rd_norm2) / (1.0 + c_norm);
    const double mu = inner(x, z) / static_cast<double>(n_total_ ? n_total_ : 1);

    if (opt_.verbosity > 0) {
      std::fprintf(stderr, "%4zu pobj %+.10e dobj %+.10e gap %.2e pinf %.2e dinf %.2e mu %.2e\n",
                   iter, pobj, dobj, sol.relative_gap, sol.primal_infeasibility,
                   sol.dual_infeasibility, mu);
    }
    if (sol.relative_gap <= opt_.gap_tol && sol.primal_infeasibility <= opt_.feas_tol &&
        sol.dual_infeasibility <= opt_.feas_tol) {
      return finish(Status::kOptimal, x, t, z, y, "converged");
    }
    // Divergence tests: a dual ray with b.y > 0 and -A^T y >= 0 certifies
    // primal infeasibility; a primal ray with <C, X> < 0 and A(X) = 0
    // certifies dual infeasibility.
    if (dobj > opt_.divergence) {
      const auto ray = apply_at(y / dobj);
      double worst = 0.0;
      for (const auto& r : ray) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(-r), Eigen::EigenvaluesOnly);
        worst = std::min(worst, es.eigenvalues()(0));
      }
      const double free_viol = nf ? (a_free_.transpose() * (y / dobj)).norm() : 0.0;
      if (worst > -1e-6 && free_viol < 1e-6)
        return finish(Status::kInfeasible, x, t, z, y, "dual objective diverged along a Farkas ray");
    }
    if (pobj < -opt_.divergence) {
      std::vector<RealMatrix> xs(nb);
      for (std::size_t k = 0; k < nb; ++k) xs[k] = x[k] / -pobj;
      if ((apply_a(xs, t / -pobj)).norm() < 1e-6)
        return finish(Status::kUnbounded, x, t, z, y, "primal objective diverged along a recession ray");
    }

    std::vector<RealMatrix> zinv(nb);
    bool bad = false;
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<RealMatrix> llt(z[k]);
      if (llt.info() != Eigen::Success) {
        bad = true;
        break;
      }
      zinv[k] = llt.solve(RealMatrix::Identity(psd_dims_[k], psd_dims_[k]));
    }
    if (bad) return finish(Status::kMaxIter, x, t, z, y, "dual slack lost definiteness");

    const auto factor = factorize(schur(x, zinv));
    if (!factor.ok) return finish(Status::kMaxIter, x, t, z, y, "Schur complement factorization failed");

    // Direction for centering sigma with optional second-order term.
    const auto direction = [&](double sigma, const std::vector<RealMatrix>* dx_aff,
                               const std::vector<RealMatrix>* dz_aff, std::vector<RealMatrix>& dx,
                               RealVector& dy, std::vector<RealMatrix>& dz, RealVector& dt) {
      std::vector<RealMatrix> base(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        base[k] = sigma * mu * zinv[k] - x[k] - x[k] * rd[k] * zinv[k];
        if (dx_aff) base[k] -= (*dx_aff)[k] * (*dz_aff)[k] * zinv[k];
        base[k] = sym(base[k]);
      }
      const RealVector h = rp - apply_a(base, RealVector::Zero(nf));
      solve_kkt(factor, h, rf, dy, dt);
      const auto atdy = apply_at(dy);
      dx.resize(nb);
      dz.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = rd[k] - atdy[k];
        RealMatrix d = sigma * mu * zinv[k] - x[k] - x[k] * dz[k] * zinv[k];
        if (dx_aff) d -= (*dx_aff)[k] * (*dz_aff)[k] * zinv[k];
        dx[k] = sym(d);
      }
    };
    const auto steps = [&](const std::vector<RealMatrix>& dx, const std::vector<RealMatrix>& dz) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = ap;
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(x[k], dx[k]));
        ad = std::min(ad, max_step(z[k], dz[k]));
      }
      return std::pair{ap, ad};
    };

    std::vector<RealMatrix> dx_aff, dz_aff, dx, dz;
    RealVector dy_aff, dt_aff, dy, dt;
    direction(0.0, nullptr, nullptr, dx_aff, dy_aff, dz_aff, dt_aff);
    auto [ap_aff, ad_aff] = steps(dx_aff, dz_aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      mu_aff += (x[k] + ap_aff * dx_aff[k]).cwiseProduct(z[k] + ad_aff * dz_aff[k]).sum();
    mu_aff /= static_cast<double>(n_total_ ? n_total_ : 1);
    const double ratio = mu > 0 ? std::clamp(mu_aff / mu, 0.0, 1.0) : 0.0;
    const double sigma = std::pow(ratio, ratio > 0.2 ? 2 : 3);

    direction(sigma, &dx_aff, &dz_aff, dx, dy, dz, dt);
    auto [ap, ad] = steps(dx, dz);
    ap = std::min(1.0, step_factor * ap);
    ad = std::min(1.0, step_factor * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad) || !dy.allFinite())
      return finish(Status::kMaxIter, x, t, z, y, "non-finite search direction");

    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + ap * dx[k]);
      z[k] = sym(z[k] + ad * dz[k]);
    }
    if (nf) t += ap * dt;
    y += ad * dy;
    step_factor = 0.9 + 0.09 * std::min(ap, ad);

    if (std::max(ap, ad) < 1e-9) {
      if (++stall >= 5)
        return finish(Status::kMaxIter, x, t, z, y, "stalled: step lengths vanished");
    } else {
      stall = 0;
    }
  }
  return finish(Status::kMaxIter, x, t, z, y, "iteration cap reached");
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  Ipm ipm(problem, options);
  return ipm.run();
}

}  // namespace vqmc::sdp
