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

#include "vqmc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "vqmc/analysis.hpp"
#include "vqmc/io.hpp"
#include "vqmc/markov.hpp"
#include "vqmc/recovery.hpp"
#include "vqmc/sampling.hpp"
#include "vqmc/sdp/problems.hpp"

namespace vqmc::cli {

namespace {

using io::Json;
using io::format_double;

/// A flat record rendered as a JSON object or a one-row CSV table.
class Record {
 public:
  void set(const std::string& key, Json value, std::string csv) {
    keys_.push_back(key);
    json_[key] = std::move(value);
    csv_.push_back(std::move(csv));
  }
  void num(const std::string& key, double v) {
    set(key, std::isfinite(v) ? Json(v) : Json(format_double(v)), format_double(v));
  }
  void integer(const std::string& key, std::int64_t v) { set(key, v, std::to_string(v)); }
  void boolean(const std::string& key, bool v) { set(key, v, v ? "true" : "false"); }
  void text(const std::string& key, const std::string& v) { set(key, v, v); }
  /// JSON-only payload (matrices, certificates).
  void extra(const std::string& key, Json value) { json_[key] = std::move(value); }

  const Json& json() const { return json_; }
  std::string csv_header() const { return join(keys_); }
  std::string csv_row() const { return join(csv_); }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  }
  std::vector<std::string> keys_;
  std::vector<std::string> csv_;
  Json json_ = Json::object();
};

std::string render(const std::vector<Record>& rows, const std::string& format, bool as_table) {
  if (format == "csv") {
    std::string s = rows.empty() ? "" : rows.front().csv_header() + "\n";
    for (const auto& r : rows) s += r.csv_row() + "\n";
    return s;
  }
  if (!as_table) return rows.front().json().dump(2) + "\n";
  Json arr = Json::array();
  for (const auto& r : rows) arr.push_back(r.json());
  return arr.dump(2) + "\n";
}

void add_verdict(Record& r, const VqmcVerdict& v) {
  r.boolean("is_vqmc", v.is_vqmc);
  r.integer("rank_b", static_cast<std::int64_t>(v.rank_b));
  r.integer("rank_bc", static_cast<std::int64_t>(v.rank_bc));
  r.integer("kernel_dim_b", static_cast<std::int64_t>(v.kernel_dim_b));
  r.integer("kernel_dim_bc", static_cast<std::int64_t>(v.kernel_dim_bc));
  r.num("singular_gap", v.singular_gap);
  r.num("min_retained_ratio", v.min_retained_ratio);
  r.num("rank_tol", v.rank_tol);
}

std::string near_threshold_warning(const VqmcVerdict& v) {
  std::ostringstream os;
  os << "warning: rank decision is close to the threshold (singular_gap " << format_double(v.singular_gap)
     << ", min_retained_ratio " << format_double(v.min_retained_ratio) << ", rank_tol "
     << format_double(v.rank_tol) << "); a different --tol may change the verdict";
  return os.str();
}

sdp::ProblemOptions problem_options(const RunConfig& c) {
  sdp::ProblemOptions o;
  o.solver = c.solver;
  o.rank_tol = c.rank_tol;
  return o;
}

void require_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv")
    throw io::InputError("--format must be csv or json, got '" + c.format + "'");
  if (!(c.rank_tol > 0)) throw io::InputError("--tol must be positive");
  if (!(c.solver.gap_tol > 0) || !(c.solver.feas_tol > 0))
    throw io::InputError("solver tolerances must be positive");
}

sdp::ApproxMode parse_mode(const std::string& m) {
  if (m == "hptp") return sdp::ApproxMode::kHptp;
  if (m == "cptp") return sdp::ApproxMode::kCptp;
  throw io::InputError("--mode must be hptp or cptp, got '" + m + "'");
}

CommandResult cmd_check(const RunConfig& c) {
  const auto state = resolve_state(c);
  const auto v = is_vqmc(state, c.rank_tol);
  const auto e = cmi(state);
  Record r;
  add_verdict(r, v);
  r.boolean("is_qmc", is_qmc(state));
  r.num("cmi", e.cmi);
  r.num("s_a", e.s_a);
  r.num("s_b", e.s_b);
  r.num("s_ab", e.s_ab);
  r.num("s_bc", e.s_bc);
  r.num("s_abc", e.s_abc);
  CommandResult out;
  out.exit_code = v.is_vqmc ? kSuccess : kNegative;
  out.report = render({r}, c.format, false);
  if (v.near_threshold()) out.warnings.push_back(near_threshold_warning(v));
  return out;
}

CommandResult cmd_overhead(const RunConfig& c) {
  const auto state = resolve_state(c);
  CommandResult out;
  Record r;
  try {
    const auto res = sdp::sampling_overhead(state, problem_options(c));
    r.text("status", sdp::to_string(res.status));
    r.num("gamma", res.gamma);
    r.num("nu", res.nu);
    r.num("c1", res.c1);
    r.num("c2", res.c2);
    r.num("primal_value", res.primal_value);
    r.num("dual_value", res.dual_value);
    r.num("gap", res.gap);
    r.num("relative_gap", res.relative_gap);
    r.integer("iterations", static_cast<std::int64_t>(res.iterations));
    add_verdict(r, res.verdict);
    r.extra("certificates", Json{{"J1", io::matrix_to_json(res.j1)},
                                 {"J2", io::matrix_to_json(res.j2)},
                                 {"K", io::matrix_to_json(res.k)},
                                 {"M", io::matrix_to_json(res.m)},
                                 {"N", io::matrix_to_json(res.n)}});
    if (res.verdict.near_threshold()) out.warnings.push_back(near_threshold_warning(res.verdict));
  } catch (const NotRecoverableError& e) {
    r.text("status", "infeasible");
    r.num("gamma", std::numeric_limits<double>::infinity());
    r.num("nu", std::numeric_limits<double>::infinity());
    add_verdict(r, e.verdict());
    r.text("message", std::string("not a VQMC: ") + e.what());
    out.exit_code = kNegative;
    out.warnings.push_back(std::string("not a VQMC: ") + e.what());
  }
  out.report = render({r}, c.format, false);
  return out;
}

CommandResult cmd_approx(const RunConfig& c) {
  const auto state = resolve_state(c);
  const auto mode = parse_mode(c.mode);
  const auto res = sdp::approx_recoverability(state, mode, problem_options(c));
  Record r;
  r.text("mode", sdp::to_string(mode));
  r.text("status", sdp::to_string(res.status));
  r.num("sdp_value", res.sdp_value);
  r.num("eps_report", res.eps_report);
  r.num("dual_value", res.dual_value);
  r.num("relative_gap", res.relative_gap);
  r.integer("iterations", static_cast<std::int64_t>(res.iterations));
  r.extra("map", io::map_to_json(res.map()));
  CommandResult out;
  out.report = render({r}, c.format, false);
  return out;
}

/// Runs f(i) for i < n on up to `threads` workers; results land by index.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

CommandResult cmd_sweep(const RunConfig& c) {
  static const std::vector<std::string> families{"w_depolarized_overhead", "gw_mix_overhead",
                                                 "ghz_depolarized_eps"};
  if (std::find(families.begin(), families.end(), c.family) == families.end())
    throw io::InputError("sweep --family must be one of w_depolarized_overhead, gw_mix_overhead, "
                         "ghz_depolarized_eps; got '" + c.family + "'");
  auto ps = parse_grid(c.grid.empty() ? "0:1:21" : c.grid).values();
  if (c.family == "gw_mix_overhead" && c.include_critical) {
    const double critical = 7.0 - 3.0 * std::sqrt(5.0);
    if (std::find(ps.begin(), ps.end(), critical) == ps.end() && critical >= ps.front() &&
        critical <= ps.back())
      ps.push_back(critical);
  }
  std::sort(ps.begin(), ps.end());
  std::vector<Record> rows(ps.size());
  const auto opts = problem_options(c);
  const bool overhead = c.family != "ghz_depolarized_eps";
  parallel_for(ps.size(), c.threads, [&](std::size_t i) {
    const double p = ps[i];
    Record r;
    r.num("p", p);
    if (overhead) {
      const auto state = c.family == "w_depolarized_overhead"
                             ? depolarize(w_state(1.0 / 3, 1.0 / 3), p)
                             : ghz_w_mix(p);
      try {
        const auto res = sdp::sampling_overhead(state, opts);
        r.num("gamma", res.gamma);
        r.num("nu", res.nu);
        r.text("status", sdp::to_string(res.status));
        r.num("relative_gap", res.relative_gap);
      } catch (const NotRecoverableError&) {
        r.num("gamma", std::numeric_limits<double>::infinity());
        r.num("nu", std::numeric_limits<double>::infinity());
        r.text("status", "infeasible");
        r.num("relative_gap", std::numeric_limits<double>::quiet_NaN());
      } catch (const std::exception& e) {
        r.num("gamma", std::numeric_limits<double>::quiet_NaN());
        r.num("nu", std::numeric_limits<double>::quiet_NaN());
        r.text("status", "error");
        r.num("relative_gap", std::numeric_limits<double>::quiet_NaN());
      }
    } else {
      const auto state = depolarize(ghz_state(), p);
      for (const auto mode : {sdp::ApproxMode::kHptp, sdp::ApproxMode::kCptp}) {
        const std::string tag = sdp::to_string(mode);
        try {
          const auto res = sdp::approx_recoverability(state, mode, opts);
          r.num("eps_" + tag, res.eps_report);
          r.text("status_" + tag, sdp::to_string(res.status));
        } catch (const sdp::SolverError& e) {
          r.num("eps_" + tag, std::numeric_limits<double>::quiet_NaN());
          r.text("status_" + tag, sdp::to_string(e.status()));
        }
      }
    }
    rows[i] = std::move(r);
  });
  CommandResult out;
  out.report = render(rows, c.format, true);
  return out;
}

CommandResult cmd_sample(const RunConfig& c) {
  const auto state = resolve_state(c);
  const ComplexMatrix obs = c.observable_file.empty() ? pauli_observable(c.observable)
                                                      : io::read_matrix_file(c.observable_file);
  if (static_cast<std::size_t>(obs.rows()) != state.dim())
    throw io::InputError("observable dimension " + std::to_string(obs.rows()) +
                         " does not match the state dimension " + std::to_string(state.dim()));
  CommandResult out;
  sdp::OverheadResult res;
  try {
    res = sdp::sampling_overhead(state, problem_options(c));
  } catch (const NotRecoverableError& e) {
    out.exit_code = kNegative;
    out.report = std::string("not a VQMC: ") + e.what() + "\n";
    return out;
  }
  auto plan = make_plan(res, obs, c.eps, c.delta, c.seed);
  const std::size_t hoeffding = plan.shots;
  if (c.shots) plan.shots = *c.shots;
  const auto rep = run(plan, state.rho_ab(), !c.records_file.empty(), c.threads);
  const double exact = exact_expectation(state, obs);
  Record r;
  r.num("gamma", plan.gamma);
  r.integer("channels", static_cast<std::int64_t>(plan.channels.size()));
  r.num("prob_1", plan.probs.front());
  r.num("observable_norm", plan.observable_norm);
  r.num("eps", plan.eps);
  r.num("delta", plan.delta);
  r.integer("hoeffding_shots", static_cast<std::int64_t>(hoeffding));
  r.integer("shots", static_cast<std::int64_t>(plan.shots));
  r.integer("seed", static_cast<std::int64_t>(plan.seed));
  r.num("estimate", rep.estimate);
  r.num("stderr", rep.std_error);
  r.num("exact", exact);
  r.num("abs_error", std::abs(rep.estimate - exact));
  r.integer("clipped", static_cast<std::int64_t>(rep.clipped));
  if (!c.records_file.empty()) {
    std::string csv = "shot_index,channel,eigenvalue,signed_contribution\n";
    for (const auto& s : rep.records)
      csv += std::to_string(s.shot_index) + "," + std::to_string(s.channel) + "," +
             format_double(s.eigenvalue) + "," + format_double(s.signed_contribution) + "\n";
    io::write_text_file(c.records_file, csv);
  }
  if (rep.clipped > 0)
    out.warnings.push_back("clipped " + std::to_string(rep.clipped) + " slightly negative Born probabilities");
  out.report = render({r}, c.format, false);
  return out;
}

CommandResult cmd_recover(const RunConfig& c) {
  const auto state = resolve_state(c);
  CommandResult out;
  try {
    const auto map = build_virtual_recovery(state, c.rank_tol);
    Record r;
    r.num("residual", recovery_residual(map, state));
    r.boolean("hermitian_preserving", map.flags().hermitian_preserving);
    r.boolean("trace_preserving", map.flags().trace_preserving);
    r.boolean("completely_positive", map.flags().completely_positive);
    r.num("min_choi_eigenvalue", map.flags().min_choi_eigenvalue);
    if (c.with_overhead) {
      const auto res = sdp::sampling_overhead(state, problem_options(c));
      r.num("overhead_gamma", res.gamma);
      r.boolean("cp_recoverable", std::abs(res.gamma - 1.0) <= 1e-5);
    }
    if (!c.out.empty()) io::write_text_file(c.out, io::map_to_json(map).dump(2) + "\n");
    else r.extra("map", io::map_to_json(map));
    out.report = render({r}, c.format, false);
  } catch (const NotRecoverableError& e) {
    out.exit_code = kNegative;
    out.report = std::string("not a VQMC: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i)
    v[i] = i + 1 == points ? stop : start + (stop - start) * static_cast<double>(i) / (points - 1);
  return v;
}

Grid parse_grid(const std::string& spec) {
  std::stringstream ss(spec);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) || a.empty() ||
      b.empty() || n.empty())
    throw io::InputError("--grid must be START:STOP:N, got '" + spec + "'");
  Grid g;
  try {
    std::size_t pos = 0;
    g.start = std::stod(a, &pos);
    if (pos != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &pos);
    if (pos != b.size()) throw std::invalid_argument(b);
    const long long k = std::stoll(n, &pos);
    if (pos != n.size() || k < 2) throw std::invalid_argument(n);
    g.points = static_cast<std::size_t>(k);
  } catch (const std::exception&) {
    throw io::InputError("--grid must be START:STOP:N with N >= 2, got '" + spec + "'");
  }
  if (!(g.start < g.stop)) throw io::InputError("--grid needs START < STOP");
  return g;
}

TripartiteState resolve_state(const RunConfig& c) {
  if (!c.state_file.empty()) {
    if (!c.family.empty()) throw io::InputError("give either --family or --state, not both");
    return io::read_state_file(c.state_file);
  }
  if (c.family.empty()) throw io::InputError("no state given: use --family or --state");
  Json params = Json::object();
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw io::InputError("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      std::size_t pos = 0;
      params[key] = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw io::InputError("--param " + key + " needs a numeric value, got '" + val + "'");
    }
  }
  if (c.p) params["p"] = *c.p;
  return io::state_from_json(Json{{"family", c.family}, {"params", params}});
}

CommandResult run_command(const RunConfig& c) {
  try {
    require_format(c);
    if (c.command == "check") return cmd_check(c);
    if (c.command == "overhead") return cmd_overhead(c);
    if (c.command == "approx") return cmd_approx(c);
    if (c.command == "sweep") return cmd_sweep(c);
    if (c.command == "sample") return cmd_sample(c);
    if (c.command == "recover") return cmd_recover(c);
    throw io::InputError("unknown command '" + c.command + "'");
  } catch (const std::exception& e) {
    CommandResult out;
    out.exit_code = kError;
    out.report = std::string("error: ") + e.what() + "\n";
    return out;
  }
}

}  // namespace vqmc::cli
