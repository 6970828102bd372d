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

#include "vqmc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vqmc::io {

namespace {

double param(const Json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number()) throw InputError(std::string("state parameter '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count_param(const Json& params, const char* key, std::size_t fallback) {
  const double v = param(params, key, static_cast<double>(fallback));
  if (v < 0 || v != std::floor(v))
    throw InputError(std::string("state parameter '") + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

RealMatrix real_rows(const Json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw InputError(std::string(what) + " must be a nonempty array of rows");
  const auto n = rows.size();
  const auto m = rows.at(0).is_array() ? rows.at(0).size() : 0;
  RealMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != m)
      throw InputError(std::string(what) + " rows must be arrays of equal length");
    for (std::size_t j = 0; j < m; ++j) {
      if (!row.at(j).is_number()) throw InputError(std::string(what) + " entries must be numbers");
      out(i, j) = row.at(j).get<double>();
    }
  }
  return out;
}

Json rows_of(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

TripartiteState family_state(const std::string& family, const Json& p) {
  const double third = 1.0 / 3.0;
  if (family == "w") return w_state(param(p, "a0", third), param(p, "a1", third));
  if (family == "ghz") return ghz_state();
  if (family == "depolarized_w")
    return depolarize(w_state(param(p, "a0", third), param(p, "a1", third)), param(p, "p", 0.0));
  if (family == "depolarized_ghz") return depolarize(ghz_state(), param(p, "p", 0.0));
  if (family == "gw") return ghz_w_mix(param(p, "p", 0.0));
  if (family == "s1" || family == "s2" || family == "rho_s" || family == "psi1" || family == "psi2")
    return named_state(family);
  const DimSplit dims{count_param(p, "dA", 2), count_param(p, "dB", 2), count_param(p, "dC", 2)};
  const auto seed = static_cast<std::uint64_t>(count_param(p, "seed", 0));
  if (family == "random") return random_state(dims, count_param(p, "rank", dims.total()), seed);
  if (family == "classical_on_c") return random_classical_on_c(dims, seed);
  if (family == "classical_markov") return random_classical_markov(dims, seed);
  if (family == "random_qmc") {
    std::vector<QmcBlock> blocks;
    if (p.contains("blocks")) {
      for (const auto& b : p.at("blocks")) {
        if (!b.is_array() || b.size() != 3) throw InputError("random_qmc blocks are [left, right, weight]");
        blocks.push_back({b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>(), b.at(2).get<double>()});
      }
    } else {
      blocks = {{1, 2, 0.5}, {2, 1, 0.5}};
    }
    return random_qmc(blocks, count_param(p, "dA", 2), count_param(p, "dC", 2), seed);
  }
  throw InputError("unknown state family '" + family + "'");
}

}  // namespace

TripartiteState state_from_json(const Json& j, StateTolerance tolerance) {
  if (!j.is_object()) throw InputError("state specification must be a JSON object");
  try {
    if (j.contains("family")) {
      const Json params = j.value("params", Json::object());
      if (!params.is_object()) throw InputError("state 'params' must be an object");
      return family_state(j.at("family").get<std::string>(), params);
    }
    if (!j.contains("dims") || !j.contains("re"))
      throw InputError("state specification needs either 'family' or 'dims' and 're'");
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != 3) throw InputError("'dims' must list three dimensions");
    ComplexMatrix rho = matrix_from_json(j);
    return TripartiteState(std::move(rho), {dims[0], dims[1], dims[2]}, tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed state specification: ") + e.what());
  } catch (const NumericalError& e) {
    throw InputError(std::string("invalid state: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid state: ") + e.what());
  }
}

Json state_to_json(const TripartiteState& state) {
  Json j = matrix_to_json(state.rho());
  const auto& d = state.dims();
  j["dims"] = {d.a, d.b, d.c};
  return j;
}

TripartiteState read_state_file(const std::string& path, StateTolerance tolerance) {
  return state_from_json(read_json_file(path), tolerance);
}

Json matrix_to_json(const ComplexMatrix& m) {
  return Json{{"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re")) throw InputError("matrix object needs 're'");
  const RealMatrix re = real_rows(j.at("re"), "'re'");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = real_rows(j.at("im"), "'im'");
    if (im.rows() != re.rows() || im.cols() != re.cols())
      throw InputError("'re' and 'im' have different shapes");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json map_to_json(const LinearMap& map) {
  Json j = matrix_to_json(map.choi());
  j["in_dim"] = map.in_dim();
  j["out_dim"] = map.out_dim();
  const auto& f = map.flags();
  j["flags"] = {{"hermitian_preserving", f.hermitian_preserving},
                {"trace_preserving", f.trace_preserving},
                {"completely_positive", f.completely_positive},
                {"hermitian_defect", f.hermitian_defect},
                {"trace_defect", f.trace_defect},
                {"min_choi_eigenvalue", f.min_choi_eigenvalue}};
  return j;
}

LinearMap map_from_json(const Json& j) {
  try {
    return LinearMap::from_choi(matrix_from_json(j), j.at("in_dim").get<std::size_t>(),
                                j.at("out_dim").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed map file: ") + e.what());
  } catch (const NumericalError& e) {
    throw InputError(std::string("invalid map: ") + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace vqmc::io
