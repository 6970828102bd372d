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

#pragma once

#include <string>

#include "json.hpp"
#include "vqmc/recovery.hpp"
#include "vqmc/states.hpp"

namespace vqmc::io {

using Json = nlohmann::ordered_json;

/// Thrown for malformed input files and specifications.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds a state from {"family": name, "params": {...}} or from a dense
/// {"dims": [dA, dB, dC], "re": [[...]], "im": [[...]]} object.
///
/// Families: w (a0, a1), ghz, depolarized_w (p, a0, a1), depolarized_ghz (p),
/// gw (p), s1, s2, rho_s, psi1, psi2, random (dA, dB, dC, rank, seed),
/// random_qmc (blocks [[left, right, weight], ...], dA, dC, seed),
/// classical_on_c (dA, dB, dC, seed), classical_markov (dA, dB, dC, seed).
TripartiteState state_from_json(const Json& j, StateTolerance tolerance = {});

Json state_to_json(const TripartiteState& state);

TripartiteState read_state_file(const std::string& path, StateTolerance tolerance = {});

Json matrix_to_json(const ComplexMatrix& m);  // {"re": ..., "im": ...}
ComplexMatrix matrix_from_json(const Json& j);

/// {"in_dim", "out_dim", "re", "im", "flags": {...}}; `re`/`im` hold the Choi matrix.
Json map_to_json(const LinearMap& map);
LinearMap map_from_json(const Json& j);

/// Dense matrix file ({"re": ..., "im": ...}, "im" optional).
ComplexMatrix read_matrix_file(const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double v);

}  // namespace vqmc::io
