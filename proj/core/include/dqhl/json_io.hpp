// Copyright 2026 The dqhl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dqhl/assertion.hpp"
#include "dqhl/cqstate.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/hoare.hpp"
#include "dqhl/opsem.hpp"
#include "dqhl/sampling.hpp"

namespace dqhl {

// Insertion-ordered so that reports print fields in a fixed, readable order.
using Json = nlohmann::ordered_json;

class JsonFormatError : public std::runtime_error {
 public:
  explicit JsonFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Complex numbers are [re, im] pairs; a plain number is read as real.
Json to_json(Complex c);
Json to_json(const CMatrix& m);
Complex complex_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);
CVector vector_from_json(const Json& j);

// Plain names for qubits, {"name": .., "dim": ..} otherwise.
Json to_json(const QVarList& qs);
QVarList qvars_from_json(const Json& j);

Json to_json(const ClassicalState& s);
ClassicalState classical_from_json(const Json& j);

// {"qvars": [...], "entries": [{"state": {...}, "rho": [[...]]}], "trace": t}
Json to_json(const CqState& d);

// Reading accepts, per entry, one of "rho" (matrix), "ket" (vector) or
// "expr" (state expression such as "ket(psi) ⊗ bell(q1,q2)"), an optional
// weight "p", and a top-level "params" object whose values are explicit
// vectors or {"haar": dim}. Haar parameters are drawn from rng.
struct StateInput {
  CqState state;
  std::map<std::string, CVector> params;
};
StateInput cqstate_from_json(const Json& j, Rng& rng, std::map<std::string, CVector> params = {});

// State expression over qvars; the result is a density operator.
CMatrix state_from_expr(const std::string& text, const QVarList& qvars, const std::map<std::string, CVector>& params);

Json to_json(const ActionLabel& a);
Json to_json(const RunReport& r, bool with_trace);
// Accepts a run report (its "trace" member) or a bare array of steps.
std::vector<std::vector<std::optional<ActionLabel>>> trace_from_json(const Json& j);

Json to_json(const DenoteResult& r);
Json to_json(const CqAssertion& a);
Json to_json(const SemanticReport& r);
Json to_json(const RuleReport& r);

}  // namespace dqhl
