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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dqhl/assertion.hpp"
#include "dqhl/expr.hpp"
#include "dqhl/linalg.hpp"

namespace dqhl {

struct ParamDecl {
  std::string name;
  int dim = 2;
};

struct AssertionContext {
  // Values for the file's "param" declarations.
  std::map<std::string, CVector> params;
  // Default register when the file declares no qubits.
  QVarList qvars;
  // Guards are type-checked when non-empty.
  VarEnv env;
  // Predicates usable by name inside guards (TERM, BLOCK, ...).
  std::map<std::string, ExprPtr> preds;
};

struct AssertionFile {
  QVarList qvars;
  VarEnv env;
  std::vector<ParamDecl> params;
  std::map<std::string, CqAssertion> assertions;
  std::vector<std::string> order;
};

// .dqa text:
//   qubit q, q1, q2;   qudit r: 3;   var x, y: int;   param psi: ket(2);
//   pred Done := stage = 2;
//   assert Psi [on q, q1] := sum over i in 0..1 of <x = i | ket(i) ⊗ psi>;
AssertionFile parse_assertion_file(std::string_view source, const AssertionContext& ctx);

// Only the param declarations; lets callers sample values before instantiating.
std::vector<ParamDecl> declared_params(std::string_view source);

// A single assertion expression over qvars; names in known are usable as
// sub-assertions.
CqAssertion parse_assertion_expr(std::string_view source, const QVarList& qvars, const AssertionContext& ctx,
                                 const std::map<std::string, CqAssertion>& known = {});

// Quantum-value expression (ket, operator or scalar) with the same syntax as
// the right side of "<guard | ...>". Kets and scalars come back as column
// vectors / 1x1 matrices; is_ket tells which.
struct QValue {
  enum Kind { Scalar, Ket, Op } kind = Scalar;
  CMatrix value;
};
QValue parse_qvalue(std::string_view source, const std::map<std::string, CVector>& params = {});

}  // namespace dqhl
