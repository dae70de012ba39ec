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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dqhl/expr.hpp"
#include "dqhl/linalg.hpp"

namespace dqhl {

class CqStateError : public std::runtime_error {
 public:
  explicit CqStateError(const std::string& what) : std::runtime_error(what) {}
};

// Finite-support map from classical states to partial density operators on
// a fixed register. Zero operators are never stored.
struct CqState {
  QVarList qvars;
  std::map<ClassicalState, CMatrix> entries;

  CqState() = default;
  explicit CqState(QVarList q) : qvars(std::move(q)) {}

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  // Adds scale * m to the entry at sigma (creating it if needed) and drops
  // the entry if the sum vanishes.
  void add(const ClassicalState& sigma, const CMatrix& m, double scale = 1.0);
};

CqState single(const ClassicalState& sigma, const DensityOp& rho);
CqState single(const ClassicalState& sigma, const CMatrix& rho, const QVarList& qvars);

double trace(const CqState& d);
// Entries whose classical state satisfies b. Variables missing from a state
// make b fail to evaluate; that is reported as an EvalError.
CqState restrict(const CqState& d, const ExprPtr& b);

// Pointwise sum of scaled states. With check = true the result must be a
// valid cq-state (PSD entries and trace <= 1, within tol).
CqState lincomb(const std::vector<std::pair<double, CqState>>& terms, bool check = true, double tol = kTol);
CqState scale(const CqState& d, double s);
CqState add(const CqState& a, const CqState& b);

bool cq_leq(const CqState& a, const CqState& b, double tol = kTol);
CqState apply_channel(const SuperOp& e, const CqState& d);

// Max entrywise |a - b| over the union of supports.
double max_deviation(const CqState& a, const CqState& b);
// Partial trace of every entry onto keep.
CqState reduce_state(const CqState& d, const std::vector<std::string>& keep);
// Same entries on a larger register; extra variables get |0><0|.
CqState extend_state(const CqState& d, const QVarList& full);
// Valid cq-state check: every entry PSD and total trace <= 1 + tol.
bool is_valid(const CqState& d, double tol = kTol, std::string* why = nullptr);

}  // namespace dqhl
