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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqhl/cqstate.hpp"
#include "dqhl/expr.hpp"
#include "dqhl/linalg.hpp"

namespace dqhl {

class AssertionError : public std::runtime_error {
 public:
  explicit AssertionError(const std::string& what) : std::runtime_error(what) {}
};

struct Clause {
  ExprPtr guard;
  CMatrix obs;
};

// Guarded list of observables. The value at σ is the sum of the observables
// whose guard σ satisfies; with pairwise exclusive guards that is the single
// matching clause, and states matching no guard get the zero operator.
struct CqAssertion {
  QVarList qvars;
  std::vector<Clause> clauses;
};

inline constexpr std::size_t kClauseCap = 4096;

CqAssertion top(const QVarList& qvars);
CqAssertion bot(const QVarList& qvars);
CqAssertion atom(const ExprPtr& guard, const CMatrix& obs, const QVarList& qvars);
// Pure-state shorthand: the projector onto ket.
CqAssertion atom_ket(const ExprPtr& guard, const CVector& ket, const QVarList& qvars);

CMatrix eval_at(const CqAssertion& t, const ClassicalState& sigma);
// Σ_σ tr((Θ(σ) ⊗ I) Δ(σ)); Θ's register must be inside Δ's.
double exp_satisfy(const CqState& d, const CqAssertion& t);

// Identity padding onto a larger register (in that register's order).
CqAssertion pad(const CqAssertion& t, const QVarList& full);

CqAssertion subst(const CqAssertion& t, const std::string& x, const ExprPtr& e);
CqAssertion subst(const CqAssertion& t, const std::map<std::string, ExprPtr>& s);

CqAssertion conj(const ExprPtr& p, const CqAssertion& t);
CqAssertion disj(const ExprPtr& p, const CqAssertion& t);
// Σ λ_i Θ_i over the union register.
CqAssertion lincomb(const std::vector<std::pair<double, CqAssertion>>& terms);
CqAssertion lin(const CqAssertion& a, const CqAssertion& b, double la, double lb);
// ⊤ − Θ
CqAssertion complement(const CqAssertion& t);

// Clause-wise Σ_i E_i M E_i† with f's Kraus operators; f must be sub-unital.
CqAssertion apply_superop_assert(const SuperOp& f, const CqAssertion& t, double tol = kTol);
// Clause-wise Σ_i K_i† M K_i, the dual action used by wp (register grows to
// cover qvars when needed).
CqAssertion pullback(const CqAssertion& t, const std::vector<CMatrix>& kraus, const QVarList& qvars);

// Folds guards, drops false guards and zero observables, merges clauses with
// identical guards. Throws AssertionError above cap clauses.
CqAssertion simplify(const CqAssertion& t, std::size_t cap = kClauseCap);

// Disjunction of all clause guards.
ExprPtr support_guard(const CqAssertion& t);

struct LessReport {
  bool ok = true;
  double min_eigenvalue = 0.0;
  std::optional<ClassicalState> witness;
  CVector eigenvector;
};

// Θ1 ≲ Θ2 over the given classical states.
LessReport lesssim(const CqAssertion& a, const CqAssertion& b, const std::vector<ClassicalState>& samples,
                   double tol = kTol);
// Max operator-norm distance of Θ1 and Θ2 (both padded to the union
// register) over the samples.
double max_distance(const CqAssertion& a, const CqAssertion& b, const std::vector<ClassicalState>& samples);

struct SpectrumReport {
  bool ok = true;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  std::optional<ClassicalState> witness;
};
// Θ(σ) has spectrum in [−tol, 1 + tol] at every sample.
SpectrumReport check_spectrum(const CqAssertion& t, const std::vector<ClassicalState>& samples, double tol = kTol);

// Samples where two clauses with different observables both apply.
std::vector<ClassicalState> overlap_lint(const CqAssertion& t, const std::vector<ClassicalState>& samples);

std::string to_string(const CqAssertion& t);

}  // namespace dqhl
