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

#include <string>
#include <utility>
#include <vector>

#include "dqhl/assertion.hpp"
#include "dqhl/cqstate.hpp"
#include "dqhl/sampling.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl::testing {

// Random programs over the classical variables x, y, n (ints) and the
// qubits q0 (and q1 when nq == 2).
struct GenOptions {
  int nq = 1;
  int depth = 2;
  int max_len = 4;
  bool allow_fail = false;   // alternatives whose guards may all be false
  bool allow_abort = false;
};

QVarList qubits(int nq);
DistProgram wrap(StmtPtr body, const QVarList& qs);

StmtPtr random_stmt(Rng& rng, const QVarList& qs, const GenOptions& o, int depth);
DistProgram random_loop_free(Rng& rng, int nq, bool allow_fail = true);
// n := k; do n > 0 [and x = v] -> ...; n := n - 1 od, k <= 4
DistProgram random_bounded_loop(Rng& rng, int nq);

// Two processes with one qubit each, 1..3 channels and at most 4 loop
// iterations per process. Loop branches are guarded by a stage counter.
DistProgram random_two_process(Rng& rng);

// Clauses guarded by x = 0, x = 1, x = 2 with random observables.
CqAssertion random_assertion(Rng& rng, const QVarList& qs);
// Θ1 ⊑ Θ2 clause by clause: O1 = O2^{1/2} R O2^{1/2}.
std::pair<CqAssertion, CqAssertion> random_ordered_pair(Rng& rng, const QVarList& qs);

// Classical states over x, y, n with x, y in 0..2 and n in 0..1.
std::vector<ClassicalState> small_states();
CqState random_input(Rng& rng, const QVarList& qs, std::size_t support, double mass);

// Unitary mixture sum_i p_i U_i . U_i^dagger; unital and trace preserving.
SuperOp random_mixed_unitary(Rng& rng, const QVarList& qs, std::size_t n = 2);

std::string strip_ws(const std::string& s);
std::string read_file(const std::string& path);

}  // namespace dqhl::testing
