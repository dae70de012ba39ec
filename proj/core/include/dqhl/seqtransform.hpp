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

#include <vector>

#include "dqhl/cqstate.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

// (i, j, k, l): branch j of process i communicates with branch l of process
// k, i < k. 0-based.
struct GammaTuple {
  int i = 0, j = 0, k = 0, l = 0;
  friend bool operator==(const GammaTuple&, const GammaTuple&) = default;
};

struct SeqTransformResult {
  StmtPtr program;
  std::vector<GammaTuple> gamma;
  ExprPtr term;
  ExprPtr block;
  // program wrapped as a one-process DistProgram with merged declarations
  DistProgram as_program;
};

std::vector<GammaTuple> gamma_of(const DistProgram& p);
// B_{i,j} ∧ B_{k,l} for a tuple.
ExprPtr pair_guard(const DistProgram& p, const GammaTuple& g);
// Effect(α_ij, α_kl); S_ij; S_kl
StmtPtr gamma_body(const DistProgram& p, const GammaTuple& g);
// S_{1,0}; ...; S_{n,0}
StmtPtr init_sequence(const DistProgram& p);

SeqTransformResult sequentialise(const DistProgram& p);
std::pair<ExprPtr, ExprPtr> term_block(const DistProgram& p);

struct SeqEquivCase {
  double deviation = 0.0;
  bool lhs_converged = true;
  bool rhs_converged = true;
};

struct SeqEquivReport {
  bool ok = true;
  double max_deviation = 0.0;
  std::vector<SeqEquivCase> cases;
};

SeqEquivReport check_seq_equiv(const DistProgram& p, const std::vector<CqState>& inputs, const DenoteOptions& opts = {},
                               double tol = 1e-8);

}  // namespace dqhl
