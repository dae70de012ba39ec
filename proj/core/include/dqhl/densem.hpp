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
#include "dqhl/opsem.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

struct DenoteOptions {
  std::size_t loop_budget = 10000;
  double eps = 1e-10;
  // for distributed programs
  RunOptions run;
  int jobs = 1;
};

struct DenoteResult {
  CqState state;
  bool converged = true;
  // mass still inside an unfinished loop or run when the budget ran out
  double residual = 0.0;
  double failed = 0.0;    // alternative commands with no true guard
  double diverged = 0.0;  // mass that reached abort
  double deadlocked = 0.0;
};

DenoteResult denote_seq(const StmtPtr& s, const CqState& d, const DenoteOptions& opts = {});
DenoteResult denote_dist(const DistProgram& p, const CqState& d, const DenoteOptions& opts = {});
// denote_seq for sequential programs, denote_dist otherwise.
DenoteResult denote(const DistProgram& p, const CqState& d, const DenoteOptions& opts = {});

// Adds the variables of env missing from each classical state (as 0).
CqState complete_states(const CqState& d, const VarEnv& env);

// Accumulated output of do..od after each unrolling, for k = 0..k_max.
std::vector<CqState> rep_chain(const StmtPtr& rep, const CqState& d, std::size_t k_max);

}  // namespace dqhl
