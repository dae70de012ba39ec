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

#include "dqhl/seqtransform.hpp"

#include <cmath>

namespace dqhl {

std::vector<GammaTuple> gamma_of(const DistProgram& p) {
  std::vector<GammaTuple> out;
  const VarEnv env = p.env();
  const int n = static_cast<int>(p.processes.size());
  for (int i = 0; i < n; ++i) {
    const auto& li = p.processes[i].loop;
    for (int j = 0; j < static_cast<int>(li.size()); ++j) {
      for (int k = i + 1; k < n; ++k) {
        const auto& lk = p.processes[k].loop;
        for (int l = 0; l < static_cast<int>(lk.size()); ++l) {
          if (io_match(li[j].io, lk[l].io, env)) out.push_back({i, j, k, l});
        }
      }
    }
  }
  return out;
}

ExprPtr pair_guard(const DistProgram& p, const GammaTuple& g) {
  return mk_and(p.processes[g.i].loop[g.j].guard, p.processes[g.k].loop[g.l].guard);
}

StmtPtr gamma_body(const DistProgram& p, const GammaTuple& g) {
  const LoopBranch& a = p.processes[g.i].loop[g.j];
  const LoopBranch& b = p.processes[g.k].loop[g.l];
  return mk_seq({effect(a.io, b.io), a.body, b.body});
}

StmtPtr init_sequence(const DistProgram& p) {
  std::vector<StmtPtr> parts;
  for (const auto& proc : p.processes) parts.push_back(proc.init);
  return mk_seq(parts);
}

std::pair<ExprPtr, ExprPtr> term_block(const DistProgram& p) {
  std::vector<ExprPtr> term;
  for (const auto& proc : p.processes) {
    for (const auto& b : proc.loop) term.push_back(mk_not(b.guard));
  }
  std::vector<ExprPtr> block;
  for (const auto& g : gamma_of(p)) block.push_back(mk_not(pair_guard(p, g)));
  return {conjunction(term), conjunction(block)};
}

SeqTransformResult sequentialise(const DistProgram& p) {
  SeqTransformResult r;
  r.gamma = gamma_of(p);
  std::vector<StmtPtr> parts{init_sequence(p)};
  if (!r.gamma.empty()) {
    std::vector<GuardedCmd> branches;
    for (const auto& g : r.gamma) {
      // B_i: no tuple with a smaller first index is enabled
      std::vector<ExprPtr> earlier;
      for (const auto& h : r.gamma) {
        if (h.i < g.i) earlier.push_back(mk_not(pair_guard(p, h)));
      }
      branches.push_back({mk_and(pair_guard(p, g), conjunction(earlier)), gamma_body(p, g)});
    }
    parts.push_back(mk_rep(std::move(branches)));
  }
  r.program = mk_seq(parts);
  std::tie(r.term, r.block) = term_block(p);
  r.as_program = fragment(p, r.program, "Seq");
  return r;
}

SeqEquivReport check_seq_equiv(const DistProgram& p, const std::vector<CqState>& inputs, const DenoteOptions& opts,
                               double tol) {
  SeqEquivReport rep;
  const SeqTransformResult t = sequentialise(p);
  const VarEnv env = p.env();
  for (const auto& in : inputs) {
    const CqState d = complete_states(in, env);
    DenoteResult lhs = denote_dist(p, d, opts);
    DenoteResult rhs = denote_seq(t.program, d, opts);
    SeqEquivCase c;
    c.deviation = max_deviation(lhs.state, restrict(rhs.state, t.term));
    c.lhs_converged = lhs.converged;
    c.rhs_converged = rhs.converged;
    rep.max_deviation = std::max(rep.max_deviation, c.deviation);
    if (c.deviation > tol || !c.lhs_converged || !c.rhs_converged) rep.ok = false;
    rep.cases.push_back(c);
  }
  return rep;
}

}  // namespace dqhl
