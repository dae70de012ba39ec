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

#include "dqhl/densem.hpp"

#include <functional>
#include <thread>

#include "dqhl/classical_state.hpp"

namespace dqhl {

namespace {

struct Acc {
  const DenoteOptions& opts;
  double residual = 0.0;
  double failed = 0.0;
  double diverged = 0.0;
  bool converged = true;
};

void check_exclusive(const std::vector<GuardedCmd>& bs, const ClassicalState& sigma, const char* what) {
  int n = 0;
  for (const auto& b : bs) n += holds(b.guard, sigma) ? 1 : 0;
  if (n > 1) throw SemanticsError(std::string("guards of ") + what + " are not mutually exclusive at " + to_string(sigma));
}

CqState eval(const Stmt& s, const CqState& d, Acc& acc);

CqState restrict_pred(const CqState& d, const std::function<bool(const ClassicalState&)>& f) {
  CqState out(d.qvars);
  for (const auto& [sg, m] : d.entries) {
    if (f(sg)) out.entries.emplace(sg, m);
  }
  return out;
}

CqState none_holds(const std::vector<GuardedCmd>& bs, const CqState& d) {
  return restrict_pred(d, [&](const ClassicalState& sg) {
    for (const auto& b : bs) {
      if (holds(b.guard, sg)) return false;
    }
    return true;
  });
}

// Σ_i ⟦S_i⟧(Δ|B_i)
CqState branch_sum(const std::vector<GuardedCmd>& bs, const CqState& d, Acc& acc) {
  CqState out(d.qvars);
  for (const auto& b : bs) {
    CqState part = restrict(d, b.guard);
    if (part.empty()) continue;
    for (const auto& [sg, m] : eval(*b.body, part, acc).entries) out.add(sg, m);
  }
  return out;
}

CqState eval(const Stmt& s, const CqState& d, Acc& acc) {
  const QVarList& reg = d.qvars;
  switch (s.kind) {
    case StmtKind::Skip:
      return d;
    case StmtKind::Abort:
      acc.diverged += trace(d);
      return CqState(reg);
    case StmtKind::Assign: {
      CqState out(reg);
      for (const auto& [sg, m] : d.entries) {
        ClassicalState t = sg;
        t[s.var] = dqhl::eval(s.expr, sg);
        out.add(t, m);
      }
      return out;
    }
    case StmtKind::RandAssign: {
      CqState out(reg);
      for (const auto& [sg, m] : d.entries) {
        for (const auto& [v, g] : s.dist) {
          ClassicalState t = sg;
          t[s.var] = v;
          out.add(t, m, boost::rational_cast<double>(g));
        }
      }
      return out;
    }
    case StmtKind::Measure: {
      std::vector<CMatrix> ms;
      for (const auto& k : s.ops) ms.push_back(embed(k, s.qvars, reg));
      CqState out(reg);
      for (const auto& [sg, m] : d.entries) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
          ClassicalState t = sg;
          t[s.var] = static_cast<std::int64_t>(i);
          out.add(t, ms[i] * m * ms[i].adjoint());
        }
      }
      return out;
    }
    case StmtKind::InitQ: {
      const QVar& q = s.qvars.front();
      std::vector<CMatrix> ks;
      for (int i = 0; i < q.dim; ++i) {
        CMatrix k = CMatrix::Zero(q.dim, q.dim);
        k(0, i) = 1.0;
        ks.push_back(embed(k, s.qvars, reg));
      }
      CqState out(reg);
      for (const auto& [sg, m] : d.entries) {
        CMatrix r = CMatrix::Zero(m.rows(), m.cols());
        for (const auto& k : ks) r += k * m * k.adjoint();
        out.add(sg, r);
      }
      return out;
    }
    case StmtKind::ApplyU: {
      const CMatrix u = embed(s.ops.front(), s.qvars, reg);
      CqState out(reg);
      for (const auto& [sg, m] : d.entries) out.add(sg, u * m * u.adjoint());
      return out;
    }
    case StmtKind::Seq: {
      CqState cur = d;
      for (const auto& c : s.children) cur = eval(*c, cur, acc);
      return cur;
    }
    case StmtKind::Alt: {
      for (const auto& [sg, m] : d.entries) check_exclusive(s.branches, sg, "an alternative command");
      acc.failed += trace(none_holds(s.branches, d));
      return branch_sum(s.branches, d, acc);
    }
    case StmtKind::Rep: {
      // out = Δ|B0 + Σ ⟦S⟧(⟦S_i⟧(Δ|B_i)), unrolled as a frontier
      CqState out(reg);
      CqState frontier = d;
      for (std::size_t k = 0;; ++k) {
        for (const auto& [sg, m] : frontier.entries) check_exclusive(s.branches, sg, "a repetitive command");
        for (const auto& [sg, m] : none_holds(s.branches, frontier).entries) out.add(sg, m);
        frontier = branch_sum(s.branches, frontier, acc);
        const double t = trace(frontier);
        if (t < acc.opts.eps) {
          acc.residual += t;
          break;
        }
        if (k + 1 >= acc.opts.loop_budget) {
          acc.residual += t;
          acc.converged = false;
          break;
        }
      }
      return out;
    }
  }
  return d;
}

void check_register(const QVarList& prog, const QVarList& reg) {
  for (const auto& q : prog) {
    const int i = index_of(reg, q.name);
    if (i < 0) throw SemanticsError("input state does not cover quantum variable '" + q.name + "'");
    if (reg[i].dim != q.dim) throw SemanticsError("dimension mismatch for quantum variable '" + q.name + "'");
  }
}

}  // namespace

DenoteResult denote_seq(const StmtPtr& s, const CqState& d, const DenoteOptions& opts) {
  check_register(qvars_of(*s), d.qvars);
  Acc acc{opts};
  DenoteResult r;
  r.state = eval(*s, d, acc);
  r.residual = acc.residual;
  r.failed = acc.failed;
  r.diverged = acc.diverged;
  r.converged = acc.converged;
  return r;
}

DenoteResult denote_dist(const DistProgram& p, const CqState& d, const DenoteOptions& opts) {
  check_register(p.qvars(), d.qvars);
  std::vector<std::pair<ClassicalState, CMatrix>> items(d.entries.begin(), d.entries.end());
  std::vector<RunReport> reports(items.size());
  std::vector<double> weight(items.size());
  auto work = [&](std::size_t from, std::size_t stride) {
    for (std::size_t i = from; i < items.size(); i += stride) {
      weight[i] = real_trace(items[i].second);
      GoodScheduler g;
      reports[i] = run(p, items[i].first, DensityOp{items[i].second / weight[i], d.qvars}, g, opts.run);
    }
  };
  const std::size_t nj = static_cast<std::size_t>(std::max(1, opts.jobs));
  if (nj == 1 || items.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < nj; ++j) pool.emplace_back(work, j, nj);
    for (auto& t : pool) t.join();
  }
  DenoteResult r;
  r.state = CqState(d.qvars);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const RunReport& rep = reports[i];
    for (const auto& [sg, m] : rep.delta.entries) r.state.add(sg, m, weight[i]);
    r.failed += weight[i] * rep.failed;
    r.deadlocked += weight[i] * rep.deadlocked;
    if (rep.diverged) {
      r.diverged += weight[i] * rep.residual;
    } else {
      r.residual += weight[i] * rep.residual;
      if (rep.residual > opts.eps) r.converged = false;
    }
  }
  return r;
}

CqState complete_states(const CqState& d, const VarEnv& env) {
  CqState out(d.qvars);
  for (const auto& [sg, m] : d.entries) out.add(complete_state(sg, env), m);
  return out;
}

DenoteResult denote(const DistProgram& p, const CqState& d, const DenoteOptions& opts) {
  if (p.is_sequential()) return denote_seq(p.processes.front().init, complete_states(d, p.env()), opts);
  return denote_dist(p, d, opts);
}

std::vector<CqState> rep_chain(const StmtPtr& rep, const CqState& d, std::size_t k_max) {
  if (rep->kind != StmtKind::Rep) throw SemanticsError("rep_chain needs a repetitive command");
  DenoteOptions opts;
  Acc acc{opts};
  std::vector<CqState> out;
  CqState total(d.qvars);
  CqState frontier = d;
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (const auto& [sg, m] : none_holds(rep->branches, frontier).entries) total.add(sg, m);
    out.push_back(total);
    frontier = branch_sum(rep->branches, frontier, acc);
  }
  return out;
}

}  // namespace dqhl
