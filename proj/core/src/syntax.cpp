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

#include "dqhl/syntax.hpp"

namespace dqhl {

namespace {

std::shared_ptr<Stmt> node(StmtKind k) {
  auto s = std::make_shared<Stmt>();
  s->kind = k;
  return s;
}

}  // namespace

StmtPtr mk_skip() { return node(StmtKind::Skip); }
StmtPtr mk_abort() { return node(StmtKind::Abort); }

StmtPtr mk_assign(const std::string& x, ExprPtr e) {
  auto s = node(StmtKind::Assign);
  s->var = x;
  s->expr = std::move(e);
  return s;
}

StmtPtr mk_rand_assign(const std::string& x, std::vector<std::pair<std::int64_t, Rational>> dist) {
  auto s = node(StmtKind::RandAssign);
  s->var = x;
  s->dist = std::move(dist);
  return s;
}

StmtPtr mk_measure(const std::string& x, const std::string& name, std::vector<CMatrix> kraus, QVarList qvars) {
  auto s = node(StmtKind::Measure);
  s->var = x;
  s->op_name = name;
  s->ops = std::move(kraus);
  s->qvars = std::move(qvars);
  return s;
}

StmtPtr mk_init(const QVar& q) {
  auto s = node(StmtKind::InitQ);
  s->qvars = {q};
  return s;
}

StmtPtr mk_unitary(const std::string& name, CMatrix u, QVarList qvars) {
  auto s = node(StmtKind::ApplyU);
  s->op_name = name;
  s->ops = {std::move(u)};
  s->qvars = std::move(qvars);
  return s;
}

StmtPtr mk_seq(const std::vector<StmtPtr>& parts) {
  std::vector<StmtPtr> flat;
  for (const auto& p : parts) {
    if (p->kind == StmtKind::Seq) {
      flat.insert(flat.end(), p->children.begin(), p->children.end());
    } else {
      flat.push_back(p);
    }
  }
  if (flat.empty()) return mk_skip();
  if (flat.size() == 1) return flat.front();
  auto s = node(StmtKind::Seq);
  s->children = std::move(flat);
  return s;
}

StmtPtr mk_alt(std::vector<GuardedCmd> branches) {
  auto s = node(StmtKind::Alt);
  s->branches = std::move(branches);
  return s;
}

StmtPtr mk_rep(std::vector<GuardedCmd> branches) {
  auto s = node(StmtKind::Rep);
  s->branches = std::move(branches);
  return s;
}

VarEnv Process::env() const {
  VarEnv e;
  for (const auto& [name, type] : vars) e.emplace(name, type);
  return e;
}

VarEnv DistProgram::env() const {
  VarEnv e;
  for (const auto& p : processes) {
    for (const auto& [name, type] : p.vars) e.emplace(name, type);
  }
  return e;
}

QVarList DistProgram::qvars() const {
  QVarList out;
  for (const auto& p : processes) out = union_of(out, p.qvars);
  return out;
}

DistProgram fragment(const DistProgram& ctx, StmtPtr body, const std::string& name) {
  Process p;
  p.name = name;
  for (const auto& proc : ctx.processes) {
    for (const auto& v : proc.vars) {
      bool dup = false;
      for (const auto& w : p.vars) dup = dup || w.first == v.first;
      if (!dup) p.vars.push_back(v);
    }
    p.qvars = union_of(p.qvars, proc.qvars);
    for (const auto& g : proc.gates) {
      bool dup = false;
      for (const auto& h : p.gates) dup = dup || h.name == g.name;
      if (!dup) p.gates.push_back(g);
    }
    for (const auto& m : proc.measurements) {
      bool dup = false;
      for (const auto& h : p.measurements) dup = dup || h.name == m.name;
      if (!dup) p.measurements.push_back(m);
    }
  }
  p.init = std::move(body);
  DistProgram out;
  out.processes.push_back(std::move(p));
  return out;
}

namespace {

void add_qvars(QVarList& out, const QVarList& vs) { out = union_of(out, vs); }

void walk(const Stmt& s, VarSets& vs, QVarList& order) {
  switch (s.kind) {
    case StmtKind::Skip:
    case StmtKind::Abort:
      return;
    case StmtKind::Assign:
      vs.cv.insert(s.var);
      vs.change.insert(s.var);
      collect_vars(s.expr, vs.cv);
      return;
    case StmtKind::RandAssign:
      vs.cv.insert(s.var);
      vs.change.insert(s.var);
      return;
    case StmtKind::Measure:
      vs.cv.insert(s.var);
      vs.change.insert(s.var);
      for (const auto& q : s.qvars) vs.qv.insert(q.name);
      add_qvars(order, s.qvars);
      return;
    case StmtKind::InitQ:
    case StmtKind::ApplyU:
      for (const auto& q : s.qvars) vs.qv.insert(q.name);
      add_qvars(order, s.qvars);
      return;
    case StmtKind::Seq:
      for (const auto& c : s.children) walk(*c, vs, order);
      return;
    case StmtKind::Alt:
    case StmtKind::Rep:
      for (const auto& b : s.branches) {
        collect_vars(b.guard, vs.cv);
        walk(*b.body, vs, order);
      }
      return;
  }
}

}  // namespace

VarSets var_sets(const Stmt& s) {
  VarSets vs;
  QVarList order;
  walk(s, vs, order);
  return vs;
}

VarSets var_sets(const Process& p) {
  VarSets vs;
  QVarList order;
  if (p.init) walk(*p.init, vs, order);
  for (const auto& b : p.loop) {
    collect_vars(b.guard, vs.cv);
    vs.chan.insert(b.io.channel);
    if (b.io.is_input) {
      vs.cv.insert(b.io.var);
      vs.change.insert(b.io.var);
    } else {
      collect_vars(b.io.expr, vs.cv);
    }
    walk(*b.body, vs, order);
  }
  return vs;
}

VarSets var_sets(const DistProgram& p) {
  VarSets out;
  for (const auto& proc : p.processes) {
    VarSets vs = var_sets(proc);
    out.cv.insert(vs.cv.begin(), vs.cv.end());
    out.qv.insert(vs.qv.begin(), vs.qv.end());
    out.change.insert(vs.change.begin(), vs.change.end());
    out.chan.insert(vs.chan.begin(), vs.chan.end());
  }
  return out;
}

QVarList qvars_of(const Stmt& s) {
  VarSets vs;
  QVarList order;
  walk(s, vs, order);
  return order;
}

bool io_match(const IoCommand& a, const IoCommand& b, const VarEnv& env) {
  if (a.channel != b.channel || a.is_input == b.is_input) return false;
  const IoCommand& in = a.is_input ? a : b;
  const IoCommand& out = a.is_input ? b : a;
  auto it = env.find(in.var);
  if (it == env.end()) return false;
  try {
    return type_of(out.expr, env) == it->second;
  } catch (const TypeError&) {
    return false;
  }
}

StmtPtr effect(const IoCommand& a, const IoCommand& b) {
  if (a.channel != b.channel) {
    throw ValidationError("i/o commands on different channels '" + a.channel + "' and '" + b.channel + "'");
  }
  if (a.is_input == b.is_input) {
    throw ValidationError("i/o commands on channel '" + a.channel + "' have the same direction");
  }
  const IoCommand& in = a.is_input ? a : b;
  const IoCommand& out = a.is_input ? b : a;
  return mk_assign(in.var, out.expr);
}

namespace {

bool same_matrices(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) return false;
    if (a[i].size() > 0 && max_abs_diff(a[i], b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

bool same_stmt(const StmtPtr& a, const StmtPtr& b, double tol) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case StmtKind::Skip:
    case StmtKind::Abort:
      return true;
    case StmtKind::Assign:
      return a->var == b->var && structurally_equal(a->expr, b->expr);
    case StmtKind::RandAssign:
      return a->var == b->var && a->dist == b->dist;
    case StmtKind::Measure:
    case StmtKind::ApplyU:
      return a->var == b->var && a->op_name == b->op_name && a->qvars == b->qvars && same_matrices(a->ops, b->ops, tol);
    case StmtKind::InitQ:
      return a->qvars == b->qvars;
    case StmtKind::Seq:
      if (a->children.size() != b->children.size()) return false;
      for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!same_stmt(a->children[i], b->children[i], tol)) return false;
      }
      return true;
    case StmtKind::Alt:
    case StmtKind::Rep:
      if (a->branches.size() != b->branches.size()) return false;
      for (std::size_t i = 0; i < a->branches.size(); ++i) {
        if (!structurally_equal(a->branches[i].guard, b->branches[i].guard)) return false;
        if (!same_stmt(a->branches[i].body, b->branches[i].body, tol)) return false;
      }
      return true;
  }
  return false;
}

bool same_program(const DistProgram& a, const DistProgram& b, double tol) {
  if (a.channels != b.channels || a.processes.size() != b.processes.size()) return false;
  for (std::size_t k = 0; k < a.processes.size(); ++k) {
    const Process& p = a.processes[k];
    const Process& q = b.processes[k];
    if (p.name != q.name || p.vars != q.vars || p.qvars != q.qvars) return false;
    if (p.gates.size() != q.gates.size() || p.measurements.size() != q.measurements.size()) return false;
    for (std::size_t i = 0; i < p.gates.size(); ++i) {
      if (p.gates[i].name != q.gates[i].name || !same_matrices({p.gates[i].matrix}, {q.gates[i].matrix}, tol)) return false;
    }
    for (std::size_t i = 0; i < p.measurements.size(); ++i) {
      if (p.measurements[i].name != q.measurements[i].name ||
          !same_matrices(p.measurements[i].kraus, q.measurements[i].kraus, tol)) {
        return false;
      }
    }
    if (!same_stmt(p.init, q.init, tol)) return false;
    if (p.loop.size() != q.loop.size()) return false;
    for (std::size_t i = 0; i < p.loop.size(); ++i) {
      const LoopBranch& x = p.loop[i];
      const LoopBranch& y = q.loop[i];
      if (!structurally_equal(x.guard, y.guard) || x.io.channel != y.io.channel || x.io.is_input != y.io.is_input) {
        return false;
      }
      if (x.io.is_input ? x.io.var != y.io.var : !structurally_equal(x.io.expr, y.io.expr)) return false;
      if (!same_stmt(x.body, y.body, tol)) return false;
    }
  }
  return true;
}

}  // namespace dqhl
