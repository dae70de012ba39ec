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

#include "dqhl/wp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dqhl/seqtransform.hpp"

namespace dqhl {

const char* mode_name(XpMode m) { return m == XpMode::Wp ? "wp" : "wlp"; }

namespace {

using Samples = std::vector<ClassicalState>;

ExprPtr value_lit(const std::string& x, std::int64_t v, const VarEnv& env) {
  auto it = env.find(x);
  if (it != env.end() && it->second == Type::Bool) return bool_lit(v != 0);
  return int_lit(v);
}

Samples filter(const Samples& in, const ExprPtr& g) {
  Samples out;
  for (const auto& s : in) {
    if (holds(g, s)) out.push_back(s);
  }
  return out;
}

class Post {
 public:
  explicit Post(std::size_t cap) : cap_(cap) {}

  bool truncated = false;

  std::set<ClassicalState> run(const Stmt& s, const std::set<ClassicalState>& in) {
    std::set<ClassicalState> out;
    switch (s.kind) {
      case StmtKind::Skip:
      case StmtKind::InitQ:
      case StmtKind::ApplyU:
        return in;
      case StmtKind::Abort:
        return out;
      case StmtKind::Assign:
        for (auto sg : in) {
          sg[s.var] = eval(s.expr, sg);
          out.insert(std::move(sg));
        }
        return out;
      case StmtKind::RandAssign:
        for (const auto& sg : in) {
          for (const auto& [v, p] : s.dist) {
            if (p.numerator() == 0) continue;
            auto t = sg;
            t[s.var] = v;
            out.insert(std::move(t));
          }
        }
        return out;
      case StmtKind::Measure:
        for (const auto& sg : in) {
          for (std::size_t i = 0; i < s.ops.size(); ++i) {
            auto t = sg;
            t[s.var] = static_cast<std::int64_t>(i);
            out.insert(std::move(t));
          }
        }
        return out;
      case StmtKind::Seq: {
        std::set<ClassicalState> cur = in;
        for (const auto& c : s.children) cur = run(*c, cur);
        return cur;
      }
      case StmtKind::Alt:
        for (const auto& b : s.branches) {
          std::set<ClassicalState> sub;
          for (const auto& sg : in) {
            if (holds(b.guard, sg)) sub.insert(sg);
          }
          if (sub.empty()) continue;
          auto r = run(*b.body, sub);
          out.insert(r.begin(), r.end());
        }
        return out;
      case StmtKind::Rep: {
        const auto head = closure(s, in);
        for (const auto& sg : head) {
          bool any = false;
          for (const auto& b : s.branches) any = any || holds(b.guard, sg);
          if (!any) out.insert(sg);
        }
        return out;
      }
    }
    return out;
  }

  // All states seen at the loop head.
  std::set<ClassicalState> closure(const Stmt& rep, const std::set<ClassicalState>& in) {
    std::set<ClassicalState> head = in;
    std::set<ClassicalState> frontier = in;
    while (!frontier.empty()) {
      std::set<ClassicalState> next;
      for (const auto& b : rep.branches) {
        std::set<ClassicalState> sub;
        for (const auto& sg : frontier) {
          if (holds(b.guard, sg)) sub.insert(sg);
        }
        if (sub.empty()) continue;
        for (const auto& t : run(*b.body, sub)) {
          if (head.count(t)) continue;
          if (head.size() >= cap_) {
            truncated = true;
            continue;
          }
          head.insert(t);
          next.insert(t);
        }
      }
      frontier = std::move(next);
    }
    return head;
  }

 private:
  std::size_t cap_;
};

// Θ restricted to the samples, one clause per state.
CqAssertion tabulate(const CqAssertion& t, const Samples& samples, const VarEnv& env) {
  CqAssertion out{t.qvars, {}};
  for (const auto& sg : samples) {
    CMatrix m = eval_at(t, sg);
    if (m.norm() <= 1e-14) continue;
    std::vector<ExprPtr> parts;
    for (const auto& [x, v] : sg) {
      auto it = env.find(x);
      if (it != env.end() && it->second == Type::Bool) {
        parts.push_back(v ? var_ref(x) : mk_not(var_ref(x)));
      } else {
        parts.push_back(binary(Op::Eq, var_ref(x), int_lit(v)));
      }
    }
    out.clauses.push_back({conjunction(parts), std::move(m)});
  }
  return out;
}

class Xp {
 public:
  Xp(XpMode mode, const WpOptions& opts, const VarEnv& env) : mode_(mode), opts_(opts), env_(env) {}

  WpResult res;

  CqAssertion go(const Stmt& s, const CqAssertion& t, const Samples& in) {
    const QVarList& v = t.qvars;
    switch (s.kind) {
      case StmtKind::Skip:
        return t;
      case StmtKind::Abort:
        return mode_ == XpMode::Wlp ? top(v) : bot(v);
      case StmtKind::Assign:
        return subst(t, s.var, s.expr);
      case StmtKind::RandAssign: {
        std::vector<std::pair<double, CqAssertion>> terms;
        for (const auto& [d, p] : s.dist) {
          const double w = boost::rational_cast<double>(p);
          if (w == 0.0) continue;
          terms.push_back({w, subst(t, s.var, value_lit(s.var, d, env_))});
        }
        return tidy(lincomb(terms), in);
      }
      case StmtKind::Measure: {
        std::vector<std::pair<double, CqAssertion>> terms;
        for (std::size_t i = 0; i < s.ops.size(); ++i) {
          CqAssertion ti = subst(t, s.var, value_lit(s.var, static_cast<std::int64_t>(i), env_));
          terms.push_back({1.0, pullback(ti, {s.ops[i]}, s.qvars)});
        }
        return tidy(lincomb(terms), in);
      }
      case StmtKind::InitQ: {
        const QVar& q = s.qvars.front();
        std::vector<CMatrix> ks;
        for (int i = 0; i < q.dim; ++i) {
          CMatrix k = CMatrix::Zero(q.dim, q.dim);
          k(0, i) = 1.0;
          ks.push_back(k);
        }
        return pullback(t, ks, s.qvars);
      }
      case StmtKind::ApplyU:
        return pullback(t, {s.ops.front()}, s.qvars);
      case StmtKind::Seq: {
        std::vector<Samples> at{in};
        Post post(opts_.sample_cap);
        for (std::size_t k = 0; k + 1 < s.children.size(); ++k) {
          std::set<ClassicalState> cur(at.back().begin(), at.back().end());
          auto nx = post.run(*s.children[k], cur);
          at.emplace_back(nx.begin(), nx.end());
        }
        res.truncated = res.truncated || post.truncated;
        CqAssertion cur = t;
        for (std::size_t k = s.children.size(); k-- > 0;) cur = go(*s.children[k], cur, at[k]);
        return cur;
      }
      case StmtKind::Alt: {
        std::vector<std::pair<double, CqAssertion>> terms;
        std::vector<ExprPtr> negs;
        for (const auto& b : s.branches) {
          terms.push_back({1.0, conj(b.guard, go(*b.body, t, filter(in, b.guard)))});
          negs.push_back(mk_not(b.guard));
        }
        if (mode_ == XpMode::Wlp) terms.push_back({1.0, conj(conjunction(negs), top(v))});
        if (terms.empty()) return bot(v);
        return tidy(lincomb(terms), in);
      }
      case StmtKind::Rep:
        return loop(s, t, in);
    }
    return t;
  }

 private:
  CqAssertion tidy(const CqAssertion& a, const Samples& in) {
    try {
      return simplify(a, opts_.clause_cap);
    } catch (const AssertionError&) {
      if (in.empty()) throw;
      res.tabulated = true;
      return tabulate(a, in, env_);
    }
  }

  CqAssertion loop(const Stmt& s, const CqAssertion& t, const Samples& in) {
    Post post(opts_.sample_cap);
    const auto head_set = post.closure(s, std::set<ClassicalState>(in.begin(), in.end()));
    res.truncated = res.truncated || post.truncated;
    const Samples head(head_set.begin(), head_set.end());
    std::vector<ExprPtr> negs;
    for (const auto& b : s.branches) negs.push_back(mk_not(b.guard));
    const CqAssertion exit_part = conj(conjunction(negs), t);
    std::vector<Samples> branch_in;
    for (const auto& b : s.branches) branch_in.push_back(filter(head, b.guard));

    CqAssertion cur = mode_ == XpMode::Wlp ? top(t.qvars) : bot(t.qvars);
    double residual = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    bool converged = false;
    while (k < opts_.budget) {
      std::vector<std::pair<double, CqAssertion>> terms;
      for (std::size_t i = 0; i < s.branches.size(); ++i) {
        terms.push_back({1.0, conj(s.branches[i].guard, go(*s.branches[i].body, cur, branch_in[i]))});
      }
      terms.push_back({1.0, exit_part});
      CqAssertion next = tidy(lincomb(terms), head);
      residual = max_distance(next, cur, head);
      cur = std::move(next);
      ++k;
      if (residual < opts_.eps) {
        converged = true;
        break;
      }
    }
    res.iterations += k;
    res.converged = res.converged && converged;
    res.residual = std::max(res.residual, residual);
    return cur;
  }

  XpMode mode_;
  const WpOptions& opts_;
  const VarEnv& env_;
};

VarEnv full_env(const StmtPtr& s, const CqAssertion& t, const VarEnv& base) {
  VarEnv env = base;
  std::set<std::string> names = var_sets(*s).cv;
  for (const auto& c : t.clauses) collect_vars(c.guard, names);
  for (const auto& n : names) env.emplace(n, Type::Int);
  return env;
}

}  // namespace

std::vector<ClassicalState> post_states(const StmtPtr& s, const std::vector<ClassicalState>& in,
                                        std::size_t cap, bool* truncated) {
  Post post(cap);
  auto r = post.run(*s, std::set<ClassicalState>(in.begin(), in.end()));
  if (truncated) *truncated = post.truncated;
  return {r.begin(), r.end()};
}

std::vector<ClassicalState> entry_samples(const WpOptions& opts, const VarEnv& env) {
  if (opts.samples.empty()) return enumerate_states(env, opts.domains);
  std::set<ClassicalState> out;
  for (const auto& s : opts.samples) out.insert(complete_state(s, env));
  return {out.begin(), out.end()};
}

WpResult xp(XpMode mode, const StmtPtr& s, const CqAssertion& post, const WpOptions& opts) {
  const VarEnv env = full_env(s, post, opts.env);
  const QVarList need = qvars_of(*s);
  CqAssertion t = post;
  bool padded = false;
  if (!is_subset(need, post.qvars)) {
    t = pad(post, union_of(post.qvars, need));
    padded = true;
  }
  Xp x(mode, opts, env);
  const Samples in = entry_samples(opts, env);
  CqAssertion a = x.go(*s, t, in);
  WpResult r = x.res;
  r.assertion = simplify(a, std::max(opts.clause_cap, a.clauses.size()));
  r.padded = padded;
  return r;
}

WpResult xp_program(XpMode mode, const DistProgram& p, const CqAssertion& post, WpOptions opts) {
  for (const auto& [k, v] : p.env()) opts.env.emplace(k, v);
  if (p.is_sequential()) return xp(mode, p.processes.front().init, post, opts);
  const SeqTransformResult tr = sequentialise(p);
  CqAssertion target = conj(tr.term, post);
  if (mode == XpMode::Wlp) target = lincomb({{1.0, target}, {1.0, conj(mk_not(tr.term), top(post.qvars))}});
  return xp(mode, tr.program, simplify(target), opts);
}

DualityReport check_duality(const DistProgram& p, const CqAssertion& post, const std::vector<CqState>& states,
                            XpMode mode, WpOptions opts, const DenoteOptions& dopts, double tol) {
  const VarEnv env = p.env();
  std::set<ClassicalState> seen(opts.samples.begin(), opts.samples.end());
  for (const auto& d : states) {
    for (const auto& [sg, m] : complete_states(d, env).entries) seen.insert(sg);
  }
  opts.samples.assign(seen.begin(), seen.end());
  DualityReport r;
  r.xp = xp_program(mode, p, post, opts);
  r.ok = r.xp.converged;
  for (const auto& d0 : states) {
    const CqState d = complete_states(d0, env);
    const DenoteResult den = denote(p, d, dopts);
    if (!den.converged) r.ok = false;
    const CqAssertion lhs_t = pad(r.xp.assertion, union_of(d.qvars, r.xp.assertion.qvars));
    const CqState dd = extend_state(d, lhs_t.qvars);
    const double lhs = exp_satisfy(dd, lhs_t);
    const CqState out = extend_state(den.state, union_of(den.state.qvars, post.qvars));
    double rhs = exp_satisfy(out, post);
    if (mode == XpMode::Wlp) rhs += trace(d) - trace(den.state);
    const double dev = std::abs(lhs - rhs);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  if (r.max_deviation > tol) r.ok = false;
  return r;
}

bool StructureReport::ok(double tol) const {
  return complement <= tol && wp_linear <= tol && (!affine_checked || wlp_affine <= tol) && monotone;
}

StructureReport check_structure(const DistProgram& p, const CqAssertion& t1, const CqAssertion& t2, double l1,
                                double l2, WpOptions opts) {
  for (const auto& [k, v] : p.env()) opts.env.emplace(k, v);
  StructureReport r;
  const QVarList reg = union_of(union_of(t1.qvars, t2.qvars), p.qvars());
  const CqAssertion a = pad(t1, reg), b = pad(t2, reg);
  const VarEnv env = [&] {
    VarEnv e = opts.env;
    for (const auto& c : a.clauses) {
      for (const auto& n : free_vars(c.guard)) e.emplace(n, Type::Int);
    }
    for (const auto& c : b.clauses) {
      for (const auto& n : free_vars(c.guard)) e.emplace(n, Type::Int);
    }
    return e;
  }();
  const auto samples = entry_samples(opts, env);
  opts.samples = samples;
  opts.env = env;

  const auto wp_a = xp_program(XpMode::Wp, p, a, opts).assertion;
  const auto wlp_ca = xp_program(XpMode::Wlp, p, complement(a), opts).assertion;
  r.complement = max_distance(lincomb({{1.0, wp_a}, {1.0, wlp_ca}}), top(reg), samples);

  const auto wp_b = xp_program(XpMode::Wp, p, b, opts).assertion;
  const auto wp_mix = xp_program(XpMode::Wp, p, lin(a, b, l1, l2), opts).assertion;
  r.wp_linear = max_distance(wp_mix, lin(wp_a, wp_b, l1, l2), samples);

  if (std::abs(l1 + l2 - 1.0) < 1e-12) {
    r.affine_checked = true;
    const auto wlp_a = xp_program(XpMode::Wlp, p, a, opts).assertion;
    const auto wlp_b = xp_program(XpMode::Wlp, p, b, opts).assertion;
    const auto wlp_mix = xp_program(XpMode::Wlp, p, lin(a, b, l1, l2), opts).assertion;
    r.wlp_affine = max_distance(wlp_mix, lin(wlp_a, wlp_b, l1, l2), samples);
  }
  if (lesssim(a, b, samples).ok) {
    const auto wlp_a = xp_program(XpMode::Wlp, p, a, opts).assertion;
    const auto wlp_b = xp_program(XpMode::Wlp, p, b, opts).assertion;
    r.monotone = lesssim(wp_a, wp_b, samples, 1e-8).ok && lesssim(wlp_a, wlp_b, samples, 1e-8).ok;
  }
  return r;
}

}  // namespace dqhl
