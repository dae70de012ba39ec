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

#include "dqhl/hoare.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>

#include "dqhl/classical_state.hpp"
#include "dqhl/seqtransform.hpp"
#include "dqhl/wp.hpp"

namespace dqhl {

const char* mode_name(Mode m) { return m == Mode::Total ? "total" : "partial"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "Skip",    "Abort", "Assn",  "Rassn", "Init",  "Unit",  "Meas",   "Seq",     "Alt",
      "Rep",     "Imp",   "Dist",  "Abort-T", "Alt-T", "Rep-T", "Dist-T", "C-Rep-T", "C-Dist-T"};
  return names;
}

bool is_total_rule(const std::string& rule) {
  return rule == "Abort-T" || rule == "Alt-T" || rule == "Rep-T" || rule == "Dist-T" || rule == "C-Rep-T" ||
         rule == "C-Dist-T";
}

namespace {

using Samples = std::vector<ClassicalState>;

VarEnv triple_env(const HoareTriple& t) {
  VarEnv env = t.program.env();
  for (const auto* a : {&t.pre, &t.post}) {
    for (const auto& c : a->clauses) {
      for (const auto& n : free_vars(c.guard)) env.emplace(n, Type::Int);
    }
  }
  return env;
}

StateCheck check_one(const HoareTriple& t, const CqState& d0, const VarEnv& env, const DenoteOptions& opts,
                     double tol) {
  const QVarList reg = union_of(union_of(union_of(d0.qvars, t.program.qvars()), t.pre.qvars), t.post.qvars);
  const CqState d = extend_state(complete_states(d0, env), reg);
  StateCheck c;
  c.lhs = exp_satisfy(d, t.pre);
  const DenoteResult den = denote(t.program, d, opts);
  const CqState out = extend_state(den.state, union_of(den.state.qvars, reg));
  c.converged = den.converged;
  c.slack = trace(d) - trace(out);
  c.rhs = exp_satisfy(out, t.post);
  if (t.mode == Mode::Partial) c.rhs += c.slack;
  const bool holds_here = c.lhs <= c.rhs + tol;
  if (holds_here) {
    c.verdict = (!c.converged && t.mode == Mode::Partial) ? Verdict::Inconclusive : Verdict::Pass;
  } else {
    c.verdict = Verdict::Fail;
  }
  return c;
}

}  // namespace

SemanticReport check_semantic(const HoareTriple& t, const std::vector<CqState>& states, const DenoteOptions& opts,
                              double tol, int jobs) {
  const VarEnv env = triple_env(t);
  SemanticReport r;
  r.states.resize(states.size());
  if (jobs <= 1 || states.size() < 2) {
    for (std::size_t k = 0; k < states.size(); ++k) r.states[k] = check_one(t, states[k], env, opts, tol);
  } else {
    std::vector<std::future<void>> fs;
    const std::size_t n = static_cast<std::size_t>(jobs);
    for (std::size_t w = 0; w < n; ++w) {
      fs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t k = w; k < states.size(); k += n) r.states[k] = check_one(t, states[k], env, opts, tol);
      }));
    }
    for (auto& f : fs) f.get();
  }
  r.min_gap = std::numeric_limits<double>::infinity();
  bool inconclusive = false;
  for (const auto& c : r.states) {
    r.min_gap = std::min(r.min_gap, c.rhs - c.lhs);
    if (c.verdict == Verdict::Fail) ++r.failing;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  if (states.empty()) r.min_gap = 0.0;
  r.verdict = r.failing ? Verdict::Fail : (inconclusive ? Verdict::Inconclusive : Verdict::Pass);
  return r;
}

namespace {

// ---- classical exploration ----------------------------------------------------

struct ClassicalOutcome {
  std::set<ClassicalState> out;
  bool stuck = false;  // abort, failing alternative, or a loop still running at the cap
};

class Explorer {
 public:
  explicit Explorer(std::size_t cap, std::set<ClassicalState>* seen = nullptr) : cap_(cap), seen_(seen) {}

  bool truncated = false;

  ClassicalOutcome run(const Stmt& s, const std::set<ClassicalState>& in) {
    note(in);
    ClassicalOutcome r;
    switch (s.kind) {
      case StmtKind::Skip:
      case StmtKind::InitQ:
      case StmtKind::ApplyU:
        r.out = in;
        break;
      case StmtKind::Abort:
        r.stuck = !in.empty();
        break;
      case StmtKind::Assign:
        for (auto sg : in) {
          sg[s.var] = eval(s.expr, sg);
          r.out.insert(std::move(sg));
        }
        break;
      case StmtKind::RandAssign:
        for (const auto& sg : in) {
          for (const auto& [v, p] : s.dist) {
            if (p.numerator() == 0) continue;
            auto t = sg;
            t[s.var] = v;
            r.out.insert(std::move(t));
          }
        }
        break;
      case StmtKind::Measure:
        for (const auto& sg : in) {
          for (std::size_t i = 0; i < s.ops.size(); ++i) {
            auto t = sg;
            t[s.var] = static_cast<std::int64_t>(i);
            r.out.insert(std::move(t));
          }
        }
        break;
      case StmtKind::Seq: {
        r.out = in;
        for (const auto& c : s.children) {
          auto x = run(*c, r.out);
          r.stuck = r.stuck || x.stuck;
          r.out = std::move(x.out);
        }
        break;
      }
      case StmtKind::Alt:
        for (const auto& sg : in) {
          bool any = false;
          for (const auto& b : s.branches) any = any || holds(b.guard, sg);
          if (!any) r.stuck = true;
        }
        for (const auto& b : s.branches) {
          std::set<ClassicalState> sub;
          for (const auto& sg : in) {
            if (holds(b.guard, sg)) sub.insert(sg);
          }
          if (sub.empty()) continue;
          auto x = run(*b.body, sub);
          r.stuck = r.stuck || x.stuck;
          r.out.insert(x.out.begin(), x.out.end());
        }
        break;
      case StmtKind::Rep: {
        std::set<ClassicalState> visited = in;
        std::set<ClassicalState> frontier = in;
        std::size_t rounds = 0;
        while (!frontier.empty()) {
          std::set<ClassicalState> next;
          for (const auto& sg : frontier) {
            bool any = false;
            for (const auto& b : s.branches) any = any || holds(b.guard, sg);
            if (!any) r.out.insert(sg);
          }
          for (const auto& b : s.branches) {
            std::set<ClassicalState> sub;
            for (const auto& sg : frontier) {
              if (holds(b.guard, sg)) sub.insert(sg);
            }
            if (sub.empty()) continue;
            auto x = run(*b.body, sub);
            r.stuck = r.stuck || x.stuck;
            for (const auto& t : x.out) {
              if (visited.count(t)) {
                // revisiting a head state means a path that can loop forever
                r.stuck = true;
                continue;
              }
              if (visited.size() >= cap_) {
                truncated = true;
                r.stuck = true;
                continue;
              }
              visited.insert(t);
              next.insert(t);
            }
          }
          frontier = std::move(next);
          note(frontier);
          if (++rounds > cap_) {
            r.stuck = true;
            break;
          }
        }
        break;
      }
    }
    note(r.out);
    return r;
  }

 private:
  void note(const std::set<ClassicalState>& xs) {
    if (!seen_) return;
    for (const auto& x : xs) {
      if (seen_->size() >= cap_) {
        truncated = true;
        return;
      }
      seen_->insert(x);
    }
  }

  std::size_t cap_;
  std::set<ClassicalState>* seen_;
};

}  // namespace

std::vector<ClassicalState> reachable_states(const StmtPtr& s, const std::vector<ClassicalState>& entry,
                                             std::size_t cap) {
  std::set<ClassicalState> seen;
  Explorer ex(cap, &seen);
  ex.run(*s, std::set<ClassicalState>(entry.begin(), entry.end()));
  return {seen.begin(), seen.end()};
}

std::vector<ClassicalState> reachable_states(const DistProgram& p, const std::vector<ClassicalState>& entry,
                                             std::size_t cap) {
  const VarEnv env = p.env();
  std::vector<ClassicalState> in;
  for (const auto& e : entry) in.push_back(complete_state(e, env));
  if (p.is_sequential()) return reachable_states(p.processes.front().init, in, cap);
  return reachable_states(sequentialise(p).program, in, cap);
}

std::vector<CqState> random_test_states(const QVarList& qvars, const std::vector<ClassicalState>& samples, Rng& rng,
                                        std::size_t max_single, std::size_t mixed) {
  std::vector<CqState> out;
  if (samples.empty()) return out;
  const std::size_t n = std::min(max_single, samples.size());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = samples.size() == n ? k : (k * samples.size()) / n;
    out.push_back(random_cq_state(qvars, {samples[idx]}, rng, 1.0, true));
  }
  for (std::size_t k = 0; k < mixed; ++k) {
    std::vector<ClassicalState> pick;
    const std::size_t m = std::min<std::size_t>(3, samples.size());
    for (std::size_t j = 0; j < m; ++j) {
      pick.push_back(samples[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(samples.size()) - 1))]);
    }
    std::sort(pick.begin(), pick.end());
    pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
    out.push_back(random_cq_state(qvars, pick, rng, 1.0, false));
  }
  return out;
}

namespace {

// ---- rule checking -----------------------------------------------------------

class Checker {
 public:
  Checker(const RuleInstance& inst, const RuleContext& ctx) : inst_(inst), ctx_(ctx) {
    rep_.rule = inst.rule;
    samples_ = ctx.samples;
    if (samples_.empty()) {
      const VarEnv env = triple_env(inst.conclusion);
      samples_ = reachable_states(inst.conclusion.program, enumerate_states(env, {}, 256));
    } else {
      const VarEnv env = triple_env(inst.conclusion);
      for (auto& s : samples_) s = complete_state(s, env);
    }
  }

  RuleReport run() {
    const std::string& r = inst_.rule;
    const auto& names = rule_names();
    if (std::find(names.begin(), names.end(), r) == names.end()) {
      add("rule", false, "unknown rule '" + r + "'");
      return rep_;
    }
    if (inst_.conclusion.mode == Mode::Total && (r == "Abort" || r == "Alt" || r == "Rep" || r == "Dist")) {
      add("mode", false, "(" + r + ") is a partial-correctness rule; use (" + r + "-T) for total correctness");
    }
    for (std::size_t k = 0; k < inst_.premises.size(); ++k) {
      if (inst_.premises[k].mode != inst_.conclusion.mode) {
        add("premise " + std::to_string(k + 1) + " mode", false, "premise mode differs from the conclusion");
      }
    }
    if (r == "Skip" || r == "Assn" || r == "Rassn" || r == "Init" || r == "Unit" || r == "Meas") {
      atomic();
    } else if (r == "Abort" || r == "Abort-T") {
      abort_rule(r == "Abort-T");
    } else if (r == "Seq") {
      seq();
    } else if (r == "Alt" || r == "Alt-T") {
      alt(r == "Alt-T");
    } else if (r == "Rep" || r == "Rep-T" || r == "C-Rep-T") {
      rep(r);
    } else if (r == "Imp") {
      imp();
    } else {
      dist(r);
    }
    semantic();
    for (const auto& f : rep_.findings) rep_.ok = rep_.ok && f.ok;
    return rep_;
  }

 private:
  void add(const std::string& what, bool ok, const std::string& detail = "", double dev = 0.0) {
    rep_.findings.push_back({what, ok, detail, dev});
  }

  void count(std::size_t want) {
    if (inst_.premises.size() != want) {
      add("premises", false,
          "expected " + std::to_string(want) + " premise(s), got " + std::to_string(inst_.premises.size()));
      shape_ok_ = false;
    }
  }

  const Stmt* seq_of(const DistProgram& p, const std::string& who) {
    if (!p.is_sequential()) {
      add(who + " program", false, "expected a sequential program");
      shape_ok_ = false;
      return nullptr;
    }
    return p.processes.front().init.get();
  }

  void equiv(const std::string& what, const CqAssertion& got, const CqAssertion& want) {
    const double d = max_distance(got, want, samples_);
    add(what, d <= ctx_.tol, d <= ctx_.tol ? "" : "assertions differ by " + std::to_string(d), d);
  }

  void leq(const std::string& what, const CqAssertion& a, const CqAssertion& b) {
    const LessReport l = lesssim(a, b, samples_, ctx_.tol);
    std::string detail;
    if (!l.ok) {
      detail = "fails at " + to_string(*l.witness) + " (min eigenvalue " + std::to_string(l.min_eigenvalue) + ")";
      if (!rep_.witness) {
        rep_.witness = l.witness;
        rep_.eigenvector = l.eigenvector;
      }
    }
    add(what, l.ok, detail, l.ok ? 0.0 : -l.min_eigenvalue);
  }

  void same_prog(const std::string& what, const Stmt* got, const StmtPtr& want) {
    if (!got) return;
    StmtPtr g(got, [](const Stmt*) {});
    const bool ok = same_stmt(g, want);
    add(what, ok, ok ? "" : "program does not match the rule's shape");
    if (!ok) shape_ok_ = false;
  }

  void atomic() {
    count(0);
    const HoareTriple& c = inst_.conclusion;
    const Stmt* s = seq_of(c.program, "conclusion");
    if (!s) return;
    const std::string& r = inst_.rule;
    const std::map<std::string, StmtKind> kinds = {{"Skip", StmtKind::Skip},   {"Assn", StmtKind::Assign},
                                                   {"Rassn", StmtKind::RandAssign}, {"Init", StmtKind::InitQ},
                                                   {"Unit", StmtKind::ApplyU}, {"Meas", StmtKind::Measure}};
    if (s->kind != kinds.at(r)) {
      add("shape", false, "(" + r + ") does not apply to this statement");
      return;
    }
    if (r == "Init" || r == "Unit" || r == "Meas") {
      bool inside = true;
      for (const auto& q : s->qvars) inside = inside && contains(c.post.qvars, q.name);
      add("side: quantum variables inside qv(post)", inside, inside ? "" : to_string(s->qvars) + " not in " + to_string(c.post.qvars));
    }
    WpOptions wo;
    wo.samples = samples_;
    wo.env = triple_env(c);
    const StmtPtr sp(s, [](const Stmt*) {});
    const WpResult w = wp(sp, c.post, wo);
    equiv("pre matches the rule's precondition", c.pre, w.assertion);
  }

  void abort_rule(bool total) {
    count(0);
    const HoareTriple& c = inst_.conclusion;
    const Stmt* s = seq_of(c.program, "conclusion");
    if (!s) return;
    if (s->kind != StmtKind::Abort) {
      add("shape", false, "the program is not abort");
      return;
    }
    equiv("pre", c.pre, total ? bot(c.pre.qvars) : top(c.pre.qvars));
    equiv("post", c.post, bot(c.post.qvars));
  }

  void seq() {
    const auto& P = inst_.premises;
    const HoareTriple& c = inst_.conclusion;
    if (P.size() < 2) {
      add("premises", false, "(Seq) needs at least two premises");
      return;
    }
    std::vector<StmtPtr> parts;
    for (std::size_t k = 0; k < P.size(); ++k) {
      const Stmt* s = seq_of(P[k].program, "premise " + std::to_string(k + 1));
      if (!s) return;
      parts.push_back(P[k].program.processes.front().init);
    }
    const Stmt* cs = seq_of(c.program, "conclusion");
    same_prog("program is the composition of the premises", cs, mk_seq(parts));
    equiv("pre of the first premise", P.front().pre, c.pre);
    for (std::size_t k = 0; k + 1 < P.size(); ++k) {
      equiv("premise " + std::to_string(k + 1) + " post = premise " + std::to_string(k + 2) + " pre", P[k].post,
            P[k + 1].pre);
    }
    equiv("post of the last premise", P.back().post, c.post);
  }

  void alt(bool total) {
    const HoareTriple& c = inst_.conclusion;
    const Stmt* s = seq_of(c.program, "conclusion");
    if (!s) return;
    if (s->kind != StmtKind::Alt) {
      add("shape", false, "the program is not an alternative command");
      return;
    }
    count(s->branches.size());
    if (!shape_ok_) return;
    std::vector<ExprPtr> guards;
    for (std::size_t i = 0; i < s->branches.size(); ++i) {
      const auto& b = s->branches[i];
      const HoareTriple& p = inst_.premises[i];
      const std::string tag = "premise " + std::to_string(i + 1);
      same_prog(tag + " program", seq_of(p.program, tag), b.body);
      equiv(tag + " pre = B_i ∧ Θ", p.pre, conj(b.guard, c.pre));
      equiv(tag + " post", p.post, c.post);
      guards.push_back(b.guard);
    }
    exclusive(guards);
    if (total) leq("side: Θ ≲ ⋁B_i", c.pre, conj(disjunction(guards), top(c.pre.qvars)));
  }

  void exclusive(const std::vector<ExprPtr>& guards) {
    for (const auto& sg : samples_) {
      int n = 0;
      for (const auto& g : guards) n += holds(g, sg) ? 1 : 0;
      if (n > 1) {
        add("guards mutually exclusive", false, "several guards hold at " + to_string(sg));
        return;
      }
    }
    rep_.hypotheses.push_back("guards are mutually exclusive (not refuted on " + std::to_string(samples_.size()) +
                              " sampled states)");
  }

  void rep(const std::string& r) {
    const HoareTriple& c = inst_.conclusion;
    const Stmt* s = seq_of(c.program, "conclusion");
    if (!s) return;
    if (s->kind != StmtKind::Rep) {
      add("shape", false, "the program is not a repetitive command");
      return;
    }
    count(s->branches.size());
    if (!shape_ok_) return;
    std::vector<ExprPtr> guards, negs;
    for (std::size_t i = 0; i < s->branches.size(); ++i) {
      const auto& b = s->branches[i];
      const HoareTriple& p = inst_.premises[i];
      const std::string tag = "premise " + std::to_string(i + 1);
      same_prog(tag + " program", seq_of(p.program, tag), b.body);
      equiv(tag + " pre = B_i ∧ Θ", p.pre, conj(b.guard, c.pre));
      equiv(tag + " post = Θ", p.post, c.pre);
      guards.push_back(b.guard);
      negs.push_back(mk_not(b.guard));
    }
    equiv("post = Θ ∧ ⋀¬B_i", c.post, conj(conjunction(negs), c.pre));
    exclusive(guards);
    if (r == "Rep") return;
    if (!inst_.ranking) {
      add("ranking", false, "(" + r + ") needs a ranking witness");
      return;
    }
    const bool want_classical = r == "C-Rep-T";
    if ((inst_.ranking->kind == RankingWitness::Classical) != want_classical) {
      add("ranking", false, want_classical ? "expected a classical ranking function" : "expected ranking assertions");
      return;
    }
    RuleContext rc = ctx_;
    rc.samples = samples_;
    const StmtPtr sp(s, [](const Stmt*) {});
    ranking(check_ranking(sp, *inst_.ranking, c.pre, rc, triple_env(c)));
  }

  void ranking(const RankingReport& rr) {
    std::string detail;
    for (const auto& f : rr.failures) detail += (detail.empty() ? "" : "; ") + f;
    add("ranking witness (" + std::to_string(rr.checks) + " checks)", rr.ok, detail);
  }

  void imp() {
    count(1);
    if (!shape_ok_) return;
    const HoareTriple& c = inst_.conclusion;
    const HoareTriple& p = inst_.premises.front();
    const bool same = same_program(p.program, c.program);
    add("premise program", same, same ? "" : "premise and conclusion programs differ");
    leq("side: Θ ≲ Θ'", c.pre, p.pre);
    leq("side: Ψ' ≲ Ψ", p.post, c.post);
  }

  void dist(const std::string& r) {
    const HoareTriple& c = inst_.conclusion;
    const DistProgram& prog = c.program;
    if (prog.is_sequential()) {
      add("shape", false, "(" + r + ") needs a distributed program");
      return;
    }
    const auto gamma = gamma_of(prog);
    count(1 + gamma.size());
    if (!shape_ok_) return;
    const auto [term, block] = term_block(prog);
    const HoareTriple& p0 = inst_.premises.front();
    same_prog("premise 1 program = S_{1,0}; ...; S_{n,0}", seq_of(p0.program, "premise 1"), init_sequence(prog));
    equiv("premise 1 pre", p0.pre, c.pre);
    const CqAssertion& psi = p0.post;
    for (std::size_t g = 0; g < gamma.size(); ++g) {
      const HoareTriple& p = inst_.premises[1 + g];
      const GammaTuple& t = gamma[g];
      const std::string tag = "premise " + std::to_string(g + 2) + " (Γ tuple " + std::to_string(t.i + 1) + "," +
                              std::to_string(t.j + 1) + "," + std::to_string(t.k + 1) + "," +
                              std::to_string(t.l + 1) + ")";
      same_prog(tag + " program", seq_of(p.program, tag), gamma_body(prog, t));
      equiv(tag + " pre = B ∧ B ∧ Ψ", p.pre, conj(pair_guard(prog, t), psi));
      equiv(tag + " post = Ψ", p.post, psi);
    }
    equiv("post = Ψ ∧ TERM", c.post, conj(term, psi));
    if (r == "Dist") return;
    if (r == "Dist-T") leq("side: Ψ ∧ BLOCK ≲ TERM", conj(block, psi), conj(term, top(psi.qvars)));
    if (!inst_.ranking) {
      add("ranking", false, "(" + r + ") needs a ranking witness");
      return;
    }
    const bool want_classical = r == "C-Dist-T";
    if ((inst_.ranking->kind == RankingWitness::Classical) != want_classical) {
      add("ranking", false, want_classical ? "expected a classical ranking function" : "expected ranking assertions");
      return;
    }
    RuleContext rc = ctx_;
    rc.samples = samples_;
    if (want_classical) {
      const ExprPtr p = inst_.ranking->p ? inst_.ranking->p : support_guard(psi);
      bool ok = true;
      std::string detail;
      for (const auto& sg : samples_) {
        if (holds(p, sg) && holds(block, sg) && !holds(term, sg)) {
          ok = false;
          detail = "p ∧ BLOCK holds but TERM does not at " + to_string(sg);
          break;
        }
      }
      add("side: p ∧ BLOCK → TERM", ok, detail);
    }
    ranking(check_ranking(prog, *inst_.ranking, psi, rc));
  }

  void semantic() {
    if (ctx_.states.empty()) return;
    auto one = [&](const HoareTriple& t, const std::string& tag) {
      const SemanticReport s = check_semantic(t, ctx_.states, ctx_.denote, ctx_.tol, ctx_.jobs);
      const bool ok = s.verdict != Verdict::Fail;
      std::string detail = std::string(verdict_name(s.verdict)) + " on " + std::to_string(s.states.size()) + " states";
      if (!ok) detail += ", " + std::to_string(s.failing) + " failing";
      add("semantic check of " + tag, ok, detail, s.min_gap < 0 ? -s.min_gap : 0.0);
      if (s.verdict == Verdict::Inconclusive) rep_.hypotheses.push_back(tag + ": partial check inconclusive (budget)");
    };
    for (std::size_t k = 0; k < inst_.premises.size(); ++k) one(inst_.premises[k], "premise " + std::to_string(k + 1));
    one(inst_.conclusion, "conclusion");
  }

  const RuleInstance& inst_;
  const RuleContext& ctx_;
  RuleReport rep_;
  Samples samples_;
  bool shape_ok_ = true;
};

// Branch of a loop-like construct for ranking checks.
struct RankBranch {
  ExprPtr guard;
  StmtPtr body;
  std::string name;
};

RankingReport rank_check(const std::vector<RankBranch>& branches, const RankingWitness& w, const CqAssertion& inv,
                         const RuleContext& ctx, const VarEnv& env, const std::set<std::string>& program_vars,
                         const DistProgram& scope) {
  RankingReport r;
  auto fail = [&](const std::string& m) {
    r.ok = false;
    if (r.failures.size() < 16) r.failures.push_back(m);
  };
  std::vector<ClassicalState> samples;
  for (const auto& s : ctx.samples) samples.push_back(complete_state(s, env));

  if (w.kind == RankingWitness::Classical) {
    if (!w.t) {
      fail("no ranking expression");
      return r;
    }
    const ExprPtr p = w.p ? w.p : support_guard(inv);
    std::set<std::string> used = program_vars;
    collect_vars(p, used);
    collect_vars(w.t, used);
    if (used.count(w.z)) fail("'" + w.z + "' is not fresh");
    for (const auto& sg : samples) {
      ++r.checks;
      if (holds(p, sg) && eval(w.t, sg) < 0) fail("p holds but t < 0 at " + to_string(sg));
    }
    for (const auto& b : branches) {
      for (const auto& sg : samples) {
        if (!holds(b.guard, sg) || !holds(p, sg)) continue;
        ++r.checks;
        const std::int64_t z = eval(w.t, sg);
        Explorer ex(4096);
        const auto out = ex.run(*b.body, {sg});
        if (out.stuck) fail(b.name + " may not terminate from " + to_string(sg));
        for (const auto& t : out.out) {
          if (eval(w.t, t) >= z) {
            fail(b.name + ": t does not decrease from " + to_string(sg) + " to " + to_string(t));
            break;
          }
        }
      }
    }
    return r;
  }

  const auto& th = w.prefix;
  const std::size_t K = th.size();
  if (K == 0) {
    // Θ ⊑ ⊥ forces Θ = 0 everywhere.
    if (max_distance(inv, bot(inv.qvars), samples) > ctx.tol) fail("Θ ⋢ Θ_0 = ⊥");
    return r;
  }
  if (!lesssim(inv, th[0], samples, ctx.tol).ok) fail("Θ ⋢ Θ_0");
  for (std::size_t k = 0; k + 1 < K; ++k) {
    ++r.checks;
    if (!lesssim(th[k + 1], th[k], samples, ctx.tol).ok) fail("Θ_" + std::to_string(k + 1) + " ⋢ Θ_" + std::to_string(k));
  }
  QVarList reg = inv.qvars;
  for (const auto& t : th) reg = union_of(reg, t.qvars);
  for (const auto& b : branches) reg = union_of(reg, qvars_of(*b.body));
  for (const auto& d0 : ctx.states) {
    const CqState d = extend_state(complete_states(d0, env), union_of(d0.qvars, reg));
    for (const auto& b : branches) {
      const DistProgram frag = fragment(scope, b.body);
      const DenoteResult den = denote(frag, restrict(d, b.guard), ctx.denote);
      const CqState out = extend_state(den.state, union_of(den.state.qvars, d.qvars));
      for (std::size_t k = 0; k < K; ++k) {
        ++r.checks;
        const double lhs = exp_satisfy(out, th[k]);
        const double rhs = k + 1 < K ? exp_satisfy(d, th[k + 1]) : 0.0;
        if (lhs > rhs + ctx.tol) {
          std::ostringstream os;
          os << b.name << ", k = " << k << ": " << lhs << " > " << rhs;
          fail(os.str());
        }
      }
    }
  }
  return r;
}

}  // namespace

RuleReport check_rule(const RuleInstance& inst, const RuleContext& ctx) {
  Checker c(inst, ctx);
  return c.run();
}

RankingReport check_ranking(const StmtPtr& rep, const RankingWitness& w, const CqAssertion& inv,
                            const RuleContext& ctx, const VarEnv& env) {
  if (rep->kind != StmtKind::Rep) {
    RankingReport r;
    r.ok = false;
    r.failures.push_back("not a repetitive command");
    return r;
  }
  std::vector<RankBranch> bs;
  for (std::size_t i = 0; i < rep->branches.size(); ++i) {
    bs.push_back({rep->branches[i].guard, rep->branches[i].body, "branch " + std::to_string(i + 1)});
  }
  VarEnv full = env;
  for (const auto& n : var_sets(*rep).cv) full.emplace(n, Type::Int);
  DistProgram scope;
  Process p;
  p.name = "S";
  for (const auto& [k, v] : full) p.vars.push_back({k, v});
  p.qvars = qvars_of(*rep);
  p.init = rep;
  scope.processes.push_back(p);
  return rank_check(bs, w, inv, ctx, full, var_sets(*rep).cv, scope);
}

RankingReport check_ranking(const DistProgram& p, const RankingWitness& w, const CqAssertion& inv,
                            const RuleContext& ctx) {
  std::vector<RankBranch> bs;
  for (const auto& g : gamma_of(p)) {
    bs.push_back({pair_guard(p, g), gamma_body(p, g),
                  "Γ tuple (" + std::to_string(g.i + 1) + "," + std::to_string(g.j + 1) + "," + std::to_string(g.k + 1) +
                      "," + std::to_string(g.l + 1) + ")"});
  }
  VarEnv env = p.env();
  for (const auto& c : inv.clauses) {
    for (const auto& n : free_vars(c.guard)) env.emplace(n, Type::Int);
  }
  return rank_check(bs, w, inv, ctx, env, var_sets(p).cv, p);
}

}  // namespace dqhl
