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

#include "dqhl/opsem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

#include "dqhl/classical_state.hpp"

namespace dqhl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void atomic_max(std::atomic<double>& a, double v) {
  double cur = a.load();
  while (v > cur && !a.compare_exchange_weak(cur, v)) {
  }
}

void normalize(ProcState& ps) {
  while (!ps.stack.empty() && ps.stack.back()->kind == StmtKind::Seq) {
    const Stmt* s = ps.stack.back();
    ps.stack.pop_back();
    for (auto it = s->children.rbegin(); it != s->children.rend(); ++it) ps.stack.push_back(it->get());
  }
}

bool running(const ProcState& ps) { return !ps.stack.empty(); }

bool at_loop(const Process& proc, const ProcState& ps) {
  return ps.stack.empty() && !ps.loop_exited && !proc.loop.empty();
}

bool guard_holds(const ExprPtr& g, const ClassicalState& sigma) {
  try {
    return holds(g, sigma);
  } catch (const EvalError& e) {
    throw SemanticsError(std::string("guard evaluation failed: ") + e.what());
  }
}

std::int64_t value_of(const ExprPtr& e, const ClassicalState& sigma) {
  try {
    return eval(e, sigma);
  } catch (const EvalError& err) {
    throw SemanticsError(std::string("expression evaluation failed: ") + err.what());
  }
}

bool all_loop_guards_false(const Process& proc, const ClassicalState& sigma) {
  for (const auto& b : proc.loop) {
    if (guard_holds(b.guard, sigma)) return false;
  }
  return true;
}

// Index of the single true guard, -1 if none; throws on overlap.
int chosen_branch(const std::vector<GuardedCmd>& bs, const ClassicalState& sigma, const char* what) {
  int found = -1;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!guard_holds(bs[i].guard, sigma)) continue;
    if (found >= 0) {
      throw SemanticsError(std::string("guards of ") + what + " are not mutually exclusive at " + to_string(sigma) +
                           ": '" + to_string(bs[found].guard) + "' and '" + to_string(bs[i].guard) + "'");
    }
    found = static_cast<int>(i);
  }
  return found;
}

std::optional<std::pair<std::size_t, std::size_t>> find_comm(const Process& a, const Process& b,
                                                             const ClassicalState& sigma) {
  for (std::size_t j1 = 0; j1 < a.loop.size(); ++j1) {
    if (!guard_holds(a.loop[j1].guard, sigma)) continue;
    for (std::size_t j2 = 0; j2 < b.loop.size(); ++j2) {
      const IoCommand& x = a.loop[j1].io;
      const IoCommand& y = b.loop[j2].io;
      if (x.channel != y.channel || x.is_input == y.is_input) continue;
      if (guard_holds(b.loop[j2].guard, sigma)) return std::make_pair(j1, j2);
    }
  }
  return std::nullopt;
}

using Key = std::tuple<std::vector<std::vector<const Stmt*>>, std::vector<bool>, ClassicalState, bool>;

Key key_of(const Configuration& c) {
  Key k;
  for (const auto& ps : c.procs) {
    std::get<0>(k).push_back(ps.stack);
    std::get<1>(k).push_back(ps.loop_exited);
  }
  std::get<2>(k) = c.sigma;
  std::get<3>(k) = c.failed;
  return k;
}

bool sits_on_abort(const Configuration& c) {
  for (const auto& ps : c.procs) {
    if (!ps.stack.empty() && ps.stack.back()->kind == StmtKind::Abort) return true;
  }
  return false;
}

}  // namespace

bool operator<(const ActionLabel& a, const ActionLabel& b) {
  const bool la = a.is_local(), lb = b.is_local();
  if (la != lb) return la;
  return std::tie(a.k, a.l) < std::tie(b.k, b.l);
}

std::string to_string(const ActionLabel& a) {
  if (a.is_local()) return "local(" + std::to_string(a.k + 1) + ")";
  return "comm(" + std::to_string(a.k + 1) + "," + std::to_string(a.l + 1) + ")";
}

std::optional<ActionLabel> parse_label(const std::string& text) {
  int k = 0, l = 0;
  if (std::sscanf(text.c_str(), "local(%d)", &k) == 1 && k >= 1) return ActionLabel{k - 1, -1};
  if (std::sscanf(text.c_str(), "comm(%d,%d)", &k, &l) == 2 && k >= 1 && l > k) return ActionLabel{k - 1, l - 1};
  return std::nullopt;
}

ActionLabel RandomScheduler::choose(std::size_t step, std::size_t branch, const std::vector<ActionLabel>& enabled) {
  const std::uint64_t h = splitmix64(seed_ ^ splitmix64(step * 0x100000001B3ULL + branch));
  return enabled[h % enabled.size()];
}

ActionLabel ExplicitScheduler::choose(std::size_t step, std::size_t branch, const std::vector<ActionLabel>& enabled) {
  if (step < trace_.size() && branch < trace_[step].size() && trace_[step][branch]) {
    const ActionLabel want = *trace_[step][branch];
    if (std::find(enabled.begin(), enabled.end(), want) == enabled.end()) {
      throw SemanticsError("scheduled label " + to_string(want) + " is not enabled at step " + std::to_string(step) +
                           ", branch " + std::to_string(branch));
    }
    return want;
  }
  return enabled.front();
}

void Bookkeeping::reset() {
  distributions = 0;
  bad_sums = 0;
  chains_checked = 0;
  chain_violations = 0;
  max_sum_error = 0.0;
}

Bookkeeping& bookkeeping() {
  static Bookkeeping b;
  return b;
}

bool is_terminal(const DistProgram& p, const Configuration& c) {
  if (c.failed) return true;
  for (std::size_t k = 0; k < c.procs.size(); ++k) {
    if (running(c.procs[k]) || at_loop(p.processes[k], c.procs[k])) return false;
  }
  return true;
}

bool is_deadlocked(const DistProgram& p, const Configuration& c) {
  return !is_terminal(p, c) && enabled(p, c).empty();
}

Configuration initial_config(const DistProgram& p, const ClassicalState& sigma, const CMatrix& rho) {
  Configuration c;
  c.sigma = complete_state(sigma, p.env());
  c.rho = rho;
  for (const auto& proc : p.processes) {
    ProcState ps;
    ps.stack.push_back(proc.init.get());
    normalize(ps);
    c.procs.push_back(std::move(ps));
  }
  return c;
}

std::vector<ActionLabel> enabled(const DistProgram& p, const Configuration& c) {
  std::vector<ActionLabel> out;
  if (c.failed) return out;
  const int n = static_cast<int>(p.processes.size());
  for (int k = 0; k < n; ++k) {
    const ProcState& ps = c.procs[k];
    if (running(ps) || (at_loop(p.processes[k], ps) && all_loop_guards_false(p.processes[k], c.sigma))) {
      out.push_back({k, -1});
    }
  }
  for (int k = 0; k < n; ++k) {
    if (!at_loop(p.processes[k], c.procs[k])) continue;
    for (int l = k + 1; l < n; ++l) {
      if (!at_loop(p.processes[l], c.procs[l])) continue;
      if (find_comm(p.processes[k], p.processes[l], c.sigma)) out.push_back({k, l});
    }
  }
  return out;
}

ConfigDistribution step(const DistProgram& p, const Configuration& c, const ActionLabel& a, const QVarList& reg) {
  const auto en = enabled(p, c);
  if (std::find(en.begin(), en.end(), a) == en.end()) throw SemanticsError("label " + to_string(a) + " is not enabled");
  ConfigDistribution out;

  if (!a.is_local()) {
    const Process& pk = p.processes[a.k];
    const Process& pl = p.processes[a.l];
    const auto jj = *find_comm(pk, pl, c.sigma);
    const LoopBranch& bk = pk.loop[jj.first];
    const LoopBranch& bl = pl.loop[jj.second];
    Configuration n = c;
    const IoCommand& in = bk.io.is_input ? bk.io : bl.io;
    const IoCommand& outc = bk.io.is_input ? bl.io : bk.io;
    n.sigma[in.var] = value_of(outc.expr, c.sigma);
    n.procs[a.k].stack.push_back(bk.body.get());
    n.procs[a.l].stack.push_back(bl.body.get());
    normalize(n.procs[a.k]);
    normalize(n.procs[a.l]);
    out.push_back({1.0, std::move(n)});
    return out;
  }

  const int k = a.k;
  const ProcState& ps = c.procs[k];
  if (!running(ps)) {
    Configuration n = c;
    n.procs[k].loop_exited = true;
    out.push_back({1.0, std::move(n)});
    return out;
  }

  const Stmt* s = ps.stack.back();
  Configuration base = c;
  base.procs[k].stack.pop_back();
  auto finish = [&](Configuration&& n, double prob) {
    normalize(n.procs[k]);
    out.push_back({prob, std::move(n)});
  };

  switch (s->kind) {
    case StmtKind::Skip:
      finish(std::move(base), 1.0);
      break;
    case StmtKind::Abort:
      // divergent self-loop
      out.push_back({1.0, c});
      break;
    case StmtKind::Assign:
      base.sigma[s->var] = value_of(s->expr, c.sigma);
      finish(std::move(base), 1.0);
      break;
    case StmtKind::RandAssign:
      for (const auto& [v, g] : s->dist) {
        Configuration n = base;
        n.sigma[s->var] = v;
        finish(std::move(n), boost::rational_cast<double>(g));
      }
      break;
    case StmtKind::Measure:
      for (std::size_t i = 0; i < s->ops.size(); ++i) {
        const CMatrix m = embed(s->ops[i], s->qvars, reg);
        CMatrix r = m * c.rho * m.adjoint();
        const double pi = real_trace(r);
        if (pi <= 0.0) continue;
        Configuration n = base;
        n.sigma[s->var] = static_cast<std::int64_t>(i);
        n.rho = r / pi;
        finish(std::move(n), pi);
      }
      break;
    case StmtKind::InitQ: {
      const QVar& q = s->qvars.front();
      CMatrix r = CMatrix::Zero(c.rho.rows(), c.rho.cols());
      for (int i = 0; i < q.dim; ++i) {
        CMatrix ki = CMatrix::Zero(q.dim, q.dim);
        ki(0, i) = 1.0;
        const CMatrix m = embed(ki, s->qvars, reg);
        r += m * c.rho * m.adjoint();
      }
      base.rho = r;
      finish(std::move(base), 1.0);
      break;
    }
    case StmtKind::ApplyU: {
      const CMatrix u = embed(s->ops.front(), s->qvars, reg);
      base.rho = u * c.rho * u.adjoint();
      finish(std::move(base), 1.0);
      break;
    }
    case StmtKind::Alt: {
      const int j = chosen_branch(s->branches, c.sigma, "an alternative command");
      if (j < 0) {
        base.failed = true;
        base.procs[k].stack.clear();
        out.push_back({1.0, std::move(base)});
      } else {
        base.procs[k].stack.push_back(s->branches[j].body.get());
        finish(std::move(base), 1.0);
      }
      break;
    }
    case StmtKind::Rep: {
      const int j = chosen_branch(s->branches, c.sigma, "a repetitive command");
      if (j >= 0) {
        base.procs[k].stack.push_back(s);
        base.procs[k].stack.push_back(s->branches[j].body.get());
      }
      finish(std::move(base), 1.0);
      break;
    }
    case StmtKind::Seq:
      throw SemanticsError("internal: unexpanded sequence on the continuation stack");
  }
  return out;
}

ConfigDistribution step_dist(const DistProgram& p, const ConfigDistribution& mu, Scheduler& sched, std::size_t step_no,
                             const QVarList& reg, const StepOptions& opts, StepInfo* info) {
  ConfigDistribution raw;
  std::vector<std::size_t> raw_parent;
  std::vector<std::optional<ActionLabel>> chosen(mu.size());
  double in_sum = 0.0;
  for (std::size_t b = 0; b < mu.size(); ++b) {
    in_sum += mu[b].p;
    const Configuration& c = mu[b].config;
    std::vector<ActionLabel> en = is_terminal(p, c) ? std::vector<ActionLabel>{} : enabled(p, c);
    if (en.empty()) {
      raw.push_back(mu[b]);
      raw_parent.push_back(b);
      continue;
    }
    const ActionLabel a = sched.choose(step_no, b, en);
    chosen[b] = a;
    for (auto& nb : step(p, c, a, reg)) {
      raw.push_back({mu[b].p * nb.p, std::move(nb.config)});
      raw_parent.push_back(b);
    }
  }

  ConfigDistribution out;
  std::vector<std::size_t> parent;
  std::map<Key, std::vector<std::size_t>> index;
  double pruned = 0.0;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (raw[r].p < opts.prune) {
      pruned += raw[r].p;
      continue;
    }
    Key key = key_of(raw[r].config);
    auto& slots = index[key];
    bool merged = false;
    for (std::size_t slot : slots) {
      if ((out[slot].config.rho - raw[r].config.rho).norm() <= opts.merge_tol) {
        out[slot].p += raw[r].p;
        merged = true;
        break;
      }
    }
    if (!merged) {
      slots.push_back(out.size());
      out.push_back(std::move(raw[r]));
      parent.push_back(raw_parent[r]);
    }
  }

  double out_sum = 0.0;
  for (const auto& b : out) out_sum += b.p;
  const double err = std::abs(out_sum + pruned - in_sum);
  Bookkeeping& bk = bookkeeping();
  ++bk.distributions;
  atomic_max(bk.max_sum_error, err);
  if (err > 1e-9) ++bk.bad_sums;

  if (info) {
    info->pruned = pruned;
    info->labels = std::move(chosen);
    info->parent = std::move(parent);
  }
  return out;
}

CqState extract_delta(const DistProgram& p, const ConfigDistribution& mu, const QVarList& reg) {
  CqState d(reg);
  for (const auto& b : mu) {
    if (!b.config.failed && is_terminal(p, b.config)) d.add(b.config.sigma, b.config.rho, b.p);
  }
  return d;
}

RunReport run(const DistProgram& p, const ClassicalState& sigma, const DensityOp& rho, Scheduler& sched,
              const RunOptions& opts) {
  const QVarList& reg = rho.qvars;
  for (const auto& q : p.qvars()) {
    const int i = index_of(reg, q.name);
    if (i < 0) throw SemanticsError("input state does not cover quantum variable '" + q.name + "'");
    if (reg[i].dim != q.dim) throw SemanticsError("dimension mismatch for quantum variable '" + q.name + "'");
  }
  if (static_cast<std::size_t>(rho.matrix.rows()) != total_dim(reg)) {
    throw SemanticsError("input density operator does not match its register");
  }
  if (std::abs(real_trace(rho.matrix) - 1.0) > 1e-9) throw SemanticsError("input density operator must have trace 1");

  RunReport rep;
  ConfigDistribution mu{{1.0, initial_config(p, sigma, rho.matrix)}};
  CqState prev = extract_delta(p, mu, reg);
  Bookkeeping& bk = bookkeeping();

  auto quiet = [&](bool& diverged) {
    bool all_stuck = true, any_abort_only = true;
    for (const auto& b : mu) {
      if (is_terminal(p, b.config) || enabled(p, b.config).empty()) continue;
      all_stuck = false;
      if (!sits_on_abort(b.config)) any_abort_only = false;
    }
    diverged = !all_stuck && any_abort_only;
    return all_stuck;
  };

  bool diverged = false;
  while (rep.steps < opts.max_steps) {
    if (quiet(diverged) || diverged) break;
    StepInfo info;
    mu = step_dist(p, mu, sched, rep.steps, reg, opts.step, &info);
    ++rep.steps;
    rep.pruned += info.pruned;
    rep.max_branches = std::max(rep.max_branches, mu.size());
    if (opts.record_trace) rep.trace.push_back({std::move(info.labels), std::move(info.parent)});
    double sum = 0.0;
    for (const auto& b : mu) sum += b.p;
    const double err = std::abs(sum + rep.pruned - 1.0);
    rep.max_sum_error = std::max(rep.max_sum_error, err);
    atomic_max(bk.max_sum_error, err);
    if (err > 1e-9) ++bk.bad_sums;
    if (opts.check_monotone) {
      CqState cur = extract_delta(p, mu, reg);
      ++bk.chains_checked;
      if (!cq_leq(prev, cur, 1e-9)) {
        rep.monotone = false;
        ++bk.chain_violations;
      }
      prev = std::move(cur);
    }
  }
  rep.quiescent = quiet(diverged);
  rep.diverged = diverged;

  rep.delta = extract_delta(p, mu, reg);
  for (const auto& b : mu) {
    if (b.config.failed) {
      rep.failed += b.p;
    } else if (is_terminal(p, b.config)) {
      rep.terminated += b.p;
    } else if (enabled(p, b.config).empty()) {
      rep.deadlocked += b.p;
    } else {
      rep.residual += b.p;
    }
  }
  rep.final_dist = std::move(mu);
  return rep;
}

DeterminismReport check_determinism(const DistProgram& p, const std::vector<std::pair<ClassicalState, DensityOp>>& inputs,
                                    int n_schedulers, std::uint64_t seed, const RunOptions& opts, int jobs) {
  DeterminismReport rep;
  struct Task {
    std::size_t input;
    int sched;  // -1 is the good scheduler
  };
  std::vector<CqState> reference(inputs.size());
  std::vector<char> ref_ok(inputs.size(), 1);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    GoodScheduler g;
    RunReport r = run(p, inputs[i].first, inputs[i].second, g, opts);
    reference[i] = std::move(r.delta);
    if (!r.quiescent) ref_ok[i] = 0;
  }
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (int s = 0; s < n_schedulers; ++s) tasks.push_back({i, s});
  }
  std::vector<double> dev(tasks.size(), 0.0);
  std::vector<char> done(tasks.size(), 1);
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t t = from; t < tasks.size(); t += step) {
      RandomScheduler rs(splitmix64(seed + 0x632BE59BD9B4E019ULL * (tasks[t].sched + 1)));
      RunReport r = run(p, inputs[tasks[t].input].first, inputs[tasks[t].input].second, rs, opts);
      done[t] = r.quiescent ? 1 : 0;
      dev[t] = max_deviation(r.delta, reference[tasks[t].input]);
    }
  };
  const std::size_t nj = static_cast<std::size_t>(std::max(1, jobs));
  if (nj == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < nj; ++j) pool.emplace_back(work, j, nj);
    for (auto& th : pool) th.join();
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    rep.max_deviation = std::max(rep.max_deviation, dev[t]);
    if (!done[t]) rep.budget_exhausted = true;
  }
  for (char ok : ref_ok) {
    if (!ok) rep.budget_exhausted = true;
  }
  rep.runs = tasks.size() + inputs.size();
  rep.ok = !rep.budget_exhausted && rep.max_deviation <= 1e-8;
  return rep;
}

}  // namespace dqhl
