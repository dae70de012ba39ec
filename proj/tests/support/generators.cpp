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

#include "generators.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dqhl/gates.hpp"

namespace dqhl::testing {

namespace {

ExprPtr v(const std::string& n) { return var_ref(n); }
ExprPtr k(std::int64_t x) { return int_lit(x); }
ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(Op::Eq, std::move(a), std::move(b)); }

const char* kOneQubit[] = {"H", "X", "Z", "S", "T", "Y"};

StmtPtr random_unitary_stmt(Rng& rng, const QVarList& qs) {
  const auto pick = uniform_int(rng, 0, 3);
  if (qs.size() == 2 && pick == 0) {
    const bool swap = uniform_int(rng, 0, 1) == 1;
    QVarList on = swap ? QVarList{qs[1], qs[0]} : qs;
    if (uniform_int(rng, 0, 1) == 0) return mk_unitary("CNOT", *builtin_gate("CNOT"), on);
    return mk_unitary("", random_unitary(4, rng), on);
  }
  const QVar& q = qs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(qs.size()) - 1))];
  if (pick == 1) return mk_unitary("", random_unitary(2, rng), {q});
  const std::string g = kOneQubit[uniform_int(rng, 0, 5)];
  return mk_unitary(g, *builtin_gate(g), {q});
}

StmtPtr random_measure(Rng& rng, const QVarList& qs) {
  const QVar& q = qs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(qs.size()) - 1))];
  const std::string x = uniform_int(rng, 0, 1) ? "x" : "y";
  if (uniform_int(rng, 0, 2) == 0) {
    // a random two-outcome measurement: K_0 = U diag(c, s'), K_1 = U' diag(s, c')
    const double a = uniform01(rng), b = uniform01(rng);
    CMatrix d0 = CMatrix::Zero(2, 2), d1 = CMatrix::Zero(2, 2);
    d0(0, 0) = std::sqrt(a);
    d0(1, 1) = std::sqrt(b);
    d1(0, 0) = std::sqrt(1 - a);
    d1(1, 1) = std::sqrt(1 - b);
    const CMatrix u = random_unitary(2, rng);
    const CMatrix w = random_unitary(2, rng);
    return mk_measure(x, "", {u * d0 * w, d1 * w}, {q});
  }
  return mk_measure(x, "", computational_measurement(2), {q});
}

StmtPtr random_classical(Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return mk_assign("x", binary(Op::Mod, binary(Op::Add, v("x"), k(1)), k(3)));
    case 1:
      return mk_assign("y", v("x"));
    case 2: {
      const std::int64_t num = uniform_int(rng, 1, 3);
      return mk_rand_assign("x", {{0, Rational(num, 4)}, {1, Rational(4 - num, 4)}});
    }
    default:
      return mk_assign("x", binary(Op::Mod, binary(Op::Add, v("x"), v("y")), k(3)));
  }
}

}  // namespace

QVarList qubits(int nq) {
  QVarList out;
  for (int i = 0; i < nq; ++i) out.push_back({"q" + std::to_string(i), 2});
  return out;
}

DistProgram wrap(StmtPtr body, const QVarList& qs) {
  Process p;
  p.name = "S";
  p.vars = {{"x", Type::Int}, {"y", Type::Int}, {"n", Type::Int}};
  p.qvars = qs;
  p.init = std::move(body);
  DistProgram out;
  out.processes.push_back(std::move(p));
  return out;
}

StmtPtr random_stmt(Rng& rng, const QVarList& qs, const GenOptions& o, int depth) {
  const std::int64_t len = uniform_int(rng, 1, o.max_len);
  std::vector<StmtPtr> parts;
  for (std::int64_t i = 0; i < len; ++i) {
    const std::int64_t r = uniform_int(rng, 0, 9);
    if (r <= 2) {
      parts.push_back(random_unitary_stmt(rng, qs));
    } else if (r <= 4) {
      parts.push_back(random_measure(rng, qs));
    } else if (r == 5) {
      parts.push_back(random_classical(rng));
    } else if (r == 6) {
      parts.push_back(uniform_int(rng, 0, 1) ? mk_init(qs.back()) : mk_skip());
    } else if (r == 7 && o.allow_abort && uniform_int(rng, 0, 3) == 0) {
      parts.push_back(mk_abort());
    } else if (depth > 0) {
      // if x = 0 -> S1 [] not x = 0 -> S2 fi, or a partial variant
      const std::int64_t c = uniform_int(rng, 0, 1);
      GenOptions inner = o;
      inner.max_len = 2;
      std::vector<GuardedCmd> br;
      br.push_back({eq(v("x"), k(c)), random_stmt(rng, qs, inner, depth - 1)});
      if (!(o.allow_fail && uniform_int(rng, 0, 2) == 0)) {
        br.push_back({mk_not(eq(v("x"), k(c))), random_stmt(rng, qs, inner, depth - 1)});
      }
      parts.push_back(mk_alt(std::move(br)));
    } else {
      parts.push_back(random_unitary_stmt(rng, qs));
    }
  }
  return mk_seq(parts);
}

DistProgram random_loop_free(Rng& rng, int nq, bool allow_fail) {
  GenOptions o;
  o.nq = nq;
  o.allow_fail = allow_fail;
  o.allow_abort = allow_fail;
  const QVarList qs = qubits(nq);
  return wrap(random_stmt(rng, qs, o, o.depth), qs);
}

DistProgram random_bounded_loop(Rng& rng, int nq) {
  const QVarList qs = qubits(nq);
  GenOptions o;
  o.nq = nq;
  o.depth = 1;
  o.max_len = 3;
  const std::int64_t bound = uniform_int(rng, 1, 4);
  const ExprPtr live = binary(Op::Gt, v("n"), k(0));
  const StmtPtr dec = mk_assign("n", binary(Op::Sub, v("n"), k(1)));
  std::vector<GuardedCmd> br;
  if (uniform_int(rng, 0, 1) == 0) {
    br.push_back({live, mk_seq({random_stmt(rng, qs, o, 1), dec})});
  } else {
    // the loop may also stop early once x leaves 0
    br.push_back({mk_and(live, eq(v("x"), k(0))), mk_seq({random_stmt(rng, qs, o, 1), random_measure(rng, qs), dec})});
  }
  std::vector<StmtPtr> parts = {random_stmt(rng, qs, o, 0), mk_assign("n", k(bound)), mk_rep(std::move(br))};
  if (uniform_int(rng, 0, 1)) parts.push_back(random_unitary_stmt(rng, qs));
  return wrap(mk_seq(parts), qs);
}

DistProgram random_two_process(Rng& rng) {
  const std::int64_t nch = uniform_int(rng, 1, 3);
  const std::int64_t msgs = uniform_int(rng, 1, 4);
  DistProgram p;
  for (std::int64_t c = 0; c < nch; ++c) p.channels.push_back("c" + std::to_string(c));
  for (int who = 1; who <= 2; ++who) {
    Process pr;
    const std::string id = std::to_string(who);
    pr.name = who == 1 ? "P" : "Q";
    pr.vars = {{"s" + id, Type::Int}, {"u" + id, Type::Int}, {"v" + id, Type::Int}};
    pr.qvars = {{who == 1 ? "a" : "b", 2}};
    p.processes.push_back(std::move(pr));
  }
  // local code on the process's own qubit
  auto local = [&](int who) {
    const QVarList qs = p.processes[static_cast<std::size_t>(who - 1)].qvars;
    const std::string id = std::to_string(who);
    std::vector<StmtPtr> parts;
    const std::int64_t n = uniform_int(rng, 0, 2);
    for (std::int64_t i = 0; i < n; ++i) {
      switch (uniform_int(rng, 0, 2)) {
        case 0:
          parts.push_back(mk_unitary("", random_unitary(2, rng), qs));
          break;
        case 1:
          parts.push_back(mk_measure("u" + id, "", computational_measurement(2), qs));
          break;
        default:
          parts.push_back(mk_alt({{eq(v("v" + id), k(1)), mk_unitary("X", *builtin_gate("X"), qs)},
                                  {mk_not(eq(v("v" + id), k(1))), mk_skip()}}));
      }
    }
    return parts;
  };
  for (int who = 1; who <= 2; ++who) {
    auto parts = local(who);
    parts.push_back(mk_assign("s" + std::to_string(who), k(0)));
    p.processes[static_cast<std::size_t>(who - 1)].init = mk_seq(parts);
  }
  // each channel carries messages in one direction only
  std::vector<int> sender_of;
  for (std::int64_t c = 0; c < nch; ++c) sender_of.push_back(static_cast<int>(uniform_int(rng, 1, 2)));
  const bool drop_last = msgs > 1 && uniform_int(rng, 0, 4) == 0;
  for (std::int64_t t = 0; t < msgs; ++t) {
    const auto ci = static_cast<std::size_t>(uniform_int(rng, 0, nch - 1));
    const std::string ch = p.channels[ci];
    const int sender = sender_of[ci];
    for (int who = 1; who <= 2; ++who) {
      if (who == 2 && drop_last && t == msgs - 1) continue;
      const std::string id = std::to_string(who);
      LoopBranch b;
      b.guard = eq(v("s" + id), k(t));
      b.io.channel = ch;
      b.io.is_input = who != sender;
      if (b.io.is_input) {
        b.io.var = "v" + id;
      } else {
        b.io.expr = uniform_int(rng, 0, 1) ? v("u" + id) : binary(Op::Mod, binary(Op::Add, v("u" + id), k(1)), k(2));
      }
      auto parts = local(who);
      parts.push_back(mk_assign("s" + id, k(t + 1)));
      b.body = mk_seq(parts);
      p.processes[static_cast<std::size_t>(who - 1)].loop.push_back(std::move(b));
    }
  }
  return p;
}

CqAssertion random_assertion(Rng& rng, const QVarList& qs) {
  CqAssertion t;
  t.qvars = qs;
  const auto d = static_cast<std::size_t>(total_dim(qs));
  for (std::int64_t c = 0; c < 3; ++c) t.clauses.push_back({eq(v("x"), k(c)), random_observable(d, rng)});
  return t;
}

std::pair<CqAssertion, CqAssertion> random_ordered_pair(Rng& rng, const QVarList& qs) {
  CqAssertion hi = random_assertion(rng, qs);
  CqAssertion lo = hi;
  const auto d = static_cast<std::size_t>(total_dim(qs));
  for (auto& c : lo.clauses) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c.obs);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const CMatrix root = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    c.obs = root * random_observable(d, rng) * root;
  }
  return {lo, hi};
}

std::vector<ClassicalState> small_states() {
  std::vector<ClassicalState> out;
  for (std::int64_t x = 0; x < 3; ++x) {
    for (std::int64_t y = 0; y < 3; ++y) {
      for (std::int64_t n = 0; n < 2; ++n) out.push_back({{"n", n}, {"x", x}, {"y", y}});
    }
  }
  return out;
}

CqState random_input(Rng& rng, const QVarList& qs, std::size_t support, double mass) {
  auto all = small_states();
  std::vector<ClassicalState> pick;
  for (std::size_t i = 0; i < support; ++i) {
    pick.push_back(all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(all.size()) - 1))]);
  }
  std::sort(pick.begin(), pick.end());
  pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
  return random_cq_state(qs, pick, rng, mass, false);
}

SuperOp random_mixed_unitary(Rng& rng, const QVarList& qs, std::size_t n) {
  const auto d = static_cast<std::size_t>(total_dim(qs));
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) s += (x = 0.1 + uniform01(rng));
  SuperOp e;
  e.qvars_in = qs;
  e.qvars_out = qs;
  for (std::size_t i = 0; i < n; ++i) e.kraus.push_back(std::sqrt(w[i] / s) * random_unitary(d, rng));
  return e;
}

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dqhl::testing
