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

#include "dqhl/assertion.hpp"

#include <unordered_map>

#include "dqhl/printer.hpp"

namespace dqhl {

namespace {

constexpr double kZeroObs = 1e-14;

QVarList union_reg(const CqAssertion& a, const CqAssertion& b) { return union_of(a.qvars, b.qvars); }

}  // namespace

CqAssertion top(const QVarList& qvars) { return atom(bool_lit(true), identity(total_dim(qvars)), qvars); }

CqAssertion bot(const QVarList& qvars) { return CqAssertion{qvars, {}}; }

CqAssertion atom(const ExprPtr& guard, const CMatrix& obs, const QVarList& qvars) {
  if (static_cast<std::size_t>(obs.rows()) != total_dim(qvars)) {
    throw AssertionError("observable of dimension " + std::to_string(obs.rows()) + " on register " + to_string(qvars));
  }
  return CqAssertion{qvars, {{guard, obs}}};
}

CqAssertion atom_ket(const ExprPtr& guard, const CVector& ket, const QVarList& qvars) {
  return atom(guard, projector(ket), qvars);
}

CMatrix eval_at(const CqAssertion& t, const ClassicalState& sigma) {
  CMatrix m = zeros(total_dim(t.qvars));
  for (const auto& c : t.clauses) {
    if (holds(c.guard, sigma)) m += c.obs;
  }
  return m;
}

double exp_satisfy(const CqState& d, const CqAssertion& t) {
  if (!is_subset(t.qvars, d.qvars)) {
    throw AssertionError("assertion register " + to_string(t.qvars) + " is not inside state register " + to_string(d.qvars));
  }
  double e = 0.0;
  for (const auto& [sg, m] : d.entries) {
    const CMatrix o = eval_at(t, sg);
    e += (embed(o, t.qvars, d.qvars) * m).trace().real();
  }
  return e;
}

CqAssertion pad(const CqAssertion& t, const QVarList& full) {
  if (t.qvars == full) return t;
  CqAssertion out{full, {}};
  for (const auto& c : t.clauses) out.clauses.push_back({c.guard, embed(c.obs, t.qvars, full)});
  return out;
}

CqAssertion subst(const CqAssertion& t, const std::string& x, const ExprPtr& e) {
  CqAssertion out{t.qvars, {}};
  for (const auto& c : t.clauses) out.clauses.push_back({dqhl::simplify(substitute(c.guard, x, e)), c.obs});
  return out;
}

CqAssertion subst(const CqAssertion& t, const std::map<std::string, ExprPtr>& s) {
  CqAssertion out{t.qvars, {}};
  for (const auto& c : t.clauses) out.clauses.push_back({dqhl::simplify(substitute(c.guard, s)), c.obs});
  return out;
}

CqAssertion conj(const ExprPtr& p, const CqAssertion& t) {
  CqAssertion out{t.qvars, {}};
  for (const auto& c : t.clauses) out.clauses.push_back({mk_and(p, c.guard), c.obs});
  return out;
}

CqAssertion disj(const ExprPtr& p, const CqAssertion& t) {
  CqAssertion out{t.qvars, {}};
  for (const auto& c : t.clauses) out.clauses.push_back({mk_or(p, c.guard), c.obs});
  return out;
}

CqAssertion lincomb(const std::vector<std::pair<double, CqAssertion>>& terms) {
  QVarList reg;
  for (const auto& [l, t] : terms) reg = union_of(reg, t.qvars);
  CqAssertion out{reg, {}};
  for (const auto& [l, t] : terms) {
    if (l == 0.0) continue;
    for (const auto& c : pad(t, reg).clauses) out.clauses.push_back({c.guard, l * c.obs});
  }
  return out;
}

CqAssertion lin(const CqAssertion& a, const CqAssertion& b, double la, double lb) {
  return lincomb({{la, a}, {lb, b}});
}

CqAssertion complement(const CqAssertion& t) { return lincomb({{1.0, top(t.qvars)}, {-1.0, t}}); }

CqAssertion apply_superop_assert(const SuperOp& f, const CqAssertion& t, double tol) {
  CMatrix unit = CMatrix::Zero(f.kraus.front().rows(), f.kraus.front().rows());
  for (const auto& k : f.kraus) unit += k * k.adjoint();
  if (!loewner_leq(unit, identity(unit.rows()), tol)) throw AssertionError("super-operator is not sub-unital");
  if (!is_subset(f.qvars_in, t.qvars)) {
    throw AssertionError("super-operator acts on " + to_string(f.qvars_in) + " outside " + to_string(t.qvars));
  }
  std::vector<CMatrix> ks;
  for (const auto& k : f.kraus) ks.push_back(embed(k, f.qvars_in, t.qvars));
  CqAssertion out{t.qvars, {}};
  for (const auto& c : t.clauses) {
    CMatrix m = CMatrix::Zero(c.obs.rows(), c.obs.cols());
    for (const auto& k : ks) m += k * c.obs * k.adjoint();
    out.clauses.push_back({c.guard, m});
  }
  return out;
}

CqAssertion pullback(const CqAssertion& t, const std::vector<CMatrix>& kraus, const QVarList& qvars) {
  const CqAssertion base = pad(t, union_of(t.qvars, qvars));
  std::vector<CMatrix> ks;
  for (const auto& k : kraus) ks.push_back(embed(k, qvars, base.qvars));
  CqAssertion out{base.qvars, {}};
  for (const auto& c : base.clauses) {
    CMatrix m = CMatrix::Zero(c.obs.rows(), c.obs.cols());
    for (const auto& k : ks) m += k.adjoint() * c.obs * k;
    out.clauses.push_back({c.guard, m});
  }
  return out;
}

CqAssertion simplify(const CqAssertion& t, std::size_t cap) {
  CqAssertion out{t.qvars, {}};
  std::unordered_map<std::string, std::size_t> by_guard;
  for (const auto& c : t.clauses) {
    ExprPtr g = dqhl::simplify(c.guard);
    if (is_false_lit(g) || c.obs.norm() <= kZeroObs) continue;
    const std::string key = to_string(g);
    auto it = by_guard.find(key);
    if (it != by_guard.end() && structurally_equal(out.clauses[it->second].guard, g)) {
      out.clauses[it->second].obs += c.obs;
      continue;
    }
    by_guard.emplace(key, out.clauses.size());
    out.clauses.push_back({g, c.obs});
    if (out.clauses.size() > cap) {
      throw AssertionError("assertion exceeds " + std::to_string(cap) + " clauses");
    }
  }
  std::vector<Clause> kept;
  for (auto& c : out.clauses) {
    if (c.obs.norm() > kZeroObs) kept.push_back(std::move(c));
  }
  out.clauses = std::move(kept);
  return out;
}

ExprPtr support_guard(const CqAssertion& t) {
  std::vector<ExprPtr> gs;
  for (const auto& c : t.clauses) gs.push_back(c.guard);
  return disjunction(gs);
}

LessReport lesssim(const CqAssertion& a, const CqAssertion& b, const std::vector<ClassicalState>& samples, double tol) {
  const QVarList reg = union_reg(a, b);
  const CqAssertion pa = pad(a, reg), pb = pad(b, reg);
  LessReport r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const CMatrix diff = eval_at(pb, s) - eval_at(pa, s);
    const double m = min_eigenvalue(diff);
    if (m < r.min_eigenvalue) {
      r.min_eigenvalue = m;
      if (m < -tol) {
        r.ok = false;
        r.witness = s;
        r.eigenvector = min_eigenvector(diff);
      }
    }
  }
  if (samples.empty()) r.min_eigenvalue = 0.0;
  return r;
}

double max_distance(const CqAssertion& a, const CqAssertion& b, const std::vector<ClassicalState>& samples) {
  const QVarList reg = union_reg(a, b);
  const CqAssertion pa = pad(a, reg), pb = pad(b, reg);
  double d = 0.0;
  for (const auto& s : samples) d = std::max(d, operator_norm(eval_at(pa, s) - eval_at(pb, s)));
  return d;
}

SpectrumReport check_spectrum(const CqAssertion& t, const std::vector<ClassicalState>& samples, double tol) {
  SpectrumReport r;
  r.min_eigenvalue = 0.0;
  r.max_eigenvalue = 0.0;
  bool first = true;
  for (const auto& s : samples) {
    const CMatrix m = eval_at(t, s);
    const double lo = min_eigenvalue(m), hi = max_eigenvalue(m);
    if (first || lo < r.min_eigenvalue) r.min_eigenvalue = lo;
    if (first || hi > r.max_eigenvalue) r.max_eigenvalue = hi;
    first = false;
    if ((lo < -tol || hi > 1.0 + tol || !is_hermitian(m, tol)) && r.ok) {
      r.ok = false;
      r.witness = s;
    }
  }
  return r;
}

std::vector<ClassicalState> overlap_lint(const CqAssertion& t, const std::vector<ClassicalState>& samples) {
  std::vector<ClassicalState> out;
  for (const auto& s : samples) {
    const CMatrix* seen = nullptr;
    for (const auto& c : t.clauses) {
      if (!holds(c.guard, s)) continue;
      if (seen && (seen->rows() != c.obs.rows() || max_abs_diff(*seen, c.obs) > kTol)) {
        out.push_back(s);
        break;
      }
      seen = &c.obs;
    }
  }
  return out;
}

std::string to_string(const CqAssertion& t) {
  if (t.clauses.empty()) return "bot on " + to_string(t.qvars);
  std::string out;
  for (std::size_t i = 0; i < t.clauses.size(); ++i) {
    if (i) out += "\n+ ";
    out += "<" + to_string(t.clauses[i].guard) + " | " + format_matrix(t.clauses[i].obs) + ">";
  }
  return out + "\non " + to_string(t.qvars);
}

}  // namespace dqhl
