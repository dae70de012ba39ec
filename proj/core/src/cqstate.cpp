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

#include "dqhl/cqstate.hpp"

namespace dqhl {

namespace {

constexpr double kDropNorm = 1e-14;

void check_same_qvars(const QVarList& a, const QVarList& b, const char* op) {
  if (a != b) throw CqStateError(std::string(op) + ": register mismatch " + to_string(a) + " vs " + to_string(b));
}

}  // namespace

void CqState::add(const ClassicalState& sigma, const CMatrix& m, double s) {
  auto it = entries.find(sigma);
  if (it == entries.end()) {
    CMatrix v = s * m;
    if (v.norm() > kDropNorm) entries.emplace(sigma, std::move(v));
    return;
  }
  it->second += s * m;
  if (it->second.norm() <= kDropNorm) entries.erase(it);
}

CqState single(const ClassicalState& sigma, const DensityOp& rho) { return single(sigma, rho.matrix, rho.qvars); }

CqState single(const ClassicalState& sigma, const CMatrix& rho, const QVarList& qvars) {
  if (static_cast<std::size_t>(rho.rows()) != total_dim(qvars)) {
    throw CqStateError("density operator of dimension " + std::to_string(rho.rows()) + " on register " +
                       to_string(qvars));
  }
  CqState d(qvars);
  d.add(sigma, rho);
  return d;
}

double trace(const CqState& d) {
  double t = 0.0;
  for (const auto& [s, m] : d.entries) t += real_trace(m);
  return t;
}

CqState restrict(const CqState& d, const ExprPtr& b) {
  CqState out(d.qvars);
  for (const auto& [s, m] : d.entries) {
    if (holds(b, s)) out.entries.emplace(s, m);
  }
  return out;
}

CqState lincomb(const std::vector<std::pair<double, CqState>>& terms, bool check, double tol) {
  if (terms.empty()) return CqState{};
  CqState out(terms.front().second.qvars);
  for (const auto& [lambda, d] : terms) {
    check_same_qvars(out.qvars, d.qvars, "lincomb");
    for (const auto& [s, m] : d.entries) out.add(s, m, lambda);
  }
  if (check) {
    std::string why;
    if (!is_valid(out, tol, &why)) throw CqStateError("lincomb: " + why);
  }
  return out;
}

CqState scale(const CqState& d, double s) { return lincomb({{s, d}}, false); }

CqState add(const CqState& a, const CqState& b) { return lincomb({{1.0, a}, {1.0, b}}, false); }

bool cq_leq(const CqState& a, const CqState& b, double tol) {
  check_same_qvars(a.qvars, b.qvars, "cq_leq");
  const std::size_t dim = total_dim(a.qvars);
  for (const auto& [s, m] : a.entries) {
    auto it = b.entries.find(s);
    const CMatrix diff = (it == b.entries.end() ? zeros(dim) : it->second) - m;
    if (min_eigenvalue(diff) < -tol) return false;
  }
  for (const auto& [s, m] : b.entries) {
    if (!a.entries.count(s) && min_eigenvalue(m) < -tol) return false;
  }
  return true;
}

CqState apply_channel(const SuperOp& e, const CqState& d) {
  CqState out;
  bool first = true;
  for (const auto& [s, m] : d.entries) {
    DensityOp r = apply_superop(e, DensityOp{m, d.qvars});
    if (first) {
      out.qvars = r.qvars;
      first = false;
    }
    out.add(s, r.matrix);
  }
  if (first) out.qvars = e.qvars_in == d.qvars ? e.qvars_out : d.qvars;
  return out;
}

double max_deviation(const CqState& a, const CqState& b) {
  check_same_qvars(a.qvars, b.qvars, "max_deviation");
  double dev = 0.0;
  for (const auto& [s, m] : a.entries) {
    auto it = b.entries.find(s);
    dev = std::max(dev, it == b.entries.end() ? m.cwiseAbs().maxCoeff() : max_abs_diff(m, it->second));
  }
  for (const auto& [s, m] : b.entries) {
    if (!a.entries.count(s)) dev = std::max(dev, m.cwiseAbs().maxCoeff());
  }
  return dev;
}

CqState reduce_state(const CqState& d, const std::vector<std::string>& keep) {
  CqState out;
  for (const auto& q : d.qvars) {
    for (const auto& k : keep) {
      if (q.name == k) out.qvars.push_back(q);
    }
  }
  for (const auto& k : keep) {
    if (!contains(d.qvars, k)) throw CqStateError("reduce_state: unknown quantum variable '" + k + "'");
  }
  for (const auto& [s, m] : d.entries) out.add(s, partial_trace(DensityOp{m, d.qvars}, keep).matrix);
  return out;
}

CqState extend_state(const CqState& d, const QVarList& full) {
  if (!is_subset(d.qvars, full)) throw CqStateError("extend_state: " + to_string(d.qvars) + " not within " + to_string(full));
  QVarList extra;
  for (const auto& q : full) {
    if (!contains(d.qvars, q.name)) extra.push_back(q);
  }
  CMatrix zero_proj = basis_projector(total_dim(extra), 0);
  QVarList joint = d.qvars;
  joint.insert(joint.end(), extra.begin(), extra.end());
  CqState out(full);
  for (const auto& [s, m] : d.entries) {
    out.add(s, embed(tensor(m, zero_proj), joint, full));
  }
  return out;
}

bool is_valid(const CqState& d, double tol, std::string* why) {
  double t = 0.0;
  for (const auto& [s, m] : d.entries) {
    if (!is_hermitian(m, tol)) {
      if (why) *why = "entry at " + to_string(s) + " is not Hermitian";
      return false;
    }
    if (min_eigenvalue(m) < -tol) {
      if (why) *why = "entry at " + to_string(s) + " has a negative eigenvalue";
      return false;
    }
    t += real_trace(m);
  }
  if (t > 1.0 + tol) {
    if (why) *why = "total trace " + std::to_string(t) + " exceeds 1";
    return false;
  }
  return true;
}

}  // namespace dqhl
