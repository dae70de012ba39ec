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

#include "dqhl/json_io.hpp"

#include <cmath>

#include "dqhl/assertion_parser.hpp"
#include "dqhl/parser.hpp"

namespace dqhl {

namespace {

// Rounding noise below this prints as an exact zero, so that reports do not
// flicker between 1e-17 and -1e-17.
constexpr double kPrintFloor = 1e-14;

double clean(double x) {
  if (std::abs(x) < kPrintFloor) return 0.0;
  return x;
}

}  // namespace

Json to_json(Complex c) { return Json::array({clean(c.real()), clean(c.imag())}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw JsonFormatError("expected a number or an [re, im] pair, got " + j.dump());
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw JsonFormatError("expected a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw JsonFormatError("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw JsonFormatError("expected a vector");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

Json to_json(const QVarList& qs) {
  Json out = Json::array();
  for (const auto& q : qs) {
    if (q.dim == 2) {
      out.push_back(q.name);
    } else {
      out.push_back(Json{{"name", q.name}, {"dim", q.dim}});
    }
  }
  return out;
}

QVarList qvars_from_json(const Json& j) {
  if (!j.is_array()) throw JsonFormatError("\"qvars\" must be an array");
  QVarList out;
  for (const auto& q : j) {
    if (q.is_string()) {
      out.push_back({q.get<std::string>(), 2});
    } else if (q.is_object() && q.contains("name")) {
      out.push_back({q.at("name").get<std::string>(), q.value("dim", 2)});
    } else {
      throw JsonFormatError("bad quantum variable " + q.dump());
    }
  }
  return out;
}

Json to_json(const ClassicalState& s) {
  Json out = Json::object();
  for (const auto& [k, v] : s) out[k] = v;
  return out;
}

ClassicalState classical_from_json(const Json& j) {
  if (!j.is_object()) throw JsonFormatError("\"state\" must be an object");
  ClassicalState s;
  for (const auto& [k, v] : j.items()) {
    if (v.is_boolean()) {
      s[k] = v.get<bool>() ? 1 : 0;
    } else if (v.is_number_integer()) {
      s[k] = v.get<std::int64_t>();
    } else {
      throw JsonFormatError("classical variable '" + k + "' must be an integer or boolean");
    }
  }
  return s;
}

Json to_json(const CqState& d) {
  Json entries = Json::array();
  for (const auto& [s, rho] : d.entries) entries.push_back(Json{{"state", to_json(s)}, {"rho", to_json(rho)}});
  return Json{{"qvars", to_json(d.qvars)}, {"entries", std::move(entries)}, {"trace", clean(trace(d))}};
}

CMatrix state_from_expr(const std::string& text, const QVarList& qvars, const std::map<std::string, CVector>& params) {
  const QValue v = parse_qvalue(text, params);
  const auto dim = static_cast<Eigen::Index>(total_dim(qvars));
  CMatrix rho;
  switch (v.kind) {
    case QValue::Ket: rho = projector(v.value.col(0)); break;
    case QValue::Op: rho = v.value; break;
    case QValue::Scalar: throw JsonFormatError("state expression '" + text + "' is a scalar");
  }
  if (rho.rows() != dim) {
    throw JsonFormatError("state expression '" + text + "' has dimension " + std::to_string(rho.rows()) +
                          ", the register " + to_string(qvars) + " needs " + std::to_string(dim));
  }
  return rho;
}

StateInput cqstate_from_json(const Json& j, Rng& rng, std::map<std::string, CVector> params) {
  if (!j.is_object()) throw JsonFormatError("a cq-state must be a JSON object");
  StateInput in;
  if (j.contains("params")) {
    for (const auto& [name, v] : j.at("params").items()) {
      if (params.count(name)) continue;
      if (v.is_object() && v.contains("haar")) {
        params[name] = haar_ket(v.at("haar").get<std::size_t>(), rng);
      } else {
        CVector k = vector_from_json(v);
        const double n = k.norm();
        if (n < kTol) throw JsonFormatError("parameter '" + name + "' is the zero vector");
        params[name] = k / n;
      }
    }
  }
  in.params = params;
  in.state = CqState(qvars_from_json(j.at("qvars")));
  const auto dim = static_cast<Eigen::Index>(total_dim(in.state.qvars));
  for (const auto& e : j.at("entries")) {
    const ClassicalState s = classical_from_json(e.value("state", Json::object()));
    CMatrix rho;
    if (e.contains("rho")) {
      rho = matrix_from_json(e.at("rho"));
    } else if (e.contains("ket")) {
      rho = projector(vector_from_json(e.at("ket")));
    } else if (e.contains("expr")) {
      rho = state_from_expr(e.at("expr").get<std::string>(), in.state.qvars, params);
    } else {
      throw JsonFormatError("an entry needs \"rho\", \"ket\" or \"expr\"");
    }
    if (rho.rows() != dim || rho.cols() != dim) throw JsonFormatError("entry dimension does not match the register");
    in.state.add(s, rho, e.value("p", 1.0));
  }
  std::string why;
  if (!is_valid(in.state, kTol, &why)) throw JsonFormatError("not a valid cq-state: " + why);
  return in;
}

Json to_json(const ActionLabel& a) { return to_string(a); }

Json to_json(const RunReport& r, bool with_trace) {
  Json j{{"terminated", clean(r.terminated)},
         {"failed", clean(r.failed)},
         {"deadlocked", clean(r.deadlocked)},
         {"residual", clean(r.residual)},
         {"pruned", clean(r.pruned)},
         {"steps", r.steps},
         {"quiescent", r.quiescent},
         {"diverged", r.diverged},
         {"max_branches", r.max_branches},
         {"monotone", r.monotone},
         {"max_sum_error", clean(r.max_sum_error)},
         {"delta", to_json(r.delta)}};
  if (with_trace) {
    Json steps = Json::array();
    for (const auto& t : r.trace) {
      Json chosen = Json::array();
      for (const auto& c : t.chosen) chosen.push_back(c ? to_json(*c) : Json(nullptr));
      steps.push_back(Json{{"chosen", std::move(chosen)}, {"parent", t.parent}});
    }
    j["trace"] = std::move(steps);
  }
  return j;
}

std::vector<std::vector<std::optional<ActionLabel>>> trace_from_json(const Json& j) {
  const Json& steps = j.is_object() ? j.at("trace") : j;
  if (!steps.is_array()) throw JsonFormatError("a trace must be an array of steps");
  std::vector<std::vector<std::optional<ActionLabel>>> out;
  for (const auto& st : steps) {
    const Json& chosen = st.is_object() ? st.at("chosen") : st;
    std::vector<std::optional<ActionLabel>> row;
    for (const auto& c : chosen) {
      if (c.is_null()) {
        row.emplace_back();
        continue;
      }
      auto a = parse_label(c.get<std::string>());
      if (!a) throw JsonFormatError("bad action label " + c.dump());
      row.push_back(a);
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const DenoteResult& r) {
  return Json{{"converged", r.converged}, {"residual", clean(r.residual)}, {"failed", clean(r.failed)},
              {"diverged", clean(r.diverged)}, {"deadlocked", clean(r.deadlocked)}, {"state", to_json(r.state)}};
}

Json to_json(const CqAssertion& a) {
  Json clauses = Json::array();
  for (const auto& c : a.clauses) clauses.push_back(Json{{"guard", to_string(c.guard)}, {"obs", to_json(c.obs)}});
  return Json{{"qvars", to_json(a.qvars)}, {"clauses", std::move(clauses)}};
}

Json to_json(const SemanticReport& r) {
  Json states = Json::array();
  for (const auto& s : r.states) {
    states.push_back(Json{{"lhs", clean(s.lhs)},
                          {"rhs", clean(s.rhs)},
                          {"slack", clean(s.slack)},
                          {"converged", s.converged},
                          {"verdict", verdict_name(s.verdict)}});
  }
  return Json{{"verdict", verdict_name(r.verdict)},
              {"min_gap", clean(r.min_gap)},
              {"failing", r.failing},
              {"states", std::move(states)}};
}

Json to_json(const RuleReport& r) {
  Json findings = Json::array();
  for (const auto& f : r.findings) {
    Json fj{{"check", f.what}, {"ok", f.ok}, {"deviation", clean(f.deviation)}};
    if (!f.detail.empty()) fj["detail"] = f.detail;
    findings.push_back(std::move(fj));
  }
  Json j{{"rule", r.rule}, {"ok", r.ok}, {"findings", std::move(findings)}, {"hypotheses", r.hypotheses}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.eigenvector.size() > 0) j["eigenvector"] = to_json(CMatrix(r.eigenvector));
  return j;
}

}  // namespace dqhl
