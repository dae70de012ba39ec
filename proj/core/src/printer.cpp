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

#include "dqhl/printer.hpp"

#include <cstdio>
#include <sstream>

#include "dqhl/gates.hpp"

namespace dqhl {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // %.17g can emit "inf"/"nan"; they never appear in validated matrices
  return s;
}

std::string qvar_names(const QVarList& qs) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) out += ", ";
    out += qs[i].name;
  }
  return out;
}

bool gate_resolves(const std::string& name, const CMatrix& m, const Process* scope) {
  if (name.empty()) return false;
  if (scope) {
    for (const auto& g : scope->gates) {
      if (g.name == name) return g.matrix.rows() == m.rows() && max_abs_diff(g.matrix, m) <= 1e-12;
    }
  }
  auto b = builtin_gate(name);
  return b && b->rows() == m.rows() && max_abs_diff(*b, m) <= 1e-12;
}

bool meas_resolves(const std::string& name, const std::vector<CMatrix>& kraus, const Process* scope) {
  if (name.empty() || !scope) return false;
  for (const auto& m : scope->measurements) {
    if (m.name != name) continue;
    if (m.kraus.size() != kraus.size()) return false;
    for (std::size_t i = 0; i < kraus.size(); ++i) {
      if (m.kraus[i].rows() != kraus[i].rows() || max_abs_diff(m.kraus[i], kraus[i]) > 1e-12) return false;
    }
    return true;
  }
  return false;
}

bool is_computational(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) return false;
  const auto ref = computational_measurement(kraus.front().rows());
  if (ref.size() != kraus.size()) return false;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (kraus[i].rows() != ref[i].rows() || max_abs_diff(kraus[i], ref[i]) > 1e-12) return false;
  }
  return true;
}

std::string guarded(const std::vector<GuardedCmd>& bs, const Process* scope) {
  std::string out;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) out += " [] ";
    out += to_string(bs[i].guard) + " -> " + print_stmt(bs[i].body, scope);
  }
  return out;
}

std::string io_text(const IoCommand& io) {
  return io.channel + (io.is_input ? "?" + io.var : "!" + to_string(io.expr));
}

}  // namespace

std::string format_scalar(Complex c) {
  const double re = c.real(), im = c.imag();
  if (im == 0.0) return fmt_double(re);
  if (re == 0.0) return fmt_double(im) + "i";
  std::string s = "(" + fmt_double(re);
  s += im < 0 ? " - " + fmt_double(-im) : " + " + fmt_double(im);
  return s + "i)";
}

std::string format_matrix(const CMatrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += format_scalar(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

std::string print_stmt(const StmtPtr& s, const Process* scope) {
  switch (s->kind) {
    case StmtKind::Skip:
      return "skip";
    case StmtKind::Abort:
      return "abort";
    case StmtKind::Assign:
      return s->var + " := " + to_string(s->expr);
    case StmtKind::RandAssign: {
      std::string out = s->var + " :=$ {";
      for (std::size_t i = 0; i < s->dist.size(); ++i) {
        out += i ? ", " : " ";
        const Rational& p = s->dist[i].second;
        out += std::to_string(s->dist[i].first) + ": " + std::to_string(p.numerator());
        if (p.denominator() != 1) out += "/" + std::to_string(p.denominator());
      }
      return out + " }";
    }
    case StmtKind::Measure: {
      std::string out = s->var + " := meas ";
      if (meas_resolves(s->op_name, s->ops, scope)) return out + s->op_name + "[" + qvar_names(s->qvars) + "]";
      if (is_computational(s->ops)) return out + qvar_names(s->qvars);
      out += "{";
      for (std::size_t i = 0; i < s->ops.size(); ++i) out += (i ? ", " : "") + format_matrix(s->ops[i]);
      return out + "}[" + qvar_names(s->qvars) + "]";
    }
    case StmtKind::InitQ:
      return s->qvars.front().name + " := 0";
    case StmtKind::ApplyU:
      return qvar_names(s->qvars) + " *= " +
             (gate_resolves(s->op_name, s->ops.front(), scope) ? s->op_name : format_matrix(s->ops.front()));
    case StmtKind::Seq: {
      std::string out;
      for (std::size_t i = 0; i < s->children.size(); ++i) {
        if (i) out += "; ";
        out += print_stmt(s->children[i], scope);
      }
      return out;
    }
    case StmtKind::Alt:
      return "if " + guarded(s->branches, scope) + " fi";
    case StmtKind::Rep:
      return "do " + guarded(s->branches, scope) + " od";
  }
  return "";
}

std::string print_program(const DistProgram& p) {
  std::ostringstream os;
  if (!p.channels.empty()) {
    os << "channels ";
    for (std::size_t i = 0; i < p.channels.size(); ++i) os << (i ? ", " : "") << p.channels[i];
    os << ";\n";
  }
  for (const auto& proc : p.processes) {
    if (os.tellp() > 0) os << "\n";
    os << "process " << proc.name << " {\n";
    for (const auto& [name, type] : proc.vars) os << "  var " << name << ": " << type_name(type) << ";\n";
    for (std::size_t i = 0; i < proc.qvars.size();) {
      std::size_t j = i;
      while (j < proc.qvars.size() && proc.qvars[j].dim == proc.qvars[i].dim) ++j;
      os << (proc.qvars[i].dim == 2 ? "  qubit " : "  qudit ");
      for (std::size_t k = i; k < j; ++k) os << (k > i ? ", " : "") << proc.qvars[k].name;
      if (proc.qvars[i].dim != 2) os << ": " << proc.qvars[i].dim;
      os << ";\n";
      i = j;
    }
    for (const auto& g : proc.gates) os << "  unitary " << g.name << " = " << format_matrix(g.matrix) << ";\n";
    for (const auto& m : proc.measurements) {
      os << "  measurement " << m.name << " = {";
      for (std::size_t i = 0; i < m.kraus.size(); ++i) os << (i ? ", " : "") << format_matrix(m.kraus[i]);
      os << "};\n";
    }
    const bool has_init = !(proc.init->kind == StmtKind::Skip && !proc.loop.empty());
    if (has_init) {
      if (proc.init->kind == StmtKind::Seq) {
        for (const auto& c : proc.init->children) os << "  " << print_stmt(c, &proc) << ";\n";
      } else {
        os << "  " << print_stmt(proc.init, &proc) << ";\n";
      }
    }
    if (!proc.loop.empty()) {
      for (std::size_t i = 0; i < proc.loop.size(); ++i) {
        const LoopBranch& b = proc.loop[i];
        os << (i ? "  [] " : "  do ") << to_string(b.guard) << "; " << io_text(b.io) << " -> "
           << print_stmt(b.body, &proc) << "\n";
      }
      os << "  od\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace dqhl
