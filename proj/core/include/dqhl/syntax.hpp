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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dqhl/expr.hpp"
#include "dqhl/lexer.hpp"
#include "dqhl/linalg.hpp"

namespace dqhl {

using Rational = boost::rational<std::int64_t>;

enum class StmtKind { Skip, Abort, Assign, RandAssign, Measure, InitQ, ApplyU, Seq, Alt, Rep };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct GuardedCmd {
  ExprPtr guard;
  StmtPtr body;
};

struct Stmt {
  StmtKind kind = StmtKind::Skip;
  SourcePos pos;
  std::string var;                                   // Assign, RandAssign, Measure
  ExprPtr expr;                                      // Assign
  std::vector<std::pair<std::int64_t, Rational>> dist;  // RandAssign
  std::string op_name;                               // gate / measurement name; empty for computational
  std::vector<CMatrix> ops;                          // Measure: Kraus list; ApplyU: the unitary
  QVarList qvars;                                    // Measure, InitQ, ApplyU
  std::vector<StmtPtr> children;                     // Seq (n-ary, never nested)
  std::vector<GuardedCmd> branches;                  // Alt, Rep
};

StmtPtr mk_skip();
StmtPtr mk_abort();
StmtPtr mk_assign(const std::string& x, ExprPtr e);
StmtPtr mk_rand_assign(const std::string& x, std::vector<std::pair<std::int64_t, Rational>> dist);
StmtPtr mk_measure(const std::string& x, const std::string& name, std::vector<CMatrix> kraus, QVarList qvars);
StmtPtr mk_init(const QVar& q);
StmtPtr mk_unitary(const std::string& name, CMatrix u, QVarList qvars);
// Flattens nested sequences; a single-element sequence collapses to its element.
StmtPtr mk_seq(const std::vector<StmtPtr>& parts);
StmtPtr mk_alt(std::vector<GuardedCmd> branches);
StmtPtr mk_rep(std::vector<GuardedCmd> branches);

struct IoCommand {
  std::string channel;
  bool is_input = false;
  std::string var;  // input target
  ExprPtr expr;     // output value
};

struct LoopBranch {
  ExprPtr guard;
  IoCommand io;
  StmtPtr body;
};

struct GateDecl {
  std::string name;
  CMatrix matrix;
};

struct MeasDecl {
  std::string name;
  std::vector<CMatrix> kraus;
};

struct Process {
  std::string name;
  SourcePos pos;
  std::vector<std::pair<std::string, Type>> vars;  // declaration order
  QVarList qvars;                                   // declaration order
  std::vector<GateDecl> gates;
  std::vector<MeasDecl> measurements;
  StmtPtr init;
  std::vector<LoopBranch> loop;

  VarEnv env() const;
};

struct DistProgram {
  std::vector<std::string> channels;
  std::vector<Process> processes;

  // Union of all declarations (first declaration wins on conflicts).
  VarEnv env() const;
  // Declared quantum variables of every process, in process order.
  QVarList qvars() const;
  bool is_sequential() const { return processes.size() == 1 && processes.front().loop.empty(); }
};

// A program with one process whose body is `body`, reusing the declarations of `ctx`.
DistProgram fragment(const DistProgram& ctx, StmtPtr body, const std::string& name = "S");

struct VarSets {
  std::set<std::string> cv;
  std::set<std::string> qv;
  std::set<std::string> change;
  std::set<std::string> chan;
};

VarSets var_sets(const Stmt& s);
VarSets var_sets(const Process& p);
VarSets var_sets(const DistProgram& p);

// Quantum variables acted on by a statement, in first-use order.
QVarList qvars_of(const Stmt& s);

bool io_match(const IoCommand& a, const IoCommand& b, const VarEnv& env);
// Effect(a, b) = (x := e) for the input c?x and output c!e of a matching pair.
StmtPtr effect(const IoCommand& a, const IoCommand& b);

// Structural AST equality; matrices compared entrywise within tol. Source
// positions are ignored.
bool same_stmt(const StmtPtr& a, const StmtPtr& b, double tol = 1e-12);
bool same_program(const DistProgram& a, const DistProgram& b, double tol = 1e-12);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dqhl
