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
#include <stdexcept>
#include <string>
#include <vector>

namespace dqhl {

enum class Type { Int, Bool };
const char* type_name(Type t);

// Booleans are stored as 0/1 alongside integers.
using ClassicalState = std::map<std::string, std::int64_t>;
using VarEnv = std::map<std::string, Type>;

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

enum class Op {
  IntLit, BoolLit, Var,
  Neg, Not,
  Add, Sub, Mul, Mod, Xor,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op = Op::IntLit;
  std::int64_t value = 0;  // IntLit, BoolLit (0/1)
  std::string name;        // Var
  ExprPtr lhs;             // unary operand or left operand
  ExprPtr rhs;
};

ExprPtr int_lit(std::int64_t v);
ExprPtr bool_lit(bool b);
ExprPtr var_ref(const std::string& name);
ExprPtr unary(Op op, ExprPtr a);
ExprPtr binary(Op op, ExprPtr a, ExprPtr b);

// Smart constructors that fold trivial constants.
ExprPtr mk_not(ExprPtr a);
ExprPtr mk_and(ExprPtr a, ExprPtr b);
ExprPtr mk_or(ExprPtr a, ExprPtr b);
ExprPtr conjunction(const std::vector<ExprPtr>& parts);
ExprPtr disjunction(const std::vector<ExprPtr>& parts);

bool is_true_lit(const ExprPtr& e);
bool is_false_lit(const ExprPtr& e);

std::int64_t eval(const Expr& e, const ClassicalState& sigma);
inline std::int64_t eval(const ExprPtr& e, const ClassicalState& sigma) { return eval(*e, sigma); }
bool holds(const ExprPtr& e, const ClassicalState& sigma);

// Floor modulo; the result has the sign of the divisor.
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

Type type_of(const ExprPtr& e, const VarEnv& env);
void expect_type(const ExprPtr& e, const VarEnv& env, Type want, const std::string& context);

void collect_vars(const ExprPtr& e, std::set<std::string>& out);
std::set<std::string> free_vars(const ExprPtr& e);

ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& replacement);
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& subst);
// Constant folding plus and/or/not absorption. Semantics preserving.
ExprPtr simplify(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

std::string to_string(const ExprPtr& e);
std::string to_string(const ClassicalState& sigma);

}  // namespace dqhl
