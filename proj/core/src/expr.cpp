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

#include "dqhl/expr.hpp"

#include <sstream>

namespace dqhl {

const char* type_name(Type t) { return t == Type::Int ? "int" : "bool"; }

ExprPtr int_lit(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::IntLit;
  e->value = v;
  return e;
}

ExprPtr bool_lit(bool b) {
  auto e = std::make_shared<Expr>();
  e->op = Op::BoolLit;
  e->value = b ? 1 : 0;
  return e;
}

ExprPtr var_ref(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Var;
  e->name = name;
  return e;
}

ExprPtr unary(Op op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  return e;
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

bool is_true_lit(const ExprPtr& e) { return e && e->op == Op::BoolLit && e->value != 0; }
bool is_false_lit(const ExprPtr& e) { return e && e->op == Op::BoolLit && e->value == 0; }

ExprPtr mk_not(ExprPtr a) {
  if (a->op == Op::BoolLit) return bool_lit(a->value == 0);
  return unary(Op::Not, std::move(a));
}

ExprPtr mk_and(ExprPtr a, ExprPtr b) {
  if (is_true_lit(a)) return b;
  if (is_true_lit(b)) return a;
  if (is_false_lit(a) || is_false_lit(b)) return bool_lit(false);
  return binary(Op::And, std::move(a), std::move(b));
}

ExprPtr mk_or(ExprPtr a, ExprPtr b) {
  if (is_false_lit(a)) return b;
  if (is_false_lit(b)) return a;
  if (is_true_lit(a) || is_true_lit(b)) return bool_lit(true);
  return binary(Op::Or, std::move(a), std::move(b));
}

ExprPtr conjunction(const std::vector<ExprPtr>& parts) {
  ExprPtr acc = bool_lit(true);
  for (const auto& p : parts) acc = mk_and(acc, p);
  return acc;
}

ExprPtr disjunction(const std::vector<ExprPtr>& parts) {
  ExprPtr acc = bool_lit(false);
  for (const auto& p : parts) acc = mk_or(acc, p);
  return acc;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError("modulo by zero");
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

std::int64_t eval(const Expr& e, const ClassicalState& sigma) {
  switch (e.op) {
    case Op::IntLit:
    case Op::BoolLit:
      return e.value;
    case Op::Var: {
      auto it = sigma.find(e.name);
      if (it == sigma.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case Op::Neg:
      return -eval(*e.lhs, sigma);
    case Op::Not:
      return eval(*e.lhs, sigma) == 0 ? 1 : 0;
    case Op::And:
      return (eval(*e.lhs, sigma) != 0 && eval(*e.rhs, sigma) != 0) ? 1 : 0;
    case Op::Or:
      return (eval(*e.lhs, sigma) != 0 || eval(*e.rhs, sigma) != 0) ? 1 : 0;
    default:
      break;
  }
  const std::int64_t a = eval(*e.lhs, sigma);
  const std::int64_t b = eval(*e.rhs, sigma);
  switch (e.op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Mod: return floor_mod(a, b);
    case Op::Xor: return a ^ b;
    case Op::Eq: return a == b;
    case Op::Ne: return a != b;
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Gt: return a > b;
    case Op::Ge: return a >= b;
    default: break;
  }
  throw EvalError("malformed expression");
}

bool holds(const ExprPtr& e, const ClassicalState& sigma) { return eval(*e, sigma) != 0; }

Type type_of(const ExprPtr& e, const VarEnv& env) {
  switch (e->op) {
    case Op::IntLit: return Type::Int;
    case Op::BoolLit: return Type::Bool;
    case Op::Var: {
      auto it = env.find(e->name);
      if (it == env.end()) throw TypeError("undeclared variable '" + e->name + "'");
      return it->second;
    }
    case Op::Neg:
      expect_type(e->lhs, env, Type::Int, "operand of unary '-'");
      return Type::Int;
    case Op::Not:
      expect_type(e->lhs, env, Type::Bool, "operand of 'not'");
      return Type::Bool;
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Mod: case Op::Xor:
      expect_type(e->lhs, env, Type::Int, "arithmetic operand");
      expect_type(e->rhs, env, Type::Int, "arithmetic operand");
      return Type::Int;
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      expect_type(e->lhs, env, Type::Int, "comparison operand");
      expect_type(e->rhs, env, Type::Int, "comparison operand");
      return Type::Bool;
    case Op::Eq: case Op::Ne: {
      Type a = type_of(e->lhs, env), b = type_of(e->rhs, env);
      if (a != b) throw TypeError("cannot compare " + std::string(type_name(a)) + " with " + type_name(b) +
                                  " in '" + to_string(e) + "'");
      return Type::Bool;
    }
    case Op::And: case Op::Or:
      expect_type(e->lhs, env, Type::Bool, "operand of 'and'/'or'");
      expect_type(e->rhs, env, Type::Bool, "operand of 'and'/'or'");
      return Type::Bool;
  }
  throw TypeError("malformed expression");
}

void expect_type(const ExprPtr& e, const VarEnv& env, Type want, const std::string& context) {
  Type got = type_of(e, env);
  if (got != want) {
    throw TypeError(context + ": expected " + type_name(want) + ", got " + type_name(got) + " in '" +
                    to_string(e) + "'");
  }
}

void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Op::Var) out.insert(e->name);
  collect_vars(e->lhs, out);
  collect_vars(e->rhs, out);
}

std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& subst) {
  if (!e) return e;
  switch (e->op) {
    case Op::IntLit: case Op::BoolLit:
      return e;
    case Op::Var: {
      auto it = subst.find(e->name);
      return it == subst.end() ? e : it->second;
    }
    case Op::Neg: case Op::Not: {
      auto a = substitute(e->lhs, subst);
      return a == e->lhs ? e : unary(e->op, a);
    }
    default: {
      auto a = substitute(e->lhs, subst);
      auto b = substitute(e->rhs, subst);
      return (a == e->lhs && b == e->rhs) ? e : binary(e->op, a, b);
    }
  }
}

ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& replacement) {
  return substitute(e, std::map<std::string, ExprPtr>{{x, replacement}});
}

namespace {

bool is_lit(const ExprPtr& e) { return e->op == Op::IntLit || e->op == Op::BoolLit; }

}  // namespace

ExprPtr simplify(const ExprPtr& e) {
  if (!e) return e;
  switch (e->op) {
    case Op::IntLit: case Op::BoolLit: case Op::Var:
      return e;
    case Op::Neg: {
      auto a = simplify(e->lhs);
      if (a->op == Op::IntLit) return int_lit(-a->value);
      return a == e->lhs ? e : unary(Op::Neg, a);
    }
    case Op::Not: {
      auto a = simplify(e->lhs);
      if (a->op == Op::BoolLit) return bool_lit(a->value == 0);
      if (a->op == Op::Not) return a->lhs;
      return a == e->lhs ? e : unary(Op::Not, a);
    }
    case Op::And:
      return mk_and(simplify(e->lhs), simplify(e->rhs));
    case Op::Or:
      return mk_or(simplify(e->lhs), simplify(e->rhs));
    default:
      break;
  }
  auto a = simplify(e->lhs);
  auto b = simplify(e->rhs);
  if (is_lit(a) && is_lit(b)) {
    ExprPtr folded = binary(e->op, a, b);
    std::int64_t v = eval(*folded, {});
    switch (e->op) {
      case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
        return bool_lit(v != 0);
      default:
        return int_lit(v);
    }
  }
  if ((e->op == Op::Eq || e->op == Op::Ne) && structurally_equal(a, b)) return bool_lit(e->op == Op::Eq);
  return (a == e->lhs && b == e->rhs) ? e : binary(e->op, a, b);
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::IntLit: case Op::BoolLit: return a->value == b->value;
    case Op::Var: return a->name == b->name;
    case Op::Neg: case Op::Not: return structurally_equal(a->lhs, b->lhs);
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Not: return 3;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 4;
    case Op::Add: case Op::Sub: case Op::Xor: return 5;
    case Op::Mul: case Op::Mod: return 6;
    case Op::Neg: return 7;
    default: return 8;
  }
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Mod: return "mod";
    case Op::Xor: return "xor";
    case Op::Eq: return "=";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "and";
    case Op::Or: return "or";
    default: return "?";
  }
}

void print(std::ostream& os, const ExprPtr& e);

void print_child(std::ostream& os, const ExprPtr& child, bool parens) {
  if (parens) os << '(';
  print(os, child);
  if (parens) os << ')';
}

void print(std::ostream& os, const ExprPtr& e) {
  switch (e->op) {
    case Op::IntLit: os << e->value; return;
    case Op::BoolLit: os << (e->value ? "true" : "false"); return;
    case Op::Var: os << e->name; return;
    case Op::Neg:
      os << '-';
      print_child(os, e->lhs, precedence(e->lhs->op) <= precedence(Op::Neg) ||
                                  (e->lhs->op == Op::IntLit && e->lhs->value < 0));
      return;
    case Op::Not:
      os << "not ";
      print_child(os, e->lhs, e->lhs->lhs != nullptr && e->lhs->rhs != nullptr);
      return;
    default: break;
  }
  const int p = precedence(e->op);
  const bool cmp = p == 4;
  const int lp = precedence(e->lhs->op), rp = precedence(e->rhs->op);
  print_child(os, e->lhs, lp < p || (cmp && lp == p));
  os << ' ' << op_text(e->op) << ' ';
  print_child(os, e->rhs, rp <= p);
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  if (!e) return "<null>";
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string to_string(const ClassicalState& sigma) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : sigma) {
    if (!first) os << ", ";
    first = false;
    os << k << '=' << v;
  }
  os << '}';
  return os.str();
}

}  // namespace dqhl
