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

#include "dqhl/assertion_parser.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "dqhl/gates.hpp"
#include "dqhl/lexer.hpp"
#include "dqhl/parser.hpp"

namespace dqhl {

namespace {

using Bindings = std::map<std::string, std::int64_t>;

const std::set<std::string> kQWords = {"ket", "basis", "bell", "plus", "minus", "proj", "dag", "id",
                                       "sqrt", "exp", "pi", "i"};

QValue scalar(Complex c) {
  QValue v;
  v.kind = QValue::Scalar;
  v.value = CMatrix::Constant(1, 1, c);
  return v;
}

QValue ket(CVector k) {
  QValue v;
  v.kind = QValue::Ket;
  v.value = std::move(k);
  return v;
}

QValue op(CMatrix m) {
  QValue v;
  v.kind = QValue::Op;
  v.value = std::move(m);
  return v;
}

const char* kind_name(QValue::Kind k) {
  switch (k) {
    case QValue::Scalar: return "scalar";
    case QValue::Ket: return "ket";
    case QValue::Op: return "operator";
  }
  return "?";
}

class QParser {
 public:
  QParser(TokenStream& ts, const std::map<std::string, CVector>& params, const Bindings& bind)
      : ts_(ts), params_(params), bind_(bind) {}

  QValue sum() {
    QValue v = tensor_level();
    for (;;) {
      const SourcePos pos = ts_.peek().pos;
      if (ts_.accept(Tok::Plus)) {
        v = add(v, tensor_level(), 1.0, pos);
      } else if (ts_.accept(Tok::Minus)) {
        v = add(v, tensor_level(), -1.0, pos);
      } else {
        return v;
      }
    }
  }

  Complex scalar_value() {
    const SourcePos pos = ts_.peek().pos;
    QValue v = sum();
    if (v.kind != QValue::Scalar) throw ParseError(pos, std::string("expected a scalar, found a ") + kind_name(v.kind));
    return v.value(0, 0);
  }

  std::int64_t int_value() {
    const SourcePos pos = ts_.peek().pos;
    const Complex c = scalar_value();
    const double r = std::round(c.real());
    if (std::abs(c.imag()) > 1e-12 || std::abs(c.real() - r) > 1e-12) throw ParseError(pos, "expected an integer");
    return static_cast<std::int64_t>(r);
  }

 private:
  QValue add(const QValue& a, const QValue& b, double sign, const SourcePos& pos) {
    if (a.kind != b.kind || a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols()) {
      throw ParseError(pos, std::string("cannot add ") + kind_name(a.kind) + " and " + kind_name(b.kind) +
                                " of different shapes");
    }
    QValue r = a;
    r.value = a.value + sign * b.value;
    return r;
  }

  QValue tensor_level() {
    QValue v = product();
    while (ts_.at(Tok::Tensor)) {
      const SourcePos pos = ts_.next().pos;
      QValue w = product();
      if (v.kind == QValue::Scalar || v.kind != w.kind) {
        throw ParseError(pos, std::string("cannot tensor ") + kind_name(v.kind) + " with " + kind_name(w.kind));
      }
      v.value = tensor(v.value, w.value);
    }
    return v;
  }

  QValue product() {
    QValue v = unary();
    for (;;) {
      const SourcePos pos = ts_.peek().pos;
      if (ts_.accept(Tok::Star)) {
        v = mul(v, unary(), pos);
      } else if (ts_.accept(Tok::Slash)) {
        QValue d = unary();
        if (d.kind != QValue::Scalar) throw ParseError(pos, "division by a non-scalar");
        if (std::abs(d.value(0, 0)) == 0.0) throw ParseError(pos, "division by zero");
        v.value /= d.value(0, 0);
      } else {
        return v;
      }
    }
  }

  QValue mul(const QValue& a, const QValue& b, const SourcePos& pos) {
    if (a.kind == QValue::Scalar) {
      QValue r = b;
      r.value *= a.value(0, 0);
      return r;
    }
    if (b.kind == QValue::Scalar) {
      QValue r = a;
      r.value *= b.value(0, 0);
      return r;
    }
    if (a.kind == QValue::Op && a.value.cols() == b.value.rows()) {
      QValue r = b;
      r.value = a.value * b.value;
      return r;
    }
    throw ParseError(pos, std::string("cannot multiply ") + kind_name(a.kind) + " (" + std::to_string(a.value.rows()) +
                              ") by " + kind_name(b.kind) + " (" + std::to_string(b.value.rows()) + ")");
  }

  QValue unary() {
    if (ts_.accept(Tok::Minus)) {
      QValue v = unary();
      v.value = -v.value;
      return v;
    }
    if (ts_.accept(Tok::Plus)) return unary();
    return power();
  }

  QValue power() {
    QValue v = atom();
    if (ts_.at(Tok::Caret)) {
      const SourcePos pos = ts_.next().pos;
      std::int64_t k = 0;
      if (ts_.accept(Tok::LParen)) {
        k = int_value();
        ts_.expect(Tok::RParen, "closing parenthesis");
      } else {
        QValue e = atom();
        if (e.kind != QValue::Scalar) throw ParseError(pos, "exponent must be an integer");
        k = static_cast<std::int64_t>(std::llround(e.value(0, 0).real()));
      }
      if (k < 0) throw ParseError(pos, "negative exponent");
      if (v.kind == QValue::Scalar) {
        v.value(0, 0) = std::pow(v.value(0, 0), static_cast<double>(k));
      } else if (v.kind == QValue::Op) {
        v.value = matrix_power(v.value, static_cast<int>(k));
      } else {
        throw ParseError(pos, "cannot raise a ket to a power");
      }
    }
    return v;
  }

  std::vector<std::int64_t> int_args() {
    std::vector<std::int64_t> out;
    ts_.expect(Tok::LParen, "'('");
    if (!ts_.at(Tok::RParen)) {
      do {
        out.push_back(int_value());
      } while (ts_.accept(Tok::Comma));
    }
    ts_.expect(Tok::RParen, "')'");
    return out;
  }

  QValue atom() {
    const Token t = ts_.peek();
    switch (t.kind) {
      case Tok::Int:
      case Tok::Real:
        ts_.next();
        return scalar({t.real_value, 0.0});
      case Tok::Imag:
        ts_.next();
        return scalar({0.0, t.real_value});
      case Tok::LParen: {
        ts_.next();
        QValue v = sum();
        ts_.expect(Tok::RParen, "closing parenthesis");
        return v;
      }
      case Tok::LBracket:
        return op(parse_matrix_literal(ts_));
      case Tok::Ident:
        break;
      default:
        ts_.fail("expected a quantum expression, found '" + t.text + "'");
    }
    const std::string w = t.text;
    if (auto b = bind_.find(w); b != bind_.end()) {
      ts_.next();
      return scalar({static_cast<double>(b->second), 0.0});
    }
    if (auto p = params_.find(w); p != params_.end()) {
      ts_.next();
      return ket(p->second);
    }
    ts_.next();
    if (w == "i") return scalar({0.0, 1.0});
    if (w == "pi") return scalar({M_PI, 0.0});
    if (w == "sqrt" || w == "exp") {
      ts_.expect(Tok::LParen, "'('");
      const Complex c = scalar_value();
      ts_.expect(Tok::RParen, "')'");
      return scalar(w == "sqrt" ? std::sqrt(c) : std::exp(c));
    }
    if (w == "ket") {
      if (ts_.at(Tok::LParen) && ts_.at(Tok::Ident, 1) && ts_.at(Tok::RParen, 2) && params_.count(ts_.peek(1).text) &&
          !bind_.count(ts_.peek(1).text)) {
        auto p = params_.find(ts_.peek(1).text);
        ts_.next();
        ts_.next();
        ts_.next();
        return ket(p->second);
      }
      std::vector<int> bits;
      for (auto b : int_args()) {
        if (b != 0 && b != 1) throw ParseError(t.pos, "ket(...) takes bits; use basis(d, k) for qudits");
        bits.push_back(static_cast<int>(b));
      }
      if (bits.empty()) throw ParseError(t.pos, "ket() needs at least one bit");
      return ket(qubit_ket(bits));
    }
    if (w == "basis") {
      const auto a = int_args();
      if (a.size() != 2 || a[0] < 1 || a[1] < 0 || a[1] >= a[0]) throw ParseError(t.pos, "basis(d, k) needs 0 <= k < d");
      return ket(basis_ket(static_cast<std::size_t>(a[0]), static_cast<std::size_t>(a[1])));
    }
    if (w == "id") {
      const auto a = int_args();
      if (a.size() != 1 || a[0] < 1) throw ParseError(t.pos, "id(n) needs a positive dimension");
      return op(identity(static_cast<std::size_t>(a[0])));
    }
    if (w == "bell") {
      // bell(a, b) names the pair it sits on; the names are informational
      if (ts_.at(Tok::LParen) && ts_.at(Tok::Ident, 1) && ts_.at(Tok::Comma, 2) && ts_.at(Tok::Ident, 3) &&
          ts_.at(Tok::RParen, 4)) {
        for (int k = 0; k < 5; ++k) ts_.next();
      }
      return ket(bell_ket());
    }
    if (w == "plus" || w == "minus") {
      CVector k(2);
      k << 1.0, (w == "plus" ? 1.0 : -1.0);
      return ket(k / std::sqrt(2.0));
    }
    if (w == "proj" || w == "dag") {
      ts_.expect(Tok::LParen, "'('");
      QValue v = sum();
      ts_.expect(Tok::RParen, "')'");
      if (w == "proj") {
        if (v.kind != QValue::Ket) throw ParseError(t.pos, "proj(...) needs a ket");
        return op(projector(v.value.col(0)));
      }
      if (v.kind == QValue::Ket) throw ParseError(t.pos, "dag(...) of a ket is not an operator");
      v.value = v.value.adjoint().eval();
      return v;
    }
    if (auto g = builtin_gate(w)) return op(*g);
    throw ParseError(t.pos, "unknown name '" + w + "' in quantum expression");
  }

  TokenStream& ts_;
  const std::map<std::string, CVector>& params_;
  const Bindings& bind_;
};

class AParser {
 public:
  AParser(TokenStream& ts, const AssertionContext& ctx, const VarEnv& env,
          const std::map<std::string, ExprPtr>& preds, const std::map<std::string, CqAssertion>& known)
      : ts_(ts), ctx_(ctx), env_(env), preds_(preds), known_(known) {}

  CqAssertion parse(const QVarList& reg) {
    reg_ = reg;
    Bindings none;
    return aexpr(none);
  }

 private:
  CqAssertion aexpr(const Bindings& b) {
    std::vector<std::pair<double, CqAssertion>> terms;
    terms.push_back({1.0, aterm(b)});
    for (;;) {
      if (ts_.accept(Tok::Plus)) {
        terms.push_back({1.0, aterm(b)});
      } else if (ts_.accept(Tok::Minus)) {
        terms.push_back({-1.0, aterm(b)});
      } else {
        break;
      }
    }
    if (terms.size() == 1) return terms.front().second;
    return lincomb(terms);
  }

  bool coefficient_start() const {
    switch (ts_.peek().kind) {
      case Tok::Int:
      case Tok::Real:
        return true;
      case Tok::LParen:
        return ts_.at(Tok::Int, 1) || ts_.at(Tok::Real, 1) || ts_.at(Tok::Minus, 1) || ts_.at_word("sqrt", 1);
      default:
        return ts_.at_word("sqrt") || ts_.at_word("pi");
    }
  }

  double coefficient(const Bindings& b) {
    // Numbers, sqrt(..), pi, parentheses, * and /; stops before "* <term>".
    const SourcePos pos = ts_.peek().pos;
    Complex c = coeff_atom(b);
    for (;;) {
      if (ts_.at(Tok::Star) && next_is_coeff(1)) {
        ts_.next();
        c *= coeff_atom(b);
      } else if (ts_.at(Tok::Slash)) {
        ts_.next();
        Complex d = coeff_atom(b);
        if (std::abs(d) == 0.0) throw ParseError(pos, "division by zero");
        c /= d;
      } else {
        break;
      }
    }
    if (std::abs(c.imag()) > 1e-12) throw ParseError(pos, "assertion coefficients must be real");
    return c.real();
  }

  bool next_is_coeff(std::size_t ahead) const {
    const Tok k = ts_.peek(ahead).kind;
    if (k == Tok::Int || k == Tok::Real) return true;
    if (k == Tok::LParen) return ts_.at(Tok::Int, ahead + 1) || ts_.at(Tok::Real, ahead + 1);
    return ts_.at_word("sqrt", ahead) || ts_.at_word("pi", ahead);
  }

  Complex coeff_atom(const Bindings& b) {
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      QParser q(ts_, ctx_.params, b);
      Complex c = q.scalar_value();
      ts_.expect(Tok::RParen, "')'");
      return c;
    }
    if (ts_.at_word("sqrt")) {
      ts_.next();
      ts_.expect(Tok::LParen, "'('");
      QParser q(ts_, ctx_.params, b);
      Complex c = std::sqrt(q.scalar_value());
      ts_.expect(Tok::RParen, "')'");
      return c;
    }
    if (ts_.accept_word("pi")) return {M_PI, 0.0};
    const Token t = ts_.next();
    if (t.kind != Tok::Int && t.kind != Tok::Real) throw ParseError(t.pos, "expected a coefficient");
    return {t.real_value, 0.0};
  }

  CqAssertion aterm(const Bindings& b) {
    if (ts_.accept(Tok::Minus)) return lincomb({{-1.0, aterm(b)}});
    if (coefficient_start()) {
      const double c = coefficient(b);
      ts_.expect(Tok::Star, "'*' after coefficient");
      return lincomb({{c, aterm(b)}});
    }
    return aunit(b);
  }

  ExprPtr guard(const Bindings& b) {
    const SourcePos pos = ts_.peek().pos;
    ExprPtr g = parse_expr_tokens(ts_);
    std::map<std::string, ExprPtr> s;
    for (const auto& [k, v] : b) s[k] = int_lit(v);
    for (const auto& [k, v] : preds_) {
      if (!b.count(k)) s[k] = v;
    }
    g = simplify(substitute(g, s));
    if (!env_.empty()) {
      try {
        expect_type(g, env_, Type::Bool, "assertion guard");
      } catch (const TypeError& e) {
        throw ParseError(pos, e.what());
      }
    }
    return g;
  }

  QVarList register_names(const QVarList& universe) {
    QVarList out;
    do {
      const Token t = ts_.peek();
      const std::string n = ts_.expect_ident("quantum variable");
      const int k = index_of(universe, n);
      if (k < 0) throw ParseError(t.pos, "undeclared quantum variable '" + n + "'");
      if (contains(out, n)) throw ParseError(t.pos, "repeated quantum variable '" + n + "'");
      out.push_back(universe[static_cast<std::size_t>(k)]);
    } while (ts_.accept(Tok::Comma));
    return out;
  }

  CqAssertion aunit(const Bindings& b) {
    const Token t = ts_.peek();
    if (ts_.accept(Tok::LParen)) {
      CqAssertion a = aexpr(b);
      ts_.expect(Tok::RParen, "closing parenthesis");
      return a;
    }
    if (ts_.accept(Tok::Lt)) {
      ExprPtr g = guard(b);
      ts_.expect(Tok::Bar, "'|' after guard");
      const SourcePos qpos = ts_.peek().pos;
      QParser q(ts_, ctx_.params, b);
      QValue v = q.sum();
      ts_.expect(Tok::Gt, "'>' closing the clause");
      QVarList sub = reg_;
      if (ts_.accept_word("on")) sub = register_names(reg_);
      const std::size_t d = total_dim(sub);
      CMatrix obs;
      switch (v.kind) {
        case QValue::Scalar:
          obs = v.value(0, 0) * identity(d);
          break;
        case QValue::Ket:
          obs = projector(v.value.col(0));
          break;
        case QValue::Op:
          obs = v.value;
          break;
      }
      if (static_cast<std::size_t>(obs.rows()) != d) {
        throw ParseError(qpos, "clause has dimension " + std::to_string(obs.rows()) + " but register " +
                                   to_string(sub) + " has dimension " + std::to_string(d));
      }
      if (!is_hermitian(obs)) throw ParseError(qpos, "clause observable is not Hermitian");
      return pad(atom(g, obs, sub), reg_);
    }
    if (ts_.accept(Tok::LBracket)) {
      ExprPtr g = guard(b);
      ts_.expect(Tok::RBracket, "']'");
      if (ts_.accept_word("and")) return conj(g, aterm(b));
      if (ts_.accept_word("or")) return disj(g, aterm(b));
      ts_.fail("expected 'and' or 'or' after [guard]");
    }
    if (ts_.accept_word("top")) return top(reg_);
    if (ts_.accept_word("bot")) return bot(reg_);
    if (ts_.accept_word("sum")) return sum(b);
    if (t.kind == Tok::Ident) {
      auto it = known_.find(t.text);
      if (it == known_.end()) throw ParseError(t.pos, "unknown assertion '" + t.text + "'");
      ts_.next();
      if (!is_subset(it->second.qvars, reg_)) {
        throw ParseError(t.pos, "assertion '" + t.text + "' lives on " + to_string(it->second.qvars) +
                                    ", outside " + to_string(reg_));
      }
      return pad(it->second, reg_);
    }
    ts_.fail("expected an assertion, found '" + t.text + "'");
  }

  CqAssertion sum(const Bindings& outer) {
    ts_.accept_word("over");
    struct Range {
      std::string var;
      std::int64_t lo, hi;
    };
    std::vector<Range> ranges;
    do {
      Range r;
      r.var = ts_.expect_ident("index variable");
      ts_.expect_word("in");
      r.lo = int_lit_token();
      ts_.expect(Tok::DotDot, "'..'");
      r.hi = int_lit_token();
      if (r.hi < r.lo) ts_.fail("empty index range");
      ranges.push_back(r);
    } while (ts_.accept(Tok::Comma));
    ts_.expect_word("of");
    const std::size_t body = ts_.position();
    std::vector<std::pair<double, CqAssertion>> terms;
    Bindings b = outer;
    std::size_t end = body;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == ranges.size()) {
        ts_.rewind(body);
        terms.push_back({1.0, aterm(b)});
        end = ts_.position();
        return;
      }
      for (std::int64_t v = ranges[k].lo; v <= ranges[k].hi; ++v) {
        b[ranges[k].var] = v;
        rec(k + 1);
      }
    };
    rec(0);
    ts_.rewind(end);
    return simplify(lincomb(terms));
  }

  std::int64_t int_lit_token() {
    const bool neg = ts_.accept(Tok::Minus);
    const Token t = ts_.expect(Tok::Int, "integer");
    return neg ? -t.int_value : t.int_value;
  }

  TokenStream& ts_;
  const AssertionContext& ctx_;
  const VarEnv& env_;
  const std::map<std::string, ExprPtr>& preds_;
  const std::map<std::string, CqAssertion>& known_;
  QVarList reg_;
};

void declare_qvars(TokenStream& ts, QVarList& qvars, bool qudit) {
  std::vector<Token> names;
  do {
    names.push_back(ts.peek());
    ts.expect_ident("quantum variable");
  } while (ts.accept(Tok::Comma));
  int dim = 2;
  if (qudit) {
    ts.expect(Tok::Colon, "':' and a dimension");
    const Token d = ts.expect(Tok::Int, "dimension");
    if (d.int_value < 2 || d.int_value > 64) throw ParseError(d.pos, "qudit dimension must be in 2..64");
    dim = static_cast<int>(d.int_value);
  }
  ts.expect(Tok::Semi, "';'");
  for (const auto& n : names) {
    if (contains(qvars, n.text)) throw ParseError(n.pos, "quantum variable '" + n.text + "' declared twice");
    qvars.push_back({n.text, dim});
  }
}

void declare_vars(TokenStream& ts, VarEnv& env) {
  std::vector<std::string> names;
  do {
    names.push_back(ts.expect_ident("variable"));
  } while (ts.accept(Tok::Comma));
  ts.expect(Tok::Colon, "':' and a type");
  Type ty = Type::Int;
  if (ts.accept_word("bool")) {
    ty = Type::Bool;
  } else {
    ts.expect_word("int");
  }
  ts.expect(Tok::Semi, "';'");
  for (const auto& n : names) env[n] = ty;
}

ParamDecl declare_param(TokenStream& ts) {
  ParamDecl p;
  const Token t = ts.peek();
  p.name = ts.expect_ident("parameter name");
  if (kQWords.count(p.name) || is_builtin_gate(p.name)) throw ParseError(t.pos, "'" + p.name + "' is reserved");
  ts.expect(Tok::Colon, "':'");
  ts.expect_word("ket");
  ts.expect(Tok::LParen, "'('");
  const Token d = ts.expect(Tok::Int, "dimension");
  if (d.int_value < 1 || d.int_value > 4096) throw ParseError(d.pos, "bad parameter dimension");
  p.dim = static_cast<int>(d.int_value);
  ts.expect(Tok::RParen, "')'");
  ts.expect(Tok::Semi, "';'");
  return p;
}

}  // namespace

AssertionFile parse_assertion_file(std::string_view source, const AssertionContext& ctx) {
  TokenStream ts(tokenize(source));
  AssertionFile out;
  out.env = ctx.env;
  std::map<std::string, ExprPtr> preds = ctx.preds;
  AssertionContext local = ctx;
  while (!ts.at(Tok::End)) {
    const Token t = ts.peek();
    if (ts.accept_word("qubit")) {
      declare_qvars(ts, out.qvars, false);
    } else if (ts.accept_word("qudit")) {
      declare_qvars(ts, out.qvars, true);
    } else if (ts.accept_word("var")) {
      declare_vars(ts, out.env);
    } else if (ts.accept_word("param")) {
      ParamDecl p = declare_param(ts);
      auto it = ctx.params.find(p.name);
      if (it == ctx.params.end()) throw ParseError(t.pos, "no value supplied for parameter '" + p.name + "'");
      if (it->second.size() != p.dim) {
        throw ParseError(t.pos, "parameter '" + p.name + "' expects dimension " + std::to_string(p.dim) + ", got " +
                                    std::to_string(it->second.size()));
      }
      out.params.push_back(p);
    } else if (ts.accept_word("pred")) {
      const std::string name = ts.expect_ident("predicate name");
      ts.expect(Tok::Assign, "':='");
      ExprPtr e = parse_expr_tokens(ts);
      ts.expect(Tok::Semi, "';'");
      preds[name] = simplify(substitute(e, preds));
    } else if (ts.accept_word("assert")) {
      const std::string name = ts.expect_ident("assertion name");
      if (out.assertions.count(name)) throw ParseError(t.pos, "assertion '" + name + "' defined twice");
      const QVarList universe = out.qvars.empty() ? ctx.qvars : out.qvars;
      QVarList reg = universe;
      if (ts.accept_word("on")) {
        reg.clear();
        do {
          const Token q = ts.peek();
          const std::string n = ts.expect_ident("quantum variable");
          const int k = index_of(universe, n);
          if (k < 0) throw ParseError(q.pos, "undeclared quantum variable '" + n + "'");
          reg.push_back(universe[static_cast<std::size_t>(k)]);
        } while (ts.accept(Tok::Comma));
      }
      ts.expect(Tok::Assign, "':='");
      AParser ap(ts, local, out.env, preds, out.assertions);
      CqAssertion a = simplify(ap.parse(reg));
      ts.expect(Tok::Semi, "';'");
      out.assertions.emplace(name, std::move(a));
      out.order.push_back(name);
    } else {
      ts.fail("expected a declaration, found '" + t.text + "'");
    }
  }
  return out;
}

std::vector<ParamDecl> declared_params(std::string_view source) {
  TokenStream ts(tokenize(source));
  std::vector<ParamDecl> out;
  while (!ts.at(Tok::End)) {
    if (ts.accept_word("param")) {
      out.push_back(declare_param(ts));
    } else {
      ts.next();
    }
  }
  return out;
}

CqAssertion parse_assertion_expr(std::string_view source, const QVarList& qvars, const AssertionContext& ctx,
                                 const std::map<std::string, CqAssertion>& known) {
  TokenStream ts(tokenize(source));
  AParser ap(ts, ctx, ctx.env, ctx.preds, known);
  CqAssertion a = simplify(ap.parse(qvars));
  ts.accept(Tok::Semi);
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after assertion");
  return a;
}

QValue parse_qvalue(std::string_view source, const std::map<std::string, CVector>& params) {
  TokenStream ts(tokenize(source));
  Bindings none;
  QParser q(ts, params, none);
  QValue v = q.sum();
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "'");
  return v;
}

}  // namespace dqhl
