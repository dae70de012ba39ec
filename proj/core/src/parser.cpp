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

#include "dqhl/parser.hpp"

#include <cmath>
#include <set>

#include "dqhl/gates.hpp"

namespace dqhl {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "skip", "abort", "if", "fi", "do", "od", "meas", "var", "qubit", "qudit", "unitary",
      "measurement", "process", "channels", "channel", "true", "false", "not", "and", "or",
      "mod", "xor", "int", "bool"};
  return kw;
}

// ---- expressions ----------------------------------------------------------

ExprPtr or_expr(TokenStream& ts);

ExprPtr atom(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == Tok::Int) {
    ts.next();
    return int_lit(t.int_value);
  }
  if (ts.accept_word("true")) return bool_lit(true);
  if (ts.accept_word("false")) return bool_lit(false);
  if (ts.accept(Tok::LParen)) {
    ExprPtr e = or_expr(ts);
    ts.expect(Tok::RParen, "closing parenthesis");
    return e;
  }
  if (t.kind == Tok::Ident && !keywords().count(t.text)) {
    ts.next();
    return var_ref(t.text);
  }
  ts.fail("expected an expression, found " + (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"));
}

ExprPtr unary_expr(TokenStream& ts) {
  if (ts.accept(Tok::Minus)) return unary(Op::Neg, unary_expr(ts));
  return atom(ts);
}

ExprPtr mul_expr(TokenStream& ts) {
  ExprPtr e = unary_expr(ts);
  for (;;) {
    if (ts.accept(Tok::Star)) {
      e = binary(Op::Mul, e, unary_expr(ts));
    } else if (ts.accept_word("mod")) {
      e = binary(Op::Mod, e, unary_expr(ts));
    } else {
      return e;
    }
  }
}

ExprPtr add_expr(TokenStream& ts) {
  ExprPtr e = mul_expr(ts);
  for (;;) {
    if (ts.accept(Tok::Plus)) {
      e = binary(Op::Add, e, mul_expr(ts));
    } else if (ts.accept(Tok::Minus)) {
      e = binary(Op::Sub, e, mul_expr(ts));
    } else if (ts.accept_word("xor")) {
      e = binary(Op::Xor, e, mul_expr(ts));
    } else {
      return e;
    }
  }
}

ExprPtr cmp_expr(TokenStream& ts) {
  ExprPtr e = add_expr(ts);
  Op op;
  switch (ts.peek().kind) {
    case Tok::Eq: op = Op::Eq; break;
    case Tok::Ne: op = Op::Ne; break;
    case Tok::Lt: op = Op::Lt; break;
    case Tok::Le: op = Op::Le; break;
    case Tok::Gt: op = Op::Gt; break;
    case Tok::Ge: op = Op::Ge; break;
    default: return e;
  }
  ts.next();
  return binary(op, e, add_expr(ts));
}

ExprPtr not_expr(TokenStream& ts) {
  if (ts.accept_word("not")) return unary(Op::Not, not_expr(ts));
  return cmp_expr(ts);
}

ExprPtr and_expr(TokenStream& ts) {
  ExprPtr e = not_expr(ts);
  while (ts.accept_word("and")) e = binary(Op::And, e, not_expr(ts));
  return e;
}

ExprPtr or_expr(TokenStream& ts) {
  ExprPtr e = and_expr(ts);
  while (ts.accept_word("or")) e = binary(Op::Or, e, and_expr(ts));
  return e;
}

// ---- scalars ----------------------------------------------------------------

Complex scalar_sum(TokenStream& ts);

Complex scalar_primary(TokenStream& ts) {
  const Token t = ts.peek();
  switch (t.kind) {
    case Tok::Int:
    case Tok::Real:
      ts.next();
      return {t.real_value, 0.0};
    case Tok::Imag:
      ts.next();
      return {0.0, t.real_value};
    case Tok::LParen: {
      ts.next();
      Complex c = scalar_sum(ts);
      ts.expect(Tok::RParen, "closing parenthesis");
      return c;
    }
    default:
      break;
  }
  if (ts.accept_word("i")) return {0.0, 1.0};
  if (ts.accept_word("pi")) return {M_PI, 0.0};
  if (ts.at_word("sqrt") || ts.at_word("exp")) {
    const bool is_sqrt = ts.next().text == "sqrt";
    ts.expect(Tok::LParen, "'(' after function name");
    Complex c = scalar_sum(ts);
    ts.expect(Tok::RParen, "closing parenthesis");
    return is_sqrt ? std::sqrt(c) : std::exp(c);
  }
  ts.fail("expected a number, found '" + t.text + "'");
}

Complex scalar_factor(TokenStream& ts) {
  if (ts.accept(Tok::Minus)) return -scalar_factor(ts);
  if (ts.accept(Tok::Plus)) return scalar_factor(ts);
  return scalar_primary(ts);
}

Complex scalar_term(TokenStream& ts) {
  Complex c = scalar_factor(ts);
  for (;;) {
    if (ts.accept(Tok::Star)) {
      c *= scalar_factor(ts);
    } else if (ts.at(Tok::Slash)) {
      const SourcePos pos = ts.next().pos;
      Complex d = scalar_factor(ts);
      if (std::abs(d) == 0.0) throw ParseError(pos, "division by zero");
      c /= d;
    } else {
      return c;
    }
  }
}

Complex scalar_sum(TokenStream& ts) {
  Complex c = scalar_term(ts);
  for (;;) {
    if (ts.accept(Tok::Plus)) {
      c += scalar_term(ts);
    } else if (ts.accept(Tok::Minus)) {
      c -= scalar_term(ts);
    } else {
      return c;
    }
  }
}

Rational decimal_to_rational(const std::string& text, const SourcePos& pos) {
  std::int64_t num = 0, den = 1;
  std::size_t k = 0;
  int exp10 = 0;
  bool frac = false;
  for (; k < text.size() && text[k] != 'e' && text[k] != 'E'; ++k) {
    if (text[k] == '.') {
      frac = true;
      continue;
    }
    if (num > (INT64_MAX - 9) / 10) throw ParseError(pos, "probability literal too long: " + text);
    num = num * 10 + (text[k] - '0');
    if (frac) --exp10;
  }
  if (k < text.size()) exp10 += std::stoi(text.substr(k + 1));
  for (; exp10 < 0; ++exp10) {
    if (den > INT64_MAX / 10) throw ParseError(pos, "probability literal too long: " + text);
    den *= 10;
  }
  for (; exp10 > 0; --exp10) {
    if (num > INT64_MAX / 10) throw ParseError(pos, "probability literal too large: " + text);
    num *= 10;
  }
  return Rational(num, den);
}

// ---- programs -----------------------------------------------------------------

bool at_terminator(const TokenStream& ts) {
  return ts.at(Tok::Box) || ts.at(Tok::RBrace) || ts.at(Tok::End) || ts.at_word("od") || ts.at_word("fi");
}

class ProgramParser {
 public:
  explicit ProgramParser(TokenStream& ts) : ts_(ts) {}

  DistProgram program() {
    DistProgram prog;
    while (ts_.at_word("channels") || ts_.at_word("channel")) {
      ts_.next();
      do {
        const SourcePos pos = ts_.peek().pos;
        std::string c = ts_.expect_ident("channel name");
        check_fresh_name(c, pos);
        if (!channels_.insert(c).second) throw ParseError(pos, "duplicate channel '" + c + "'");
        prog.channels.push_back(c);
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::Semi, "';' after channel list");
    }
    std::set<std::string> names;
    while (ts_.at_word("process")) {
      Process p = process();
      if (!names.insert(p.name).second) throw ParseError(p.pos, "duplicate process '" + p.name + "'");
      prog.processes.push_back(std::move(p));
    }
    if (!ts_.at(Tok::End)) ts_.fail("expected 'process', found '" + ts_.peek().text + "'");
    if (prog.processes.empty()) ts_.fail("a program needs at least one process");
    return prog;
  }

  StmtPtr fragment(const Process& scope) {
    proc_ = scope;
    env_ = scope.env();
    for (const auto& q : scope.qvars) declared_.insert(q.name);
    for (const auto& v : scope.vars) declared_.insert(v.first);
    StmtPtr s = stmt_seq();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected '" + ts_.peek().text + "' after statement");
    return s;
  }

 private:
  void check_fresh_name(const std::string& name, const SourcePos& pos) {
    if (keywords().count(name)) throw ParseError(pos, "'" + name + "' is a reserved word");
  }

  void declare(const std::string& name, const SourcePos& pos) {
    check_fresh_name(name, pos);
    if (!declared_.insert(name).second) throw ParseError(pos, "duplicate declaration of '" + name + "'");
  }

  Process process() {
    proc_ = Process{};
    env_.clear();
    declared_.clear();
    ts_.expect_word("process");
    proc_.pos = ts_.peek().pos;
    proc_.name = ts_.expect_ident("process name");
    ts_.expect(Tok::LBrace, "'{' to open the process body");
    while (declaration()) {
    }
    std::vector<StmtPtr> init;
    while (!ts_.at(Tok::RBrace)) {
      if (ts_.at_word("do")) {
        const SourcePos pos = ts_.peek().pos;
        ts_.next();
        bool io = false;
        std::vector<GuardedCmd> plain;
        std::vector<LoopBranch> loop;
        do {
          LoopBranch b = branch(true);
          if (b.io.channel.empty()) {
            if (io) throw ParseError(pos, "a process loop mixes branches with and without i/o commands");
            plain.push_back({b.guard, b.body});
          } else {
            if (!plain.empty()) throw ParseError(pos, "a process loop mixes branches with and without i/o commands");
            io = true;
            loop.push_back(std::move(b));
          }
        } while (ts_.accept(Tok::Box));
        ts_.expect_word("od");
        if (io) {
          proc_.loop = std::move(loop);
          ts_.accept(Tok::Semi);
          if (!ts_.at(Tok::RBrace)) ts_.fail("the communication loop must be the last statement of a process");
          break;
        }
        init.push_back(located(mk_rep(std::move(plain)), pos));
      } else {
        init.push_back(statement());
      }
      if (!ts_.accept(Tok::Semi) && !ts_.at(Tok::RBrace)) {
        ts_.fail("expected ';' or '}', found '" + ts_.peek().text + "'");
      }
    }
    ts_.expect(Tok::RBrace, "'}' to close the process body");
    proc_.init = init.empty() ? mk_skip() : mk_seq(init);
    return std::move(proc_);
  }

  bool declaration() {
    const SourcePos pos = ts_.peek().pos;
    if (ts_.accept_word("var")) {
      std::vector<std::pair<std::string, SourcePos>> names;
      do {
        const SourcePos p = ts_.peek().pos;
        names.emplace_back(ts_.expect_ident("variable name"), p);
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::Colon, "':' before the type");
      Type t;
      if (ts_.accept_word("int")) {
        t = Type::Int;
      } else if (ts_.accept_word("bool")) {
        t = Type::Bool;
      } else {
        ts_.fail("expected 'int' or 'bool'");
      }
      for (const auto& [n, p] : names) {
        declare(n, p);
        proc_.vars.emplace_back(n, t);
        env_[n] = t;
      }
    } else if (ts_.accept_word("qubit")) {
      do {
        const SourcePos p = ts_.peek().pos;
        std::string n = ts_.expect_ident("qubit name");
        declare(n, p);
        proc_.qvars.push_back({n, 2});
      } while (ts_.accept(Tok::Comma));
    } else if (ts_.accept_word("qudit")) {
      std::vector<std::pair<std::string, SourcePos>> names;
      do {
        const SourcePos p = ts_.peek().pos;
        names.emplace_back(ts_.expect_ident("qudit name"), p);
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::Colon, "':' before the qudit dimension");
      const Token& d = ts_.expect(Tok::Int, "qudit dimension");
      if (d.int_value < 2 || d.int_value > 64) throw ParseError(d.pos, "qudit dimension must be between 2 and 64");
      for (const auto& [n, p] : names) {
        declare(n, p);
        proc_.qvars.push_back({n, static_cast<int>(d.int_value)});
      }
    } else if (ts_.accept_word("unitary")) {
      std::string n = ts_.expect_ident("unitary name");
      declare(n, pos);
      ts_.expect(Tok::Eq, "'='");
      const SourcePos mp = ts_.peek().pos;
      CMatrix u = parse_matrix_literal(ts_);
      if (!is_unitary(u)) throw ParseError(mp, "matrix of '" + n + "' is not unitary");
      proc_.gates.push_back({n, u});
    } else if (ts_.accept_word("measurement")) {
      std::string n = ts_.expect_ident("measurement name");
      declare(n, pos);
      ts_.expect(Tok::Eq, "'='");
      ts_.expect(Tok::LBrace, "'{' to open the Kraus list");
      const SourcePos mp = ts_.peek().pos;
      std::vector<CMatrix> kraus;
      do {
        kraus.push_back(parse_matrix_literal(ts_));
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::RBrace, "'}' to close the Kraus list");
      for (const auto& m : kraus) {
        if (m.rows() != kraus.front().rows()) throw ParseError(mp, "Kraus operators of '" + n + "' differ in size");
      }
      const CMatrix c = kraus_completeness(kraus);
      if (max_abs_diff(c, identity(c.rows())) > kTol) {
        throw ParseError(mp, "Kraus operators of '" + n + "' do not satisfy the completeness equation");
      }
      proc_.measurements.push_back({n, kraus});
    } else {
      return false;
    }
    ts_.expect(Tok::Semi, "';' after declaration");
    return true;
  }

  static StmtPtr located(const StmtPtr& s, const SourcePos& pos) {
    auto c = std::make_shared<Stmt>(*s);
    c->pos = pos;
    return c;
  }

  ExprPtr checked_expr(std::optional<Type> want, const std::string& context, Type* got = nullptr) {
    const SourcePos pos = ts_.peek().pos;
    ExprPtr e = parse_expr_tokens(ts_);
    for (const auto& v : free_vars(e)) {
      if (!env_.count(v)) throw ParseError(pos, "undeclared variable '" + v + "' in " + context);
    }
    try {
      Type t = type_of(e, env_);
      if (want && t != *want) {
        throw ParseError(pos, context + " must have type " + type_name(*want) + ", found " + type_name(t));
      }
      if (got) *got = t;
    } catch (const TypeError& err) {
      throw ParseError(pos, err.what());
    }
    return e;
  }

  const QVar* find_qvar(const std::string& name) const {
    for (const auto& q : proc_.qvars) {
      if (q.name == name) return &q;
    }
    return nullptr;
  }

  bool is_channel(const std::string& name) const { return channels_.count(name) > 0; }

  QVarList qvar_list() {
    QVarList out;
    do {
      const SourcePos p = ts_.peek().pos;
      std::string n = ts_.expect_ident("quantum variable");
      const QVar* q = find_qvar(n);
      if (!q) throw ParseError(p, "undeclared quantum variable '" + n + "'");
      if (contains(out, n)) throw ParseError(p, "quantum variable '" + n + "' listed twice");
      out.push_back(*q);
    } while (ts_.accept(Tok::Comma));
    return out;
  }

  IoCommand io_command() {
    IoCommand io;
    const SourcePos p = ts_.peek().pos;
    io.channel = ts_.expect_ident("channel name");
    if (!is_channel(io.channel)) throw ParseError(p, "undeclared channel '" + io.channel + "'");
    if (ts_.accept(Tok::Bang)) {
      io.expr = checked_expr(std::nullopt, "output expression");
    } else {
      ts_.expect(Tok::Question, "'!' or '?' after channel name");
      const SourcePos vp = ts_.peek().pos;
      io.is_input = true;
      io.var = ts_.expect_ident("input variable");
      if (!env_.count(io.var)) throw ParseError(vp, "undeclared variable '" + io.var + "' in input command");
    }
    return io;
  }

  bool at_io() const {
    return ts_.at(Tok::Ident) && (ts_.at(Tok::Bang, 1) || ts_.at(Tok::Question, 1)) && is_channel(ts_.peek().text);
  }

  LoopBranch branch(bool allow_io) {
    LoopBranch b;
    const SourcePos pos = ts_.peek().pos;
    if (at_io()) {
      b.guard = bool_lit(true);
      b.io = io_command();
    } else {
      b.guard = checked_expr(Type::Bool, "guard");
      if (ts_.accept(Tok::Semi)) b.io = io_command();
    }
    if (!b.io.channel.empty() && !allow_io) {
      throw ParseError(pos, "i/o commands are only allowed in the communication loop of a process");
    }
    ts_.expect(Tok::Arrow, "'->' after guard");
    b.body = stmt_seq();
    return b;
  }

  std::vector<GuardedCmd> guarded_list(const char* close) {
    std::vector<GuardedCmd> out;
    do {
      LoopBranch b = branch(false);
      out.push_back({b.guard, b.body});
    } while (ts_.accept(Tok::Box));
    ts_.expect_word(close);
    return out;
  }

  StmtPtr stmt_seq() {
    std::vector<StmtPtr> parts{statement()};
    while (ts_.accept(Tok::Semi)) {
      if (at_terminator(ts_)) break;
      parts.push_back(statement());
    }
    return mk_seq(parts);
  }

  StmtPtr statement() {
    const SourcePos pos = ts_.peek().pos;
    if (ts_.accept_word("skip")) return located(mk_skip(), pos);
    if (ts_.accept_word("abort")) return located(mk_abort(), pos);
    if (ts_.accept_word("if")) return located(mk_alt(guarded_list("fi")), pos);
    if (ts_.accept_word("do")) return located(mk_rep(guarded_list("od")), pos);
    if (!ts_.at(Tok::Ident)) ts_.fail("expected a statement, found '" + ts_.peek().text + "'");
    const std::string name = ts_.peek().text;

    if (find_qvar(name) && (ts_.at(Tok::Comma, 1) || ts_.at(Tok::StarEq, 1))) {
      QVarList qs = qvar_list();
      ts_.expect(Tok::StarEq, "'*='");
      return located(unitary_target(qs), pos);
    }
    if (const QVar* q = find_qvar(name); q && ts_.at(Tok::Assign, 1)) {
      ts_.next();
      ts_.next();
      const Token& z = ts_.expect(Tok::Int, "'0' (quantum variables can only be reset)");
      if (z.int_value != 0) throw ParseError(z.pos, "quantum variables can only be reset to 0");
      return located(mk_init(*q), pos);
    }
    if (ts_.at(Tok::Assign, 1) || ts_.at(Tok::RandAssign, 1)) {
      if (!env_.count(name)) throw ParseError(pos, "undeclared variable '" + name + "'");
      const Type t = env_.at(name);
      ts_.next();
      if (ts_.next().kind == Tok::RandAssign) return located(rand_assign(name, t), pos);
      if (ts_.accept_word("meas")) {
        if (t != Type::Int) throw ParseError(pos, "measurement outcome variable '" + name + "' must be int");
        return located(measurement(name), pos);
      }
      ExprPtr e = checked_expr(t, "right-hand side of '" + name + " :='");
      return located(mk_assign(name, e), pos);
    }
    if (find_qvar(name) || env_.count(name)) ts_.fail("expected ':=' or '*=' after '" + name + "'");
    throw ParseError(pos, "undeclared variable '" + name + "'");
  }

  StmtPtr unitary_target(const QVarList& qs) {
    const SourcePos pos = ts_.peek().pos;
    std::string gname;
    CMatrix u;
    if (ts_.at(Tok::LBracket)) {
      u = parse_matrix_literal(ts_);
      if (!is_unitary(u)) throw ParseError(pos, "inline matrix is not unitary");
    } else {
      gname = ts_.expect_ident("gate name");
      bool found = false;
      for (const auto& g : proc_.gates) {
        if (g.name == gname) {
          u = g.matrix;
          found = true;
        }
      }
      if (!found) {
        auto b = builtin_gate(gname);
        if (!b) throw ParseError(pos, "unknown unitary '" + gname + "'");
        u = *b;
      }
    }
    if (static_cast<std::size_t>(u.rows()) != total_dim(qs)) {
      throw ParseError(pos, "unitary of dimension " + std::to_string(u.rows()) + " applied to " + to_string(qs) +
                                " of dimension " + std::to_string(total_dim(qs)));
    }
    return mk_unitary(gname, u, qs);
  }

  StmtPtr measurement(const std::string& x) {
    const SourcePos pos = ts_.peek().pos;
    std::string mname;
    std::vector<CMatrix> kraus;
    QVarList qs;
    if (ts_.accept(Tok::LBrace)) {
      do {
        kraus.push_back(parse_matrix_literal(ts_));
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::RBrace, "'}' to close the Kraus list");
      for (const auto& m : kraus) {
        if (m.rows() != kraus.front().rows()) throw ParseError(pos, "Kraus operators differ in size");
      }
      const CMatrix c = kraus_completeness(kraus);
      if (max_abs_diff(c, identity(c.rows())) > kTol) {
        throw ParseError(pos, "inline Kraus operators do not satisfy the completeness equation");
      }
      const bool br = ts_.accept(Tok::LBracket);
      qs = qvar_list();
      if (br) ts_.expect(Tok::RBracket, "']'");
    } else if (ts_.at(Tok::Ident) && !find_qvar(ts_.peek().text)) {
      mname = ts_.next().text;
      bool found = false;
      for (const auto& m : proc_.measurements) {
        if (m.name == mname) {
          kraus = m.kraus;
          found = true;
        }
      }
      if (!found) throw ParseError(pos, "unknown measurement '" + mname + "'");
      if (ts_.accept(Tok::LBracket)) {
        qs = qvar_list();
        ts_.expect(Tok::RBracket, "']'");
      } else {
        qs = qvar_list();
      }
    } else {
      qs = qvar_list();
      kraus = computational_measurement(total_dim(qs));
    }
    if (static_cast<std::size_t>(kraus.front().rows()) != total_dim(qs)) {
      throw ParseError(pos, "measurement '" + mname + "' has dimension " + std::to_string(kraus.front().rows()) +
                                " but " + to_string(qs) + " has dimension " + std::to_string(total_dim(qs)));
    }
    return mk_measure(x, mname, kraus, qs);
  }

  StmtPtr rand_assign(const std::string& x, Type t) {
    const SourcePos pos = ts_.peek().pos;
    ts_.expect(Tok::LBrace, "'{' to open the distribution");
    std::vector<std::pair<std::int64_t, Rational>> dist;
    Rational total(0);
    do {
      const SourcePos vp = ts_.peek().pos;
      std::int64_t v;
      if (ts_.accept_word("true")) {
        v = 1;
      } else if (ts_.accept_word("false")) {
        v = 0;
      } else {
        const bool neg = ts_.accept(Tok::Minus);
        v = ts_.expect(Tok::Int, "support value").int_value;
        if (neg) v = -v;
      }
      if (t == Type::Bool && v != 0 && v != 1) throw ParseError(vp, "boolean variable '" + x + "' cannot take value " + std::to_string(v));
      for (const auto& [w, p] : dist) {
        if (w == v) throw ParseError(vp, "value " + std::to_string(v) + " listed twice");
      }
      ts_.expect(Tok::Colon, "':' after support value");
      const SourcePos pp = ts_.peek().pos;
      Rational p = parse_rational(ts_);
      if (p.numerator() <= 0) throw ParseError(pp, "probabilities must be positive");
      total += p;
      dist.emplace_back(v, p);
    } while (ts_.accept(Tok::Comma));
    ts_.expect(Tok::RBrace, "'}' to close the distribution");
    if (total != Rational(1)) {
      throw ParseError(pos, "probabilities sum to " + std::to_string(total.numerator()) + "/" +
                                std::to_string(total.denominator()) + ", not 1");
    }
    return mk_rand_assign(x, dist);
  }

  TokenStream& ts_;
  Process proc_;
  VarEnv env_;
  std::set<std::string> declared_;
  std::set<std::string> channels_;
};

}  // namespace

ExprPtr parse_expr_tokens(TokenStream& ts) { return or_expr(ts); }

Complex parse_scalar(TokenStream& ts) { return scalar_sum(ts); }

CMatrix parse_matrix_literal(TokenStream& ts) {
  const SourcePos pos = ts.peek().pos;
  ts.expect(Tok::LBracket, "'[' to open a matrix");
  std::vector<std::vector<Complex>> rows;
  do {
    ts.expect(Tok::LBracket, "'[' to open a matrix row");
    std::vector<Complex> row;
    do {
      row.push_back(parse_scalar(ts));
    } while (ts.accept(Tok::Comma));
    ts.expect(Tok::RBracket, "']' to close a matrix row");
    rows.push_back(std::move(row));
  } while (ts.accept(Tok::Comma));
  ts.expect(Tok::RBracket, "']' to close a matrix");
  const std::size_t n = rows.size();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw ParseError(pos, "matrix literal must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Rational parse_rational(TokenStream& ts) {
  const bool neg = ts.accept(Tok::Minus);
  const Token t = ts.next();
  Rational r;
  if (t.kind == Tok::Int) {
    r = Rational(t.int_value);
    if (ts.accept(Tok::Slash)) {
      const Token& d = ts.expect(Tok::Int, "denominator");
      if (d.int_value == 0) throw ParseError(d.pos, "zero denominator");
      r /= Rational(d.int_value);
    }
  } else if (t.kind == Tok::Real) {
    r = decimal_to_rational(t.text, t.pos);
  } else {
    throw ParseError(t.pos, "expected a rational number, found '" + t.text + "'");
  }
  return neg ? -r : r;
}

DistProgram parse_program(std::string_view source) {
  TokenStream ts(tokenize(source));
  return ProgramParser(ts).program();
}

StmtPtr parse_statement(std::string_view source, const Process& scope) {
  TokenStream ts(tokenize(source));
  return ProgramParser(ts).fragment(scope);
}

ExprPtr parse_expr(std::string_view source, const VarEnv& env) {
  TokenStream ts(tokenize(source));
  const SourcePos pos = ts.peek().pos;
  ExprPtr e = parse_expr_tokens(ts);
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after expression");
  for (const auto& v : free_vars(e)) {
    if (!env.count(v)) throw ParseError(pos, "undeclared variable '" + v + "'");
  }
  try {
    type_of(e, env);
  } catch (const TypeError& err) {
    throw ParseError(pos, err.what());
  }
  return e;
}

}  // namespace dqhl
