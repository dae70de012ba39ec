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

#include "dqhl/proof_script.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "dqhl/assertion_parser.hpp"
#include "dqhl/classical_state.hpp"
#include "dqhl/parser.hpp"
#include "dqhl/sampling.hpp"
#include "dqhl/seqtransform.hpp"
#include "dqhl/wp.hpp"

namespace dqhl {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScriptError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RawStmt {
  std::string text;
  int line = 1;
};

// Splits at top-level ';', dropping comments.
std::vector<RawStmt> split_statements(std::string_view src) {
  std::vector<RawStmt> out;
  std::string cur;
  int depth = 0, line = 1, start = 1;
  bool quote = false;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const char c = src[k];
    if (quote) {
      cur += c;
      if (c == '"') quote = false;
      if (c == '\n') ++line;
      continue;
    }
    if (c == '#' || (c == '/' && k + 1 < src.size() && src[k + 1] == '/')) {
      while (k < src.size() && src[k] != '\n') ++k;
      if (k < src.size()) {
        ++line;
        cur += ' ';
      }
      continue;
    }
    if (c == '\n') ++line;
    if (trim(cur).empty()) start = line;
    if (c == '"') quote = true;
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ';' && depth == 0) {
      if (!trim(cur).empty()) out.push_back({trim(cur), start});
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (quote) throw ScriptError("unterminated string");
  if (!trim(cur).empty()) throw ScriptError("line " + std::to_string(start) + ": missing ';'");
  return out;
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ScriptError("line " + std::to_string(line) + ": " + msg);
}

// Text of the brace block starting at pos (which must be '{'); pos moves
// past the closing brace.
std::string brace_block(const std::string& s, std::size_t& pos, int line) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size() || s[pos] != '{') fail_at(line, "expected '{'");
  int depth = 0;
  bool quote = false;
  const std::size_t open = pos;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (quote) {
      if (c == '"') quote = false;
      continue;
    }
    if (c == '"') quote = true;
    if (c == '{') ++depth;
    if (c == '}' && --depth == 0) {
      ++pos;
      return trim(std::string_view(s).substr(open + 1, pos - open - 2));
    }
  }
  fail_at(line, "unbalanced '{'");
}

// Program slot: everything up to the next top-level '{'.
std::string prog_slot(const std::string& s, std::size_t& pos, int line) {
  const std::size_t start = pos;
  int depth = 0;
  bool quote = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (quote) {
      if (c == '"') quote = false;
      continue;
    }
    if (c == '"') quote = true;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '{' && depth == 0) return trim(std::string_view(s).substr(start, pos - start));
  }
  fail_at(line, "expected '{' after the program");
}

std::string unquote(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') fail_at(line, "expected a quoted string, got '" + s + "'");
  return s.substr(1, s.size() - 2);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!trim(part).empty()) out.push_back(trim(part));
  }
  return out;
}

// "key := value" items; a comma only separates items when another key follows.
std::vector<std::pair<std::string, std::string>> split_with(const std::string& s, int line) {
  static const std::regex key(R"(^\s*(t|p|z|rank)\s*:=)");
  static const std::regex sep(R"(,\s*(t|p|z|rank)\s*:=)");
  std::vector<std::size_t> starts;
  std::smatch m;
  if (!std::regex_search(s, m, key)) fail_at(line, "expected 't :=', 'p :=', 'z :=' or 'rank :='");
  starts.push_back(0);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), sep); it != std::sregex_iterator(); ++it) {
    starts.push_back(static_cast<std::size_t>(it->position()) + 1);
  }
  starts.push_back(s.size() + 1);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
    const std::string item = s.substr(starts[k], starts[k + 1] - 1 - starts[k]);
    const auto eq = item.find(":=");
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 2)));
  }
  return out;
}

std::size_t find_word(const std::string& s, const std::string& w, std::size_t from = 0) {
  int depth = 0;
  for (std::size_t k = from; k + w.size() <= s.size(); ++k) {
    const char c = s[k];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth != 0 || s.compare(k, w.size(), w) != 0) continue;
    const bool left = k == 0 || std::isspace(static_cast<unsigned char>(s[k - 1]));
    const bool right = k + w.size() == s.size() || std::isspace(static_cast<unsigned char>(s[k + w.size()]));
    if (left && right) return k;
  }
  return std::string::npos;
}

StepSpec parse_step(const std::string& body, int line) {
  StepSpec st;
  st.line = line;
  const auto colon = body.find(':');
  if (colon == std::string::npos) fail_at(line, "expected 'step <label>: <rule> ...'");
  st.label = trim(body.substr(0, colon));
  if (st.label.empty() || st.label.find_first_of(" \t.{") != std::string::npos) fail_at(line, "bad step label");
  std::size_t pos = colon + 1;
  while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
  const std::size_t rs = pos;
  while (pos < body.size() && (std::isalnum(static_cast<unsigned char>(body[pos])) || body[pos] == '-')) ++pos;
  st.rule = body.substr(rs, pos - rs);
  if (st.rule.empty()) fail_at(line, "missing rule name");
  st.pre = brace_block(body, pos, line);
  st.prog = prog_slot(body, pos, line);
  st.post = brace_block(body, pos, line);
  std::string rest = trim(std::string_view(body).substr(pos));
  const auto w = find_word(rest, "with");
  std::string from_part = trim(rest.substr(0, w));
  if (w != std::string::npos) st.with = split_with(rest.substr(w + 4), line);
  if (!from_part.empty()) {
    if (from_part.rfind("from", 0) != 0) fail_at(line, "unexpected '" + from_part + "'");
    st.from = split_commas(from_part.substr(4));
  }
  return st;
}

}  // namespace

ProofScript parse_proof_script(std::string_view source) {
  ProofScript ps;
  std::set<std::string> labels;
  for (const auto& raw : split_statements(source)) {
    const std::string& t = raw.text;
    std::size_t sp = 0;
    while (sp < t.size() && !std::isspace(static_cast<unsigned char>(t[sp]))) ++sp;
    const std::string kw = t.substr(0, sp);
    const std::string rest = trim(std::string_view(t).substr(sp));
    if (kw == "program") {
      ps.program_path = unquote(rest, raw.line);
    } else if (kw == "assertions") {
      ps.assertions_path = unquote(rest, raw.line);
    } else if (kw == "mode") {
      if (rest == "total") {
        ps.mode = Mode::Total;
      } else if (rest == "partial") {
        ps.mode = Mode::Partial;
      } else {
        fail_at(raw.line, "mode is 'total' or 'partial'");
      }
    } else if (kw == "instances") {
      try {
        ps.instances = std::stoul(rest);
      } catch (const std::exception&) {
        fail_at(raw.line, "instances needs a count");
      }
    } else if (kw == "state") {
      const auto on = find_word(rest, "on");
      ps.states.emplace_back(trim(rest.substr(0, on)), on == std::string::npos ? "" : trim(rest.substr(on + 2)));
    } else if (kw == "assert") {
      const auto eq = rest.find(":=");
      if (eq == std::string::npos) fail_at(raw.line, "expected 'assert Name := ...'");
      ps.defs.emplace_back(trim(rest.substr(0, eq)), trim(rest.substr(eq + 2)));
    } else if (kw == "step") {
      StepSpec st = parse_step(rest, raw.line);
      if (!labels.insert(st.label).second) fail_at(raw.line, "duplicate step label '" + st.label + "'");
      ps.steps.push_back(std::move(st));
    } else if (kw == "claim") {
      std::size_t pos = 0;
      ClaimSpec c;
      c.pre = brace_block(rest, pos, raw.line);
      c.prog = prog_slot(rest, pos, raw.line);
      c.post = brace_block(rest, pos, raw.line);
      if (!trim(std::string_view(rest).substr(pos)).empty()) fail_at(raw.line, "trailing text after the claim");
      ps.claim = c;
    } else if (kw == "conclude") {
      if (!labels.count(rest)) fail_at(raw.line, "unknown step '" + rest + "'");
      ps.conclude = rest;
    } else {
      fail_at(raw.line, "unknown statement '" + kw + "'");
    }
  }
  if (ps.program_path.empty()) throw ScriptError("the script names no program");
  if (ps.conclude.empty() && !ps.steps.empty()) ps.conclude = ps.steps.back().label;
  return ps;
}

LoadedScript load_proof_script_text(std::string_view source, const std::string& dir) {
  LoadedScript ls;
  ls.script = parse_proof_script(source);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() || dir.empty() ? fp.string() : (std::filesystem::path(dir) / fp).string();
  };
  ls.program = parse_program(read_file(resolve(ls.script.program_path)));
  if (!ls.script.assertions_path.empty()) ls.assertion_source = read_file(resolve(ls.script.assertions_path));
  return ls;
}

LoadedScript load_proof_script(const std::string& path) {
  LoadedScript ls = load_proof_script_text(read_file(path), std::filesystem::path(path).parent_path().string());
  ls.path = path;
  return ls;
}

namespace {

// Everything that depends on one draw of the parameters.
struct Instance {
  std::map<std::string, CVector> params;
  AssertionContext ctx;
  QVarList reg;
  std::map<std::string, CqAssertion> known;
  std::vector<CqState> states;
};

class Runner {
 public:
  Runner(const LoadedScript& s, const ProofOptions& o) : ls_(s), opts_(o) {
    mode_ = s.script.mode.value_or(Mode::Total);
    const DistProgram& p = s.program;
    env_ = p.env();
    ClassicalState zero = complete_state({}, env_);
    samples_ = reachable_states(p, {zero});
    if (!p.is_sequential()) {
      const auto [term, block] = term_block(p);
      term_ = term;
      block_ = block;
    }
  }

  Mode mode() const { return mode_; }
  std::size_t sample_count() const { return samples_.size(); }

  Instance instance(std::size_t k) {
    Instance in;
    Rng rng = make_rng(opts_.seed, k);
    for (const auto& d : declared_params(ls_.assertion_source)) {
      in.params[d.name] = haar_ket(static_cast<std::size_t>(d.dim), rng);
    }
    in.ctx.params = in.params;
    in.ctx.qvars = ls_.program.qvars();
    in.ctx.env = env_;
    if (term_) {
      in.ctx.preds["TERM"] = term_;
      in.ctx.preds["BLOCK"] = block_;
    }
    in.reg = in.ctx.qvars;
    if (!ls_.assertion_source.empty()) {
      const AssertionFile f = parse_assertion_file(ls_.assertion_source, in.ctx);
      in.reg = union_of(in.reg, f.qvars);
      for (const auto& [n, t] : f.env) in.ctx.env.emplace(n, t);
      in.known = f.assertions;
    }
    for (const auto& [name, text] : ls_.script.defs) {
      in.known[name] = parse_assertion_expr(text, in.reg, in.ctx, in.known);
    }
    const ClassicalState zero = complete_state({}, env_);
    for (const auto& [text, on] : ls_.script.states) {
      QVarList qs;
      if (on.empty()) {
        qs = in.reg;
      } else {
        for (const auto& n : split_commas(on)) {
          auto it = std::find_if(in.reg.begin(), in.reg.end(), [&](const QVar& q) { return q.name == n; });
          if (it == in.reg.end()) throw ScriptError("state: unknown quantum variable '" + n + "'");
          qs.push_back(*it);
        }
      }
      in.states.push_back(single(zero, state_from_expr(text, qs, in.params), qs));
    }
    auto rand = random_test_states(in.reg, samples_, rng, opts_.random_states, opts_.mixed_states);
    in.states.insert(in.states.end(), rand.begin(), rand.end());
    return in;
  }

  CqAssertion assertion(const Instance& in, const std::string& text) const {
    static const std::regex ref(R"(^([A-Za-z_][A-Za-z0-9_]*)\.(pre|post)$)");
    std::smatch m;
    if (std::regex_match(text, m, ref)) {
      auto it = triples_.find(m[1]);
      if (it == triples_.end()) throw ScriptError("no triple for step '" + std::string(m[1]) + "'");
      return m[2] == "pre" ? it->second.pre : it->second.post;
    }
    return parse_assertion_expr(text, in.reg, in.ctx, in.known);
  }

  DistProgram program(const std::string& text, const std::vector<HoareTriple>& premises, const std::string& rule) const {
    static const std::regex gam(R"(^gamma\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$)");
    static const std::regex lab(R"(^([A-Za-z_][A-Za-z0-9_]*)\.prog$)");
    const DistProgram& p = ls_.program;
    std::smatch m;
    if (text == "prog") return p;
    if (text == "init") return fragment(p, init_sequence(p));
    if (std::regex_match(text, m, gam)) {
      const GammaTuple g{std::stoi(m[1]) - 1, std::stoi(m[2]) - 1, std::stoi(m[3]) - 1, std::stoi(m[4]) - 1};
      const auto all = gamma_of(p);
      if (std::find(all.begin(), all.end(), g) == all.end()) throw ScriptError(text + " is not in Γ");
      return fragment(p, gamma_body(p, g));
    }
    if (std::regex_match(text, m, lab)) {
      auto it = triples_.find(m[1]);
      if (it == triples_.end()) throw ScriptError("no triple for step '" + std::string(m[1]) + "'");
      return it->second.program;
    }
    if (text == "_") {
      if (rule == "Imp" && premises.size() == 1) return premises.front().program;
      if (rule == "Seq") {
        std::vector<StmtPtr> parts;
        for (const auto& t : premises) {
          if (!t.program.is_sequential()) throw ScriptError("(Seq) premises must be sequential");
          parts.push_back(t.program.processes.front().init);
        }
        return fragment(p, mk_seq(parts));
      }
      throw ScriptError("cannot infer the program of a (" + rule + ") step");
    }
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
      const Process scope = fragment(p, mk_skip()).processes.front();
      return fragment(p, parse_statement(text.substr(1, text.size() - 2), scope));
    }
    throw ScriptError("bad program reference '" + text + "'");
  }

  // ---- Derive: loop-free fragments by the atomic rules --------------------

  HoareTriple derive(const StmtPtr& s, CqAssertion post, std::vector<RuleInstance>& out) const {
    post = pad(post, union_of(post.qvars, qvars_of(*s)));
    auto tri = [&](const CqAssertion& pre, const StmtPtr& st, const CqAssertion& q) {
      return HoareTriple{pre, fragment(ls_.program, st), q, mode_};
    };
    switch (s->kind) {
      case StmtKind::Skip:
      case StmtKind::Assign:
      case StmtKind::RandAssign:
      case StmtKind::InitQ:
      case StmtKind::ApplyU:
      case StmtKind::Measure: {
        static const std::map<StmtKind, std::string> name = {
            {StmtKind::Skip, "Skip"}, {StmtKind::Assign, "Assn"}, {StmtKind::RandAssign, "Rassn"},
            {StmtKind::InitQ, "Init"}, {StmtKind::ApplyU, "Unit"}, {StmtKind::Measure, "Meas"}};
        WpOptions wo;
        wo.samples = samples_;
        wo.env = env_;
        const HoareTriple t = tri(wp(s, post, wo).assertion, s, post);
        out.push_back({name.at(s->kind), {}, t, std::nullopt});
        return t;
      }
      case StmtKind::Abort: {
        const bool total = mode_ == Mode::Total;
        const HoareTriple base = tri(total ? bot(post.qvars) : top(post.qvars), s, bot(post.qvars));
        out.push_back({total ? "Abort-T" : "Abort", {}, base, std::nullopt});
        const HoareTriple t = tri(base.pre, s, post);
        out.push_back({"Imp", {base}, t, std::nullopt});
        return t;
      }
      case StmtKind::Seq: {
        std::vector<HoareTriple> parts(s->children.size());
        CqAssertion q = post;
        for (std::size_t k = s->children.size(); k-- > 0;) {
          parts[k] = derive(s->children[k], q, out);
          q = parts[k].pre;
        }
        const HoareTriple t = tri(parts.front().pre, s, parts.back().post);
        out.push_back({"Seq", parts, t, std::nullopt});
        return t;
      }
      case StmtKind::Alt: {
        std::vector<HoareTriple> branch;
        std::vector<std::pair<double, CqAssertion>> terms;
        for (const auto& b : s->branches) {
          branch.push_back(derive(b.body, post, out));
          terms.emplace_back(1.0, conj(b.guard, branch.back().pre));
        }
        const CqAssertion theta = simplify(lincomb(terms));
        std::vector<HoareTriple> premises;
        for (std::size_t i = 0; i < s->branches.size(); ++i) {
          const auto& b = s->branches[i];
          const HoareTriple t = tri(conj(b.guard, theta), b.body, branch[i].post);
          out.push_back({"Imp", {branch[i]}, t, std::nullopt});
          premises.push_back(t);
        }
        const HoareTriple t = tri(theta, s, post);
        out.push_back({mode_ == Mode::Total ? "Alt-T" : "Alt", premises, t, std::nullopt});
        return t;
      }
      case StmtKind::Rep:
        throw ScriptError("Derive does not handle loops; prove them with (Rep)/(Rep-T)/(C-Rep-T)");
    }
    throw ScriptError("unreachable");
  }

  StepResult step(const Instance& in, const StepSpec& st) {
    StepResult r;
    r.label = st.label;
    r.rule = st.rule;
    try {
      std::vector<HoareTriple> premises;
      for (const auto& f : st.from) {
        auto it = triples_.find(f);
        if (it == triples_.end()) throw ScriptError("unknown premise '" + f + "'");
        premises.push_back(it->second);
      }
      const DistProgram prog = program(st.prog, premises, st.rule);
      RuleContext rc;
      rc.samples = samples_;
      rc.denote = opts_.denote;
      rc.tol = opts_.tol;
      rc.jobs = opts_.jobs;

      if (st.rule == "Derive") {
        if (!st.from.empty() || !st.with.empty()) throw ScriptError("Derive takes no premises or witnesses");
        if (!prog.is_sequential()) throw ScriptError("Derive needs a sequential fragment");
        if (st.post == "_") throw ScriptError("Derive needs a postcondition");
        std::vector<RuleInstance> insts;
        HoareTriple t = derive(prog.processes.front().init, assertion(in, st.post), insts);
        if (st.pre != "_") {
          const HoareTriple goal{assertion(in, st.pre), t.program, t.post, mode_};
          insts.push_back({"Imp", {t}, goal, std::nullopt});
          t = goal;
        }
        bool all = true;
        for (const auto& i : insts) {
          r.derived.push_back(check_rule(i, rc));
          all = all && r.derived.back().ok;
        }
        r.report.rule = "Derive";
        r.report.findings.push_back({std::to_string(insts.size()) + " derived rule instances", all, "", 0.0});
        const SemanticReport sem = check_semantic(t, in.states, opts_.denote, opts_.tol, opts_.jobs);
        r.report.findings.push_back({"semantic check of the derived triple", sem.verdict != Verdict::Fail,
                                     std::string(verdict_name(sem.verdict)), sem.min_gap < 0 ? -sem.min_gap : 0.0});
        r.report.ok = true;
        for (const auto& f : r.report.findings) r.report.ok = r.report.ok && f.ok;
        r.triple = t;
        r.ok = r.report.ok;
        return r;
      }

      RuleInstance inst;
      inst.rule = st.rule;
      inst.premises = premises;
      CqAssertion post = st.post == "_" ? infer_post(st.rule, premises, prog) : assertion(in, st.post);
      CqAssertion pre = st.pre == "_" ? infer_pre(st.rule, premises, prog, post) : assertion(in, st.pre);
      inst.conclusion = HoareTriple{pre, prog, post, mode_};
      if (!st.with.empty()) {
        RankingWitness w;
        bool classical = false;
        for (const auto& [k, v] : st.with) {
          if (k == "t") {
            w.t = parse_expr(v, in.ctx.env);
            classical = true;
          } else if (k == "p") {
            w.p = parse_expr(v, in.ctx.env);
          } else if (k == "z") {
            w.z = v;
          } else {
            w.prefix.push_back(assertion(in, v));
          }
        }
        w.kind = classical ? RankingWitness::Classical : RankingWitness::Assertions;
        inst.ranking = w;
      }
      rc.states = in.states;
      r.report = check_rule(inst, rc);
      r.triple = inst.conclusion;
      r.ok = r.report.ok;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    return r;
  }

  CqAssertion infer_post(const std::string& rule, const std::vector<HoareTriple>& P, const DistProgram& prog) const {
    if ((rule == "Seq" || rule == "Imp" || rule == "Alt" || rule == "Alt-T") && !P.empty()) return P.back().post;
    if ((rule == "Dist" || rule == "Dist-T" || rule == "C-Dist-T") && !P.empty() && term_) {
      return conj(term_, P.front().post);
    }
    if (rule == "Abort" || rule == "Abort-T") return bot(prog.qvars());
    throw ScriptError("cannot infer the postcondition of a (" + rule + ") step");
  }

  CqAssertion infer_pre(const std::string& rule, const std::vector<HoareTriple>& P, const DistProgram& prog,
                        const CqAssertion& post) const {
    if ((rule == "Seq" || rule == "Imp" || rule == "Dist" || rule == "Dist-T" || rule == "C-Dist-T") && !P.empty()) {
      return P.front().pre;
    }
    if (rule == "Abort") return top(post.qvars);
    if (rule == "Abort-T") return bot(post.qvars);
    static const std::set<std::string> atomic = {"Skip", "Assn", "Rassn", "Init", "Unit", "Meas"};
    if (atomic.count(rule) && prog.is_sequential()) {
      WpOptions wo;
      wo.samples = samples_;
      wo.env = env_;
      return wp(prog.processes.front().init, post, wo).assertion;
    }
    throw ScriptError("cannot infer the precondition of a (" + rule + ") step");
  }

  InstanceResult replay(std::size_t k) {
    triples_.clear();
    InstanceResult ir;
    const Instance in = instance(k);
    ir.params = in.params;
    bool ok = true;
    for (const auto& st : ls_.script.steps) {
      ir.steps.push_back(step(in, st));
      if (ir.steps.back().triple) triples_[st.label] = *ir.steps.back().triple;
      ok = ok && ir.steps.back().ok;
    }
    if (ls_.script.conclude.empty()) {
      ir.claim_ok = false;
      ir.claim_detail = "nothing concluded";
    } else if (ls_.script.claim) {
      auto it = triples_.find(ls_.script.conclude);
      if (it == triples_.end()) {
        ir.claim_ok = false;
        ir.claim_detail = "the concluded step produced no triple";
      } else {
        try {
          const HoareTriple c = claim(in);
          const HoareTriple& got = it->second;
          std::vector<std::string> bad;
          if (!same_program(c.program, got.program)) bad.push_back("program");
          if (max_distance(c.pre, got.pre, samples_) > opts_.tol) bad.push_back("precondition");
          if (max_distance(c.post, got.post, samples_) > opts_.tol) bad.push_back("postcondition");
          if (c.mode != got.mode) bad.push_back("mode");
          ir.claim_ok = bad.empty();
          for (const auto& b : bad) ir.claim_detail += (ir.claim_detail.empty() ? "concluded triple differs in " : ", ") + b;
        } catch (const std::exception& e) {
          ir.claim_ok = false;
          ir.claim_detail = e.what();
        }
      }
    }
    ir.ok = ok && ir.claim_ok;
    return ir;
  }

  HoareTriple claim(const Instance& in) const {
    const ClaimSpec& c = *ls_.script.claim;
    return HoareTriple{assertion(in, c.pre), program(c.prog, {}, "claim"), assertion(in, c.post), mode_};
  }

  InstanceResult verify(std::size_t k) {
    InstanceResult ir;
    const Instance in = instance(k);
    ir.params = in.params;
    if (!ls_.script.claim) throw ScriptError("the script has no claim to verify");
    const SemanticReport sem = check_semantic(claim(in), in.states, opts_.denote, opts_.tol, opts_.jobs);
    ir.ok = sem.verdict == Verdict::Pass;
    ir.claim_ok = ir.ok;
    ir.claim_detail = verdict_name(sem.verdict);
    ir.semantic = sem;
    return ir;
  }

  std::size_t test_state_count(const Instance& in) const { return in.states.size(); }

 private:
  const LoadedScript& ls_;
  const ProofOptions& opts_;
  Mode mode_;
  VarEnv env_;
  std::vector<ClassicalState> samples_;
  ExprPtr term_, block_;
  std::map<std::string, HoareTriple> triples_;
};

ProofReport drive(const LoadedScript& s, const ProofOptions& opts, bool replay) {
  Runner run(s, opts);
  ProofReport rep;
  rep.mode = run.mode();
  rep.samples = run.sample_count();
  const std::size_t n = opts.instances ? opts.instances : std::max<std::size_t>(1, s.script.instances);
  rep.ok = true;
  std::set<std::string> hyp;
  for (std::size_t k = 0; k < n; ++k) {
    rep.instances.push_back(replay ? run.replay(k) : run.verify(k));
    rep.ok = rep.ok && rep.instances.back().ok;
    for (const auto& st : rep.instances.back().steps) {
      hyp.insert(st.report.hypotheses.begin(), st.report.hypotheses.end());
      for (const auto& d : st.derived) hyp.insert(d.hypotheses.begin(), d.hypotheses.end());
    }
  }
  rep.test_states = s.script.states.size() + opts.random_states + opts.mixed_states;
  rep.hypotheses.assign(hyp.begin(), hyp.end());
  return rep;
}

}  // namespace

ProofReport run_proof_script(const LoadedScript& s, const ProofOptions& opts) { return drive(s, opts, true); }

ProofReport verify_claim(const LoadedScript& s, const ProofOptions& opts) { return drive(s, opts, false); }

Json to_json(const ProofReport& r) {
  Json insts = Json::array();
  for (const auto& in : r.instances) {
    Json params = Json::object();
    for (const auto& [k, v] : in.params) {
      Json a = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
      params[k] = std::move(a);
    }
    Json steps = Json::array();
    for (const auto& st : in.steps) {
      Json sj{{"label", st.label}, {"rule", st.rule}, {"ok", st.ok}};
      if (!st.error.empty()) sj["error"] = st.error;
      sj["report"] = to_json(st.report);
      if (!st.derived.empty()) {
        Json d = Json::array();
        for (const auto& x : st.derived) {
          if (!x.ok) d.push_back(to_json(x));
        }
        sj["derived_instances"] = st.derived.size();
        sj["derived_failures"] = std::move(d);
      }
      steps.push_back(std::move(sj));
    }
    Json ij{{"params", std::move(params)}, {"ok", in.ok}, {"claim_ok", in.claim_ok}};
    if (!in.claim_detail.empty()) ij["claim_detail"] = in.claim_detail;
    if (!in.steps.empty()) ij["steps"] = std::move(steps);
    if (in.semantic) ij["semantic"] = to_json(*in.semantic);
    insts.push_back(std::move(ij));
  }
  return Json{{"verdict", r.ok ? "pass" : "fail"},
              {"mode", mode_name(r.mode)},
              {"classical_samples", r.samples},
              {"test_states_per_instance", r.test_states},
              {"scope", "verified over the sampled states only"},
              {"hypotheses", r.hypotheses},
              {"instances", std::move(insts)}};
}

}  // namespace dqhl
