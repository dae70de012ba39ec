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

// dqhl command-line driver.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dqhl/assertion_parser.hpp"
#include "dqhl/classical_state.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/hoare.hpp"
#include "dqhl/json_io.hpp"
#include "dqhl/opsem.hpp"
#include "dqhl/parser.hpp"
#include "dqhl/printer.hpp"
#include "dqhl/proof_script.hpp"
#include "dqhl/sampling.hpp"
#include "dqhl/seqtransform.hpp"
#include "dqhl/validate.hpp"
#include "dqhl/wp.hpp"

using namespace dqhl;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

// Bad input of any kind; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string file;
  std::string state;
  std::vector<std::string> params;
  std::string scheduler = "good";
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  double eps = 1e-10;
  double tol = 1e-8;
  bool json = false;
  bool trace = false;
  int jobs = 1;
  bool check = false;
  std::string post, pre, assertions;
  bool partial = false;
  bool proof = false;
  std::size_t instances = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DistProgram load_program(const std::string& path) {
  DistProgram p = parse_program(slurp(path));
  const auto diags = validate(p);
  if (!diags.empty()) {
    std::string msg = path + ": ill-formed program";
    for (const auto& d : diags) msg += "\n  " + std::string(diag_kind_name(d.kind)) + ": " + d.message;
    throw UsageError(msg);
  }
  return p;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::map<std::string, CVector> sample_params(const Config& c, Rng& rng) {
  std::map<std::string, CVector> out;
  for (const auto& spec : c.params) {
    // name or name:dim, drawn Haar-random
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::size_t dim = 2;
    if (colon != std::string::npos) dim = std::stoul(spec.substr(colon + 1));
    out[name] = haar_ket(dim, rng);
  }
  return out;
}

// --state takes a cq-state JSON file or a state expression over the
// program's quantum variables (classical part all zero).
CqState input_state(const Config& c, const DistProgram& p, Rng& rng) {
  const auto params = sample_params(c, rng);
  const QVarList reg = p.qvars();
  const ClassicalState zero = complete_state({}, p.env());
  if (c.state.empty()) {
    CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(total_dim(reg)), static_cast<Eigen::Index>(total_dim(reg)));
    rho(0, 0) = 1.0;
    return single(zero, rho, reg);
  }
  if (std::filesystem::path(c.state).extension() == ".json") {
    Json j;
    try {
      j = Json::parse(slurp(c.state));
    } catch (const Json::parse_error& e) {
      throw UsageError(c.state + ": " + e.what());
    }
    return complete_states(cqstate_from_json(j, rng, params).state, p.env());
  }
  return single(zero, state_from_expr(c.state, reg, params), reg);
}

std::unique_ptr<Scheduler> make_scheduler(const Config& c) {
  if (c.scheduler == "good") return std::make_unique<GoodScheduler>();
  if (c.scheduler == "random") return std::make_unique<RandomScheduler>(c.seed);
  if (c.scheduler.rfind("trace:", 0) == 0) {
    const Json j = Json::parse(slurp(c.scheduler.substr(6)));
    return std::make_unique<ExplicitScheduler>(trace_from_json(j));
  }
  throw UsageError("--scheduler is good, random or trace:<file>");
}

int cmd_parse(const Config& c) {
  const DistProgram p = load_program(c.file);
  if (c.json) {
    Json procs = Json::array();
    for (const auto& pr : p.processes) {
      Json vars = Json::object();
      for (const auto& [n, t] : pr.vars) vars[n] = type_name(t);
      procs.push_back(Json{{"name", pr.name}, {"vars", vars}, {"qvars", to_json(pr.qvars)}, {"loop_branches", pr.loop.size()}});
    }
    print_json(Json{{"channels", p.channels}, {"processes", procs}, {"sequential", p.is_sequential()}});
  } else {
    std::cout << print_program(p);
  }
  return kOk;
}

int cmd_run(const Config& c) {
  const DistProgram p = load_program(c.file);
  Rng rng = make_rng(c.seed, 1);
  const CqState in = input_state(c, p, rng);
  RunOptions ro;
  ro.max_steps = c.max_steps;
  ro.record_trace = c.trace;
  if (in.size() != 1) throw UsageError("run takes a single classical state; use denote for mixtures");
  const auto& [sigma, rho] = *in.entries.begin();
  const double tr = rho.trace().real();
  auto sched = make_scheduler(c);
  RunReport r = run(p, sigma, DensityOp{rho / tr, in.qvars}, *sched, ro);
  if (std::abs(tr - 1.0) > kTol) r.delta = scale(r.delta, tr);
  print_json(to_json(r, c.trace));
  return kOk;
}

DenoteOptions denote_options(const Config& c) {
  DenoteOptions o;
  o.eps = c.eps;
  o.run.max_steps = c.max_steps;
  o.jobs = c.jobs;
  return o;
}

int cmd_denote(const Config& c) {
  const DistProgram p = load_program(c.file);
  Rng rng = make_rng(c.seed, 1);
  const CqState in = input_state(c, p, rng);
  const DenoteResult r = denote(p, in, denote_options(c));
  print_json(to_json(r));
  return kOk;
}

int cmd_seq(const Config& c) {
  const DistProgram p = load_program(c.file);
  const SeqTransformResult t = sequentialise(p);
  SeqEquivReport eq;
  if (c.check) {
    Rng rng = make_rng(c.seed, 2);
    const VarEnv env = p.env();
    std::vector<ClassicalState> zero = {complete_state({}, env)};
    std::vector<CqState> inputs = random_test_states(p.qvars(), zero, rng, 1, 0);
    for (int k = 0; k < 4; ++k) {
      inputs.push_back(single(zero.front(), projector(haar_ket(total_dim(p.qvars()), rng)), p.qvars()));
    }
    eq = check_seq_equiv(p, inputs, denote_options(c), c.tol);
  }
  if (c.json) {
    Json j{{"program", print_program(t.as_program)}, {"term", to_string(t.term)}, {"block", to_string(t.block)}};
    Json g = Json::array();
    for (const auto& x : t.gamma) g.push_back({x.i + 1, x.j + 1, x.k + 1, x.l + 1});
    j["gamma"] = g;
    if (c.check) j["check"] = Json{{"ok", eq.ok}, {"max_deviation", eq.max_deviation}, {"inputs", eq.cases.size()}};
    print_json(j);
  } else {
    std::cout << print_program(t.as_program);
    std::cout << "# TERM  = " << to_string(t.term) << "\n";
    std::cout << "# BLOCK = " << to_string(t.block) << "\n";
    if (c.check) {
      std::cout << "# check: " << (eq.ok ? "ok" : "FAILED") << ", max deviation " << eq.max_deviation << " over "
                << eq.cases.size() << " inputs\n";
    }
  }
  return c.check && !eq.ok ? kCheckFailed : kOk;
}

AssertionContext assertion_context(const DistProgram& p, const Config& c, Rng& rng, QVarList& reg,
                                   std::map<std::string, CqAssertion>& known) {
  AssertionContext ctx;
  ctx.qvars = p.qvars();
  ctx.env = p.env();
  if (!p.is_sequential()) {
    const auto [term, block] = term_block(p);
    ctx.preds["TERM"] = term;
    ctx.preds["BLOCK"] = block;
  }
  ctx.params = sample_params(c, rng);
  reg = ctx.qvars;
  if (!c.assertions.empty()) {
    const std::string src = slurp(c.assertions);
    for (const auto& d : declared_params(src)) {
      if (!ctx.params.count(d.name)) ctx.params[d.name] = haar_ket(static_cast<std::size_t>(d.dim), rng);
    }
    const AssertionFile f = parse_assertion_file(src, ctx);
    reg = union_of(reg, f.qvars);
    known = f.assertions;
  }
  return ctx;
}

int cmd_xp(const Config& c, XpMode mode) {
  const DistProgram p = load_program(c.file);
  Rng rng = make_rng(c.seed, 3);
  QVarList reg;
  std::map<std::string, CqAssertion> known;
  const AssertionContext ctx = assertion_context(p, c, rng, reg, known);
  if (c.post.empty()) throw UsageError("--post is required");
  const CqAssertion post = parse_assertion_expr(c.post, reg, ctx, known);
  WpOptions wo;
  wo.eps = c.eps;
  wo.env = p.env();
  const WpResult r = xp_program(mode, p, post, wo);
  if (c.json) {
    print_json(Json{{"mode", mode_name(mode)},
                    {"converged", r.converged},
                    {"iterations", r.iterations},
                    {"residual", r.residual},
                    {"tabulated", r.tabulated},
                    {"assertion", to_json(r.assertion)}});
  } else {
    std::cout << to_string(r.assertion) << "\n";
    if (!r.converged) std::cout << "# not converged, residual " << r.residual << "\n";
  }
  return r.converged ? kOk : kCheckFailed;
}

ProofOptions proof_options(const Config& c) {
  ProofOptions o;
  o.seed = c.seed;
  o.instances = c.instances;
  o.denote = denote_options(c);
  o.tol = c.tol;
  o.jobs = c.jobs;
  return o;
}

void print_proof(const ProofReport& r, bool json) {
  if (json) {
    print_json(to_json(r));
    return;
  }
  for (std::size_t k = 0; k < r.instances.size(); ++k) {
    const auto& in = r.instances[k];
    std::cout << "instance " << k + 1 << ": " << (in.ok ? "ok" : "FAILED") << "\n";
    for (const auto& st : in.steps) {
      std::cout << "  step " << st.label << " (" << st.rule << "): " << (st.ok ? "ok" : "FAILED") << "\n";
      if (!st.error.empty()) std::cout << "    error: " << st.error << "\n";
      for (const auto& f : st.report.findings) {
        if (!f.ok) std::cout << "    " << f.what << ": " << f.detail << "\n";
      }
      for (const auto& d : st.derived) {
        if (d.ok) continue;
        for (const auto& f : d.findings) {
          if (!f.ok) std::cout << "    derived (" << d.rule << ") " << f.what << ": " << f.detail << "\n";
        }
      }
    }
    if (in.semantic) {
      std::cout << "  semantic check: " << verdict_name(in.semantic->verdict) << " on " << in.semantic->states.size()
                << " states, min gap " << in.semantic->min_gap << "\n";
    }
    if (!in.claim_detail.empty() && !in.semantic) std::cout << "  claim: " << in.claim_detail << "\n";
  }
  for (const auto& h : r.hypotheses) std::cout << "hypothesis: " << h << "\n";
  std::cout << (r.ok ? "verified" : "NOT verified") << " (" << mode_name(r.mode) << ", " << r.samples
            << " classical samples, " << r.test_states << " test states per instance)\n";
}

int cmd_verify(const Config& c) {
  if (std::filesystem::path(c.file).extension() == ".dqproof") {
    const LoadedScript ls = load_proof_script(c.file);
    const ProofReport r = c.proof ? run_proof_script(ls, proof_options(c)) : verify_claim(ls, proof_options(c));
    print_proof(r, c.json);
    return r.ok ? kOk : kCheckFailed;
  }
  const DistProgram p = load_program(c.file);
  Rng rng = make_rng(c.seed, 3);
  QVarList reg;
  std::map<std::string, CqAssertion> known;
  const AssertionContext ctx = assertion_context(p, c, rng, reg, known);
  if (c.pre.empty() || c.post.empty()) throw UsageError("--pre and --post are required");
  const HoareTriple t{parse_assertion_expr(c.pre, reg, ctx, known), p, parse_assertion_expr(c.post, reg, ctx, known),
                      c.partial ? Mode::Partial : Mode::Total};
  const auto samples = reachable_states(p, {complete_state({}, p.env())});
  const auto states = random_test_states(reg, samples, rng, 20, 4);
  const SemanticReport r = check_semantic(t, states, denote_options(c), c.tol, c.jobs);
  if (c.json) {
    print_json(to_json(r));
  } else {
    std::cout << verdict_name(r.verdict) << " (" << mode_name(t.mode) << ") on " << r.states.size()
              << " sampled states, min gap " << r.min_gap << "\n";
  }
  return r.verdict == Verdict::Pass ? kOk : kCheckFailed;
}

int cmd_prove(const Config& c) {
  const LoadedScript ls = load_proof_script(c.file);
  const ProofReport r = run_proof_script(ls, proof_options(c));
  print_proof(r, c.json);
  return r.ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqhl: distributed quantum programs, semantics and Hoare-style verification"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Seed for every random choice");
    s->add_option("--max-steps", c.max_steps, "Step budget for runs");
    s->add_option("--eps", c.eps, "Convergence threshold");
    s->add_option("--tol", c.tol, "Tolerance of the checks");
    s->add_flag("--json", c.json, "Machine-readable output");
    s->add_option("--jobs", c.jobs, "Worker threads for sample checks")->check(CLI::PositiveNumber);
    s->add_option("--param", c.params, "Haar-random parameter name[:dim]");
  };

  auto* parse = app.add_subcommand("parse", "Parse and validate a program");
  parse->add_option("file", c.file, ".dqp program")->required();
  common(parse);

  auto* run_cmd = app.add_subcommand("run", "Run under a scheduler");
  run_cmd->add_option("file", c.file, ".dqp program")->required();
  run_cmd->add_option("--state", c.state, "Input cq-state (.json file or state expression)");
  run_cmd->add_option("--scheduler", c.scheduler, "good, random or trace:<file>");
  run_cmd->add_flag("--trace", c.trace, "Include the derivation tree");
  common(run_cmd);

  auto* den = app.add_subcommand("denote", "Denotational semantics of a program on a cq-state");
  den->add_option("file", c.file, ".dqp program")->required();
  den->add_option("--state", c.state, "Input cq-state (.json file or state expression)");
  common(den);

  auto* seq = app.add_subcommand("seq", "Print the sequentialised program with TERM and BLOCK");
  seq->add_option("file", c.file, ".dqp program")->required();
  seq->add_flag("--check", c.check, "Compare the semantics of the program and its sequentialisation");
  common(seq);

  CLI::App* xp_cmd[2];
  const char* xp_names[2] = {"wp", "wlp"};
  for (int k = 0; k < 2; ++k) {
    xp_cmd[k] = app.add_subcommand(xp_names[k], k == 0 ? "Weakest precondition" : "Weakest liberal precondition");
    xp_cmd[k]->add_option("file", c.file, ".dqp program")->required();
    xp_cmd[k]->add_option("--post", c.post, "Postcondition (assertion expression)")->required();
    xp_cmd[k]->add_option("--assertions", c.assertions, ".dqa file with named assertions");
    common(xp_cmd[k]);
  }

  auto* ver = app.add_subcommand("verify", "Check a correctness formula semantically");
  ver->add_option("file", c.file, ".dqproof script or .dqp program")->required();
  ver->add_option("--pre", c.pre, "Precondition (with a .dqp program)");
  ver->add_option("--post", c.post, "Postcondition (with a .dqp program)");
  ver->add_option("--assertions", c.assertions, ".dqa file with named assertions");
  ver->add_flag("--partial", c.partial, "Partial instead of total correctness");
  ver->add_flag("--proof", c.proof, "Replay the script's proof steps as well");
  ver->add_option("--instances", c.instances, "Parameter draws");
  common(ver);

  auto* prove = app.add_subcommand("prove", "Replay a proof script rule by rule");
  prove->add_option("file", c.file, ".dqproof script")->required();
  prove->add_option("--instances", c.instances, "Parameter draws");
  common(prove);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(c);
    if (*run_cmd) return cmd_run(c);
    if (*den) return cmd_denote(c);
    if (*seq) return cmd_seq(c);
    if (*xp_cmd[0]) return cmd_xp(c, XpMode::Wp);
    if (*xp_cmd[1]) return cmd_xp(c, XpMode::Wlp);
    if (*ver) return cmd_verify(c);
    if (*prove) return cmd_prove(c);
  } catch (const UsageError& e) {
    std::cerr << "dqhl: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "dqhl: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ScriptError& e) {
    std::cerr << "dqhl: " << e.what() << "\n";
    return kUsage;
  } catch (const JsonFormatError& e) {
    std::cerr << "dqhl: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "dqhl: bad JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "dqhl: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
