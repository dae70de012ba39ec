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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "dqhl/assertion_parser.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/gates.hpp"
#include "dqhl/hoare.hpp"
#include "dqhl/opsem.hpp"
#include "dqhl/printer.hpp"
#include "dqhl/proof_script.hpp"
#include "dqhl/seqtransform.hpp"
#include "dqhl/wp.hpp"
#include "fixtures.hpp"

namespace {

using namespace dqhl;
namespace t = dqhl::testing;

constexpr double kTol8 = 1e-8;
constexpr double kTol9 = 1e-9;
constexpr int kHaarInputs = 20;

int jobs() { return static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Reorders a matrix on `from` into the order of `to` (same variables).
CMatrix reorder(const CMatrix& m, const QVarList& from, const QVarList& to) { return reduce(m, from, to); }

AssertionFile load_assertions(const std::string& file, const DistProgram& p, const std::map<std::string, CVector>& params) {
  SeqTransformResult s = sequentialise(p);
  AssertionContext ctx;
  ctx.params = params;
  ctx.env = p.env();
  ctx.preds["TERM"] = s.term;
  ctx.preds["BLOCK"] = s.block;
  return parse_assertion_file(t::read_file(t::program_path(file)), ctx);
}

bool all_steps_ok(const ProofReport& r, const std::string& label, const std::string& rule) {
  for (const auto& in : r.instances) {
    bool seen = false;
    for (const auto& s : in.steps) {
      if (s.label == label) {
        seen = true;
        if (!s.ok || s.rule != rule) return false;
      }
    }
    if (!seen) return false;
  }
  return !r.instances.empty();
}

Outcome ac1() {
  Outcome o;
  DistProgram p = t::load_program("teleport.dqp");
  Rng rng = make_rng(101);
  double worst = 0.0;
  for (int k = 0; k < kHaarInputs; ++k) {
    const CVector psi = haar_ket(2, rng);
    GoodScheduler g;
    RunReport r = run(p, {}, {projector(tensor(psi, bell_ket())), p.qvars()}, g);
    o.require(std::abs(r.terminated - 1.0) <= kTol8, "terminated mass " + fmt(r.terminated));
    o.require(r.delta.size() == 4, std::to_string(r.delta.size()) + " branches");
    for (const auto& [s, m] : r.delta.entries) {
      const double tr = real_trace(m);
      o.require(std::abs(tr - 0.25) <= kTol8, "branch weight " + fmt(tr));
      const CMatrix q2 = reduce(m, p.qvars(), {{"q2", 2}}) / tr;
      worst = std::max(worst, max_abs_diff(q2, projector(psi)));
    }
  }
  o.require(worst <= kTol8, "q2 marginal off by " + fmt(worst));
  LoadedScript s = load_proof_script(t::program_path("teleport.dqproof"));
  ProofOptions po;
  po.seed = 7;
  po.instances = kHaarInputs;
  po.jobs = jobs();
  ProofReport sem = verify_claim(s, po);
  o.require(sem.ok, "semantic verify failed");
  ProofReport proof = run_proof_script(s, po);
  o.require(proof.ok, "proof script failed");
  if (o.ok) {
    o.detail = "4 x 1/4 branches, q2 error " + fmt(worst) + ", verify ok on " + std::to_string(sem.instances.size()) +
               " draws (semantic + script)";
  }
  return o;
}

std::vector<std::pair<ClassicalState, DensityOp>> haar_inputs(const DistProgram& p, const QVarList& order,
                                                             std::size_t dim, Rng& rng) {
  std::vector<std::pair<ClassicalState, DensityOp>> in;
  for (int k = 0; k < kHaarInputs; ++k) {
    const CMatrix rho = projector(tensor(haar_ket(dim, rng), bell_ket()));
    in.push_back({{}, {reorder(rho, order, p.qvars()), p.qvars()}});
  }
  return in;
}

const QVarList kTeleportOrder = {{"q", 2}, {"q1", 2}, {"q2", 2}};
const QVarList kRcnotOrder = {{"q", 2}, {"r", 2}, {"q1", 2}, {"q2", 2}};

Outcome ac2() {
  Outcome o;
  Rng rng = make_rng(102);
  double worst = 0.0;
  std::size_t runs = 0;
  for (const auto& [file, order, dim] : {std::tuple{"teleport.dqp", kTeleportOrder, 2}, std::tuple{"rcnot.dqp", kRcnotOrder, 4}}) {
    DistProgram p = t::load_program(file);
    auto in = haar_inputs(p, order, static_cast<std::size_t>(dim), rng);
    DeterminismReport d = check_determinism(p, in, 50, 2024, {}, jobs());
    o.require(d.ok && !d.budget_exhausted, std::string(file) + " deviates by " + fmt(d.max_deviation));
    worst = std::max(worst, d.max_deviation);
    runs += d.runs;
  }
  if (o.ok) o.detail = std::to_string(runs) + " scheduled runs, max deviation " + fmt(worst);
  return o;
}

Outcome ac3() {
  Outcome o;
  Rng rng = make_rng(103);
  double worst = 0.0;
  for (const auto& [file, order, dim] : {std::tuple{"teleport.dqp", kTeleportOrder, 2}, std::tuple{"rcnot.dqp", kRcnotOrder, 4}}) {
    DistProgram p = t::load_program(file);
    std::vector<CqState> in;
    for (auto& [s, rho] : haar_inputs(p, order, static_cast<std::size_t>(dim), rng)) in.push_back(single(s, rho));
    in.resize(5);
    in.push_back(single({}, random_density(total_dim(p.qvars()), rng), p.qvars()));
    SeqEquivReport r = check_seq_equiv(p, in, {}, kTol8);
    o.require(r.ok, std::string(file) + " deviates by " + fmt(r.max_deviation));
    worst = std::max(worst, r.max_deviation);
  }
  int random_ok = 0;
  for (int k = 0; k < 100; ++k) {
    DistProgram p = t::random_two_process(rng);
    std::vector<CqState> in = {single({}, random_density(4, rng), p.qvars()),
                               single({}, projector(haar_ket(4, rng)), p.qvars())};
    SeqEquivReport r = check_seq_equiv(p, in, {}, kTol8);
    o.require(r.ok, "random program " + std::to_string(k) + " deviates by " + fmt(r.max_deviation) + ":\n" + print_program(p));
    worst = std::max(worst, r.max_deviation);
    random_ok += r.ok ? 1 : 0;
  }
  DistProgram tp = t::load_program("teleport.dqp");
  const std::string got = t::strip_ws(print_program(sequentialise(tp).as_program));
  const std::string want = t::strip_ws(t::read_file(t::golden_path("teleport_seq.dqp")));
  o.require(got == want, "sequentialised Teleport differs from the golden file");
  if (o.ok) o.detail = "Teleport, RCNOT and " + std::to_string(random_ok) + " random programs, max deviation " + fmt(worst) + ", golden ok";
  return o;
}

Outcome ac4() {
  Outcome o;
  Rng rng = make_rng(104);
  double worst = 0.0;
  int n = 0;
  for (int k = 0; k < 230; ++k) {
    const int nq = 1 + k % 2;
    DistProgram p = k < 200 ? t::random_loop_free(rng, nq) : t::random_bounded_loop(rng, nq);
    const QVarList reg = p.qvars();
    std::vector<CqState> in = {t::random_input(rng, reg, 1, 1.0), t::random_input(rng, reg, 4, 1.0),
                               t::random_input(rng, reg, 3, 0.5)};
    CqAssertion post = t::random_assertion(rng, reg);
    for (XpMode m : {XpMode::Wp, XpMode::Wlp}) {
      DualityReport r = check_duality(p, post, in, m, {}, {}, kTol8);
      o.require(r.ok, std::string(mode_name(m)) + " duality off by " + fmt(r.max_deviation) + " on\n" + print_program(p));
      worst = std::max(worst, r.max_deviation);
    }
    ++n;
  }
  if (o.ok) o.detail = std::to_string(n) + " programs (200 loop-free, 30 bounded loops), max deviation " + fmt(worst);
  return o;
}

Outcome ac5() {
  Outcome o;
  Rng rng = make_rng(105);
  double comp = 0.0, lin = 0.0, aff = 0.0;
  for (int k = 0; k < 100; ++k) {
    DistProgram p = k % 4 == 3 ? t::random_bounded_loop(rng, 1 + k % 2) : t::random_loop_free(rng, 1 + k % 2);
    auto [lo, hi] = t::random_ordered_pair(rng, p.qvars());
    const double l1 = -1.0 + 3.0 * uniform01(rng);
    WpOptions wo;
    wo.samples = t::small_states();
    o.require(lesssim(lo, hi, wo.samples).ok, "generated pair is not ordered");
    StructureReport s = check_structure(p, lo, hi, l1, 1.0 - l1, wo);
    o.require(s.affine_checked, "affine identity not checked");
    o.require(s.ok(kTol8), "instance " + std::to_string(k) + ": complement " + fmt(s.complement) + ", wp linear " +
                               fmt(s.wp_linear) + ", wlp affine " + fmt(s.wlp_affine) +
                               (s.monotone ? "" : ", not monotone"));
    comp = std::max(comp, s.complement);
    lin = std::max(lin, s.wp_linear);
    aff = std::max(aff, s.wlp_affine);
  }
  if (o.ok) o.detail = "100 instances, complement " + fmt(comp) + ", wp linear " + fmt(lin) + ", wlp affine " + fmt(aff) + ", monotone";
  return o;
}

Outcome ac6() {
  Outcome o;
  Rng rng = make_rng(106);
  const QVarList reg = t::qubits(2);
  const VarEnv env = {{"x", Type::Int}, {"y", Type::Int}, {"n", Type::Int}};
  const std::vector<ExprPtr> preds = {parse_expr("y = 1", env), parse_expr("x + y >= 2", env), parse_expr("n = 0 or x = 1", env)};
  double worst = 0.0;
  auto near = [&](double a, double b, const std::string& what) {
    worst = std::max(worst, std::abs(a - b));
    o.require(std::abs(a - b) <= kTol9, what + " off by " + fmt(std::abs(a - b)));
  };
  for (int k = 0; k < 500; ++k) {
    CqState d = t::random_input(rng, reg, 1 + k % 5, 0.2 + 0.8 * uniform01(rng));
    CqState d2 = t::random_input(rng, reg, 3, uniform01(rng));
    auto [lo, hi] = t::random_ordered_pair(rng, reg);
    CqAssertion th = t::random_assertion(rng, reg);
    const double e = exp_satisfy(d, th);
    o.require(e >= -kTol9 && e <= 1.0 + kTol9, "Exp outside [0, 1]: " + fmt(e));
    near(exp_satisfy(d, bot(reg)), 0.0, "Exp(bot)");
    near(exp_satisfy(d, top(reg)), trace(d), "Exp(top)");
    const double a = uniform01(rng), b = 1.0 - a;
    near(exp_satisfy(lincomb({{a, d}, {b, d2}}, false), th), a * e + b * exp_satisfy(d2, th), "state linearity");
    const double l1 = -2.0 + 4.0 * uniform01(rng), l2 = -2.0 + 4.0 * uniform01(rng);
    near(exp_satisfy(d, lin(th, hi, l1, l2)), l1 * e + l2 * exp_satisfy(d, hi), "assertion linearity");
    const ExprPtr& pr = preds[static_cast<std::size_t>(k) % preds.size()];
    near(exp_satisfy(restrict(d, pr), th), exp_satisfy(d, conj(pr, th)), "restriction law");
    SuperOp f = t::random_mixed_unitary(rng, reg, 1 + k % 3);
    near(exp_satisfy(d, apply_superop_assert(f, th)), exp_satisfy(apply_channel(adjoint_superop(f), d), th), "adjoint law");
    o.require(exp_satisfy(d, lo) <= exp_satisfy(d, hi) + kTol9, "order monotonicity");
  }
  if (o.ok) o.detail = "500 pairs, 8 invariants, max deviation " + fmt(worst);
  return o;
}

Outcome ac7() {
  Outcome o;
  DistProgram p = t::load_program("rcnot.dqp");
  Rng rng = make_rng(107);
  const CMatrix cnot = *builtin_gate("CNOT");
  double worst = 0.0;
  for (int k = 0; k < kHaarInputs; ++k) {
    const CVector alpha = haar_ket(4, rng);
    AssertionFile af = load_assertions("rcnot.dqa", p, {{"alpha", alpha}});
    const CMatrix rho = reorder(projector(tensor(alpha, bell_ket())), kRcnotOrder, p.qvars());
    std::vector<CqState> states = {single({}, rho, p.qvars())};
    Rng srng = make_rng(107, static_cast<std::uint64_t>(k) + 1);
    for (auto& s : random_test_states(p.qvars(), {complete_state({}, p.env())}, srng, 1, 2)) states.push_back(s);
    HoareTriple tr{af.assertions.at("Pre"), p, af.assertions.at("Post"), Mode::Total};
    SemanticReport sem = check_semantic(tr, states);
    o.require(sem.verdict == Verdict::Pass, "semantic check failed for draw " + std::to_string(k));
    GoodScheduler g;
    RunReport r = run(p, {}, {rho, p.qvars()}, g);
    CMatrix marg = CMatrix::Zero(4, 4);
    for (const auto& [s, m] : r.delta.entries) marg += reduce(m, p.qvars(), {{"q", 2}, {"r", 2}});
    worst = std::max(worst, max_abs_diff(marg, projector(cnot * alpha)));
  }
  o.require(worst <= kTol8, "(q, r) marginal off by " + fmt(worst));
  LoadedScript s = load_proof_script(t::program_path("rcnot.dqproof"));
  ProofOptions po;
  po.seed = 17;
  po.instances = kHaarInputs;
  po.jobs = jobs();
  ProofReport pr = run_proof_script(s, po);
  o.require(all_steps_ok(pr, "loops", "C-Dist-T"), "C-Dist-T step with t = 2 - stageA rejected");
  o.require(pr.ok, "proof script failed");
  if (o.ok) o.detail = "20 draws, marginal error " + fmt(worst) + ", C-Dist-T accepted";
  return o;
}

Outcome ac8() {
  Outcome o;
  DistProgram p = parse_program("process P { qubit q; var x: int; x :=$ {0: 1/2, 1: 1/2}; if x = 0 -> skip fi; }");
  const QVarList reg = p.qvars();
  Rng rng = make_rng(108);
  std::vector<CqState> states;
  for (int k = 0; k < 6; ++k) states.push_back(single({{"x", k % 2}}, random_density(2, rng), reg));
  SemanticReport partial = check_semantic({top(reg), p, top(reg), Mode::Partial}, states);
  SemanticReport total = check_semantic({top(reg), p, top(reg), Mode::Total}, states);
  o.require(partial.verdict == Verdict::Pass, "partial {top} S {top} rejected");
  o.require(total.verdict == Verdict::Fail, "total {top} S {top} accepted");
  o.require(std::abs(-total.min_gap - 0.5) <= kTol8, "gap " + fmt(-total.min_gap));
  DistProgram ab = parse_program("process P { qubit q; abort; }");
  RuleReport r1 = check_rule({"Abort", {}, {top(reg), ab, bot(reg), Mode::Partial}, std::nullopt}, {});
  RuleReport r2 = check_rule({"Abort-T", {}, {bot(reg), ab, bot(reg), Mode::Total}, std::nullopt}, {});
  o.require(r1.ok, "(Abort) rejected {top} abort {bot}");
  o.require(r2.ok, "(Abort-T) rejected {bot} abort {bot}");
  o.require(check_semantic({top(reg), ab, bot(reg), Mode::Partial}, states).verdict == Verdict::Pass,
            "{top} abort {bot} fails semantically");
  o.require(check_semantic({bot(reg), ab, bot(reg), Mode::Total}, states).verdict == Verdict::Pass,
            "{bot} abort {bot} fails semantically");
  if (o.ok) o.detail = "partial pass, total fail with gap " + fmt(-total.min_gap) + ", (Abort) and (Abort-T) accepted";
  return o;
}

Outcome ac9() {
  Outcome o;
  // extra traced runs on top of everything above
  DistProgram p = t::load_program("teleport.dqp");
  Rng rng = make_rng(109);
  RunOptions ro;
  ro.record_trace = true;
  for (int k = 0; k < 10; ++k) {
    RandomScheduler s(static_cast<std::uint64_t>(k));
    RunReport r = run(p, {}, {projector(tensor(haar_ket(2, rng), bell_ket())), p.qvars()}, s, ro);
    o.require(r.monotone, "Delta chain not monotone");
  }
  const Bookkeeping& b = bookkeeping();
  o.require(b.distributions.load() > 0, "no distributions recorded");
  o.require(b.bad_sums.load() == 0, std::to_string(b.bad_sums.load()) + " distributions do not sum to 1");
  o.require(b.max_sum_error.load() <= kTol9, "sum error " + fmt(b.max_sum_error.load()));
  o.require(b.chains_checked.load() > 0, "no chains checked");
  o.require(b.chain_violations.load() == 0, std::to_string(b.chain_violations.load()) + " chain violations");
  if (o.ok) {
    o.detail = std::to_string(b.distributions.load()) + " distributions, max sum error " + fmt(b.max_sum_error.load()) +
               ", " + std::to_string(b.chains_checked.load()) + " monotone chains";
  }
  return o;
}

}  // namespace

int main() {
  bookkeeping().reset();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s  %s (%.1fs)\n", name, o.ok ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
