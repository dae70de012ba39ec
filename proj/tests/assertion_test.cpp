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

#include <gtest/gtest.h>

#include <cmath>

#include "dqhl/assertion.hpp"
#include "dqhl/assertion_parser.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/gates.hpp"
#include "dqhl/hoare.hpp"
#include "dqhl/parser.hpp"
#include "dqhl/seqtransform.hpp"
#include "fixtures.hpp"

namespace dqhl {
namespace {

const QVarList kQ = {{"q", 2}};
const QVarList kQQ = {{"q", 2}, {"q1", 2}};
const VarEnv kEnv = {{"x", Type::Int}, {"y", Type::Int}, {"n", Type::Int}};

CVector plus() { return CVector::Constant(2, 1.0 / std::sqrt(2.0)); }

TEST(Assertion, BellAgainstZeroZero) {
  CqState d = single({}, projector(bell_ket()), kQQ);
  EXPECT_NEAR(exp_satisfy(d, atom(bool_lit(true), basis_projector(4, 0), kQQ)), 0.5, 1e-12);
  EXPECT_NEAR(exp_satisfy(d, top(kQQ)), 1.0, 1e-12);
  EXPECT_NEAR(exp_satisfy(d, bot(kQQ)), 0.0, 1e-15);
}

TEST(Assertion, PaddedOnSmallerRegister) {
  CqState d = single({}, projector(tensor(plus(), basis_ket(2, 1))), kQQ);
  CqAssertion on_q1 = atom_ket(bool_lit(true), basis_ket(2, 1), {{"q1", 2}});
  EXPECT_NEAR(exp_satisfy(d, on_q1), 1.0, 1e-12);
  CqAssertion padded = pad(on_q1, kQQ);
  EXPECT_LT(max_abs_diff(eval_at(padded, {}), tensor(identity(2), basis_projector(2, 1))), 1e-12);
}

TEST(Assertion, SubstitutionLaw) {
  Rng rng = make_rng(31);
  const ExprPtr e = parse_expr("(x + y + 1) mod 3", kEnv);
  for (int trial = 0; trial < 40; ++trial) {
    CqState d = testing::random_input(rng, kQ, 5, uniform01(rng));
    CqAssertion t = testing::random_assertion(rng, kQ);
    const double lhs = exp_satisfy(d, subst(t, "x", e));
    const double rhs = exp_satisfy(denote_seq(mk_assign("x", e), d).state, t);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(Assertion, GuardSplitSumsBack) {
  Rng rng = make_rng(32);
  const ExprPtr b = parse_expr("y = 1 or n = 0", kEnv);
  for (int trial = 0; trial < 20; ++trial) {
    CqAssertion t = testing::random_assertion(rng, kQQ);
    CqAssertion sum = lin(conj(b, t), conj(mk_not(b), t), 1.0, 1.0);
    EXPECT_LT(max_distance(sum, t, testing::small_states()), 1e-12);
  }
}

TEST(Assertion, HadamardPullsZeroBackToPlus) {
  CqAssertion zero = atom(bool_lit(true), basis_projector(2, 0), kQ);
  CqAssertion back = pullback(zero, {*builtin_gate("H")}, kQ);
  EXPECT_LT(max_abs_diff(eval_at(back, {}), projector(plus())), 1e-12);
}

TEST(Assertion, SuperopActionMatchesKraus) {
  Rng rng = make_rng(33);
  SuperOp f = testing::random_mixed_unitary(rng, kQ, 3);
  CqAssertion t = testing::random_assertion(rng, kQ);
  CqAssertion ft = apply_superop_assert(f, t);
  for (const auto& s : testing::small_states()) {
    CMatrix want = CMatrix::Zero(2, 2);
    for (const auto& k : f.kraus) want += k * eval_at(t, s) * k.adjoint();
    EXPECT_LT(max_abs_diff(eval_at(ft, s), want), 1e-12);
  }
}

TEST(Assertion, ComplementAndSpectrum) {
  Rng rng = make_rng(34);
  CqAssertion t = testing::random_assertion(rng, kQQ);
  EXPECT_TRUE(check_spectrum(t, testing::small_states()).ok);
  CqAssertion c = complement(t);
  EXPECT_TRUE(check_spectrum(c, testing::small_states()).ok);
  EXPECT_LT(max_distance(lin(t, c, 1, 1), top(kQQ), testing::small_states()), 1e-12);
  EXPECT_FALSE(check_spectrum(lin(t, top(kQQ), 1, 1.5), testing::small_states()).ok);
}

TEST(Assertion, LesssimReportsWitness) {
  CqAssertion plus_a = atom_ket(bool_lit(true), plus(), kQ);
  CqAssertion half = atom(bool_lit(true), identity(2) / 2.0, kQ);
  LessReport r = lesssim(plus_a, half, {{{"x", 0}}});
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-12);
  EXPECT_NEAR(std::abs(plus().dot(r.eigenvector)), 1.0, 1e-9);
  EXPECT_TRUE(lesssim(half, top(kQ), {{{"x", 0}}}).ok);
}

TEST(Assertion, OverlapLint) {
  CqAssertion t;
  t.qvars = kQ;
  t.clauses = {{parse_expr("x = 0", kEnv), basis_projector(2, 0)}, {parse_expr("x < 1", kEnv), basis_projector(2, 1)}};
  auto hits = overlap_lint(t, testing::small_states());
  EXPECT_FALSE(hits.empty());
  for (const auto& s : hits) EXPECT_EQ(s.at("x"), 0);
}

TEST(Assertion, SimplifyMergesEqualGuards) {
  CqAssertion t = lin(atom(parse_expr("x = 1", kEnv), 0.25 * identity(2), kQ),
                      atom(parse_expr("x = 1", kEnv), 0.5 * identity(2), kQ), 1, 1);
  CqAssertion s = simplify(conj(bool_lit(true), t));
  ASSERT_EQ(s.clauses.size(), 1u);
  EXPECT_LT(max_abs_diff(s.clauses[0].obs, 0.75 * identity(2)), 1e-12);
  EXPECT_TRUE(simplify(conj(bool_lit(false), t)).clauses.empty());
}

class TeleportAssertions : public ::testing::Test {
 protected:
  void SetUp() override {
    program = testing::load_program("teleport.dqp");
    seq = sequentialise(program);
    Rng rng = make_rng(35);
    psi = haar_ket(2, rng);
    AssertionContext ctx;
    ctx.params["psi"] = psi;
    ctx.env = program.env();
    ctx.preds["TERM"] = seq.term;
    ctx.preds["BLOCK"] = seq.block;
    file = parse_assertion_file(testing::read_file(testing::program_path("teleport.dqa")), ctx);
    samples = reachable_states(program, {complete_state({}, program.env())});
  }
  DistProgram program;
  SeqTransformResult seq;
  CVector psi;
  AssertionFile file;
  std::vector<ClassicalState> samples;
};

TEST_F(TeleportAssertions, InvariantAtTermBoundsPost) {
  const CqAssertion& inv = file.assertions.at("Psi");
  CqAssertion at_term = conj(seq.term, inv);
  EXPECT_TRUE(lesssim(at_term, file.assertions.at("Post"), samples).ok);
  EXPECT_TRUE(check_spectrum(inv, samples).ok);
  EXPECT_TRUE(overlap_lint(inv, samples).empty());
}

TEST_F(TeleportAssertions, QuarterInvariantDoesNotBoundPost) {
  CqAssertion quarter = lin(file.assertions.at("Psi"), bot(file.qvars), 0.25, 0.0);
  CqAssertion post = lin(file.assertions.at("Post"), bot(file.qvars), 1.0, 0.0);
  EXPECT_TRUE(lesssim(conj(seq.term, quarter), post, samples).ok);
  // ... but it is too weak to follow from Pre: Exp(Pre) = 1 while the invariant only gives 1/4
  CqState d = complete_states(single({}, projector(tensor(psi, bell_ket())), file.qvars), program.env());
  EXPECT_NEAR(exp_satisfy(d, file.assertions.at("Pre")), 1.0, 1e-10);
  CqState out = restrict(denote(program, d).state, seq.term);
  EXPECT_NEAR(exp_satisfy(out, quarter), 0.25, 1e-10);
}

TEST_F(TeleportAssertions, PostOnFinalState) {
  CqState d = complete_states(single({}, projector(tensor(psi, bell_ket())), file.qvars), program.env());
  CqState out = denote(program, d).state;
  EXPECT_NEAR(exp_satisfy(out, file.assertions.at("Post")), 1.0, 1e-10);
  EXPECT_NEAR(exp_satisfy(out, conj(seq.term, file.assertions.at("Psi"))), 1.0, 1e-10);
}

}  // namespace
}  // namespace dqhl
