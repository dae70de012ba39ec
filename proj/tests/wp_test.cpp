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

#include "dqhl/gates.hpp"
#include "dqhl/parser.hpp"
#include "dqhl/wp.hpp"
#include "fixtures.hpp"

namespace dqhl {
namespace {

const QVarList kQ = {{"q", 2}};

CVector plus() { return CVector::Constant(2, 1.0 / std::sqrt(2.0)); }

WpOptions opts_for(const DistProgram& p) {
  WpOptions o;
  o.env = p.env();
  return o;
}

TEST(Wp, HadamardOnZero) {
  DistProgram p = parse_program("process P { qubit q; q *= H; }");
  WpResult r = wp(p.processes[0].init, atom(bool_lit(true), basis_projector(2, 0), kQ), opts_for(p));
  EXPECT_LT(max_abs_diff(eval_at(r.assertion, {}), projector(plus())), 1e-12);
  EXPECT_EQ(r.iterations, 0u);
}

TEST(Wp, Abort) {
  Rng rng = make_rng(41);
  CqAssertion t = testing::random_assertion(rng, kQ);
  const auto states = testing::small_states();
  EXPECT_LT(max_distance(wlp(mk_abort(), t).assertion, top(kQ), states), 1e-15);
  EXPECT_LT(max_distance(wp(mk_abort(), t).assertion, bot(kQ), states), 1e-15);
}

TEST(Wp, SkipDualityIsExact) {
  Rng rng = make_rng(42);
  DistProgram p = testing::wrap(mk_skip(), kQ);
  std::vector<CqState> in;
  for (int k = 0; k < 5; ++k) in.push_back(testing::random_input(rng, kQ, 4, uniform01(rng)));
  for (XpMode m : {XpMode::Wp, XpMode::Wlp}) {
    DualityReport r = check_duality(p, testing::random_assertion(rng, kQ), in, m);
    EXPECT_TRUE(r.ok);
    EXPECT_LT(r.max_deviation, 1e-14);
  }
}

TEST(Wp, CounterLoop) {
  DistProgram p = parse_program(R"(
    process P { qubit q; var n: int;
      do n > 0 -> q *= X; n := n - 1 od; }
  )");
  WpOptions o = opts_for(p);
  o.domains["n"] = {0, 4};
  WpResult r = wp(p.processes[0].init, atom(bool_lit(true), basis_projector(2, 0), kQ), o);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.iterations, 0u);
  for (std::int64_t n = 0; n <= 4; ++n) {
    EXPECT_LT(max_abs_diff(eval_at(r.assertion, {{"n", n}}), basis_projector(2, static_cast<std::size_t>(n % 2))), 1e-12)
        << n;
  }
}

TEST(Wp, GeometricLoopTerminatesAlmostSurely) {
  DistProgram p = parse_program(R"(
    process P { qubit q; var x: int;
      do x = 0 -> q *= H; x := meas q od; }
  )");
  WpOptions o = opts_for(p);
  o.domains["x"] = {0, 1};
  WpResult r = wp(p.processes[0].init, top(kQ), o);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(max_distance(r.assertion, top(kQ), {{{"x", 0}}, {{"x", 1}}}), 1e-9);
  // only |1> survives when the postcondition asks for it, from x = 0 everything ends in |1>
  WpResult one = wp(p.processes[0].init, atom(bool_lit(true), basis_projector(2, 1), kQ), o);
  EXPECT_LT(max_abs_diff(eval_at(one.assertion, {{"x", 0}}), identity(2)), 1e-9);
  EXPECT_LT(max_abs_diff(eval_at(one.assertion, {{"x", 1}}), basis_projector(2, 1)), 1e-12);
}

TEST(Wp, ComplementOnMeasurement) {
  DistProgram p = parse_program(R"(
    process P { qubit q; var x: int;
      q *= H; x := meas q; if x = 0 -> q *= X [] x = 1 -> skip fi; }
  )");
  Rng rng = make_rng(43);
  for (int k = 0; k < 10; ++k) {
    CqAssertion t = testing::random_assertion(rng, kQ);
    StructureReport s = check_structure(p, t, testing::random_assertion(rng, kQ), 0.5, 0.5, opts_for(p));
    EXPECT_LT(s.complement, 1e-12);
  }
}

TEST(Wp, PartialAlternativeCountsAsNontermination) {
  DistProgram p = parse_program("process P { qubit q; var x: int; if x = 0 -> skip fi; }");
  CqAssertion b = bot(kQ);
  WpOptions o = opts_for(p);
  o.domains["x"] = {0, 1};
  EXPECT_LT(max_abs_diff(eval_at(wlp(p.processes[0].init, b, o).assertion, {{"x", 1}}), identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(eval_at(wp(p.processes[0].init, top(kQ), o).assertion, {{"x", 1}}), zeros(2)), 1e-15);
}

TEST(Wp, LinearityAndAffinity) {
  Rng rng = make_rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    DistProgram p = trial % 3 ? testing::random_loop_free(rng, 2) : testing::random_bounded_loop(rng, 1);
    const QVarList reg = p.qvars();
    CqAssertion a = testing::random_assertion(rng, reg), b = testing::random_assertion(rng, reg);
    StructureReport lin2 = check_structure(p, a, b, 2.0, -1.0, opts_for(p));
    EXPECT_LT(lin2.wp_linear, 1e-9);
    StructureReport half = check_structure(p, a, b, 0.5, 0.5, opts_for(p));
    EXPECT_TRUE(half.affine_checked);
    EXPECT_LT(half.wlp_affine, 1e-9);
    EXPECT_TRUE(half.ok());
  }
}

TEST(Wp, MonotoneInThePostcondition) {
  Rng rng = make_rng(45);
  for (int trial = 0; trial < 15; ++trial) {
    DistProgram p = testing::random_loop_free(rng, 2);
    auto [lo, hi] = testing::random_ordered_pair(rng, p.qvars());
    ASSERT_TRUE(lesssim(lo, hi, testing::small_states()).ok);
    EXPECT_TRUE(check_structure(p, lo, hi, 0.5, 0.5, opts_for(p)).monotone);
  }
}

TEST(Wp, LoopFreeNeedsNoIterations) {
  Rng rng = make_rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    DistProgram p = testing::random_loop_free(rng, 2);
    WpResult r = wp(p.processes[0].init, testing::random_assertion(rng, p.qvars()), opts_for(p));
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_TRUE(r.converged);
  }
}

TEST(Wp, DualityOnRandomPrograms) {
  Rng rng = make_rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    DistProgram p = trial % 4 == 0 ? testing::random_bounded_loop(rng, 2) : testing::random_loop_free(rng, 2);
    const QVarList reg = p.qvars();
    std::vector<CqState> in = {testing::random_input(rng, reg, 3, 1.0), testing::random_input(rng, reg, 5, 0.6)};
    CqAssertion post = testing::random_assertion(rng, reg);
    for (XpMode m : {XpMode::Wp, XpMode::Wlp}) {
      DualityReport r = check_duality(p, post, in, m);
      EXPECT_TRUE(r.ok) << mode_name(m) << " deviation " << r.max_deviation;
    }
  }
}

TEST(Wp, DistributedProgramGoesThroughSequentialisation) {
  DistProgram p = testing::load_program("teleport.dqp");
  Rng rng = make_rng(48);
  const CVector psi = haar_ket(2, rng);
  CqAssertion post = atom_ket(bool_lit(true), psi, {{"q2", 2}});
  CqState in = single({}, projector(tensor(psi, bell_ket())), p.qvars());
  for (XpMode m : {XpMode::Wp, XpMode::Wlp}) {
    DualityReport r = check_duality(p, post, {in}, m);
    EXPECT_TRUE(r.ok) << mode_name(m);
  }
  WpOptions o;
  o.samples = {complete_state({}, p.env())};
  WpResult r = xp_program(XpMode::Wp, p, post, o);
  CqState d = complete_states(in, p.env());
  EXPECT_NEAR(exp_satisfy(d, pad(r.assertion, p.qvars())), 1.0, 1e-10);
}

}  // namespace
}  // namespace dqhl
