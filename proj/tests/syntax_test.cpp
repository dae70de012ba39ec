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

#include "dqhl/parser.hpp"
#include "dqhl/printer.hpp"
#include "dqhl/syntax.hpp"
#include "dqhl/validate.hpp"
#include "fixtures.hpp"

namespace dqhl {
namespace {

using testing::load_program;

bool has_kind(const std::vector<Diagnostic>& ds, DiagKind k) {
  for (const auto& d : ds) {
    if (d.kind == k) return true;
  }
  return false;
}

TEST(Syntax, ParsesTeleport) {
  DistProgram p = load_program("teleport.dqp");
  ASSERT_EQ(p.processes.size(), 2u);
  EXPECT_EQ(p.channels, (std::vector<std::string>{"c", "d"}));
  EXPECT_EQ(p.processes[0].loop.size(), 2u);
  EXPECT_EQ(p.processes[1].loop.size(), 2u);
  EXPECT_EQ(p.processes[0].qvars.size(), 2u);
  EXPECT_TRUE(validate(p).empty());
}

TEST(Syntax, MinimalProcess) {
  DistProgram p = parse_program("process P { skip; }");
  ASSERT_EQ(p.processes.size(), 1u);
  EXPECT_TRUE(p.is_sequential());
  EXPECT_EQ(p.processes[0].init->kind, StmtKind::Skip);
}

TEST(Syntax, UndeclaredQubitIsAnError) {
  EXPECT_THROW(parse_program("process P { var x: int; x := meas q; }"), ParseError);
  EXPECT_THROW(parse_program("process P { qubit q; q, r *= CNOT; }"), ParseError);
}

TEST(Syntax, TypeErrorsAreReported) {
  EXPECT_THROW(parse_program("process P { var b: bool; b := 3; }"), ParseError);
  EXPECT_THROW(parse_program("process P { var x: int; if x -> skip fi; }"), ParseError);
}

TEST(Syntax, SharedVariableBreaksDisjointness) {
  DistProgram p = parse_program(R"(
    channels c;
    process A { var x: int; x := 0; do x = 0; c!x -> x := 1 od }
    process B { var x: int; x := 0; do x = 0; c?x -> skip od }
  )");
  EXPECT_TRUE(has_kind(validate(p), DiagKind::Disjointness));
}

TEST(Syntax, SharedQubitBreaksDisjointness) {
  DistProgram p = parse_program(R"(
    process A { qubit q; q *= H; }
    process B { qubit q; q *= X; }
  )");
  EXPECT_TRUE(has_kind(validate(p), DiagKind::Disjointness));
}

TEST(Syntax, ChannelInThreeProcessesBreaksPointToPoint) {
  DistProgram p = parse_program(R"(
    channels c;
    process A { var a: int; a := 0; do a = 0; c!a -> a := 1 od }
    process B { var b: int; b := 0; do b = 0; c?b -> b := 1 od }
    process C { var e: int; e := 0; do e = 0; c?e -> e := 1 od }
  )");
  EXPECT_TRUE(has_kind(validate(p), DiagKind::PointToPoint));
}

TEST(Syntax, VarSetsOfAlice) {
  DistProgram p = load_program("teleport.dqp");
  VarSets vs = var_sets(p.processes[0]);
  EXPECT_EQ(vs.change, (std::set<std::string>{"xA", "zA", "stageA"}));
  EXPECT_EQ(vs.chan, (std::set<std::string>{"c", "d"}));
  EXPECT_EQ(vs.qv, (std::set<std::string>{"q", "q1"}));
  EXPECT_EQ(vs.cv, (std::set<std::string>{"xA", "zA", "stageA"}));
}

TEST(Syntax, EffectOfMatchingPair) {
  IoCommand in{"c", true, "xB", nullptr};
  IoCommand out{"c", false, "", var_ref("xA")};
  StmtPtr e1 = effect(in, out);
  StmtPtr e2 = effect(out, in);
  ASSERT_EQ(e1->kind, StmtKind::Assign);
  EXPECT_EQ(e1->var, "xB");
  EXPECT_EQ(to_string(e1->expr), "xA");
  EXPECT_TRUE(same_stmt(e1, e2));
  IoCommand other{"d", false, "", var_ref("xA")};
  EXPECT_THROW(effect(in, other), ValidationError);
  EXPECT_THROW(effect(out, out), ValidationError);
}

TEST(Syntax, PrintParseRoundTrip) {
  for (const char* f : {"teleport.dqp", "rcnot.dqp"}) {
    DistProgram p = load_program(f);
    DistProgram back = parse_program(print_program(p));
    EXPECT_TRUE(same_program(p, back)) << f;
    EXPECT_EQ(print_program(back), print_program(p));
  }
}

TEST(Syntax, RoundTripOfDeclaredOperators) {
  DistProgram p = parse_program(R"(
    process P {
      qubit q; qudit r: 3; var x: int; var b: bool;
      unitary U = [[0, 1], [1, 0]];
      measurement M = {[[1, 0], [0, 0]], [[0, 0], [0, 1]]};
      q *= U; x := meas M q; r := 0;
      x :=$ {0: 1/3, 2: 2/3};
      b := x = 2 or false;
      do x > 0 -> x := x - 1 od;
    }
  )");
  DistProgram back = parse_program(print_program(p));
  EXPECT_TRUE(same_program(p, back));
}

TEST(Syntax, RandomProgramsRoundTrip) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    DistProgram p = trial % 2 ? testing::random_loop_free(rng, 2) : testing::random_two_process(rng);
    DistProgram back = parse_program(print_program(p));
    EXPECT_TRUE(same_program(p, back, 1e-9)) << print_program(p);
  }
}

TEST(Syntax, RandomAssignmentMustSumToOne) {
  EXPECT_THROW(parse_program("process P { var x: int; x :=$ {0: 1/3, 1: 1/3}; }"), ParseError);
}

}  // namespace
}  // namespace dqhl
