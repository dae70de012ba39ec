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

#include "dqhl/cqstate.hpp"
#include "dqhl/gates.hpp"
#include "dqhl/parser.hpp"
#include "dqhl/sampling.hpp"
#include "generators.hpp"

namespace dqhl {
namespace {

const QVarList kReg = {{"q", 2}, {"q1", 2}, {"q2", 2}};

VarEnv teleport_env() {
  VarEnv e;
  for (const char* v : {"xA", "zA", "stageA", "xB", "zB", "stageB"}) e[v] = Type::Int;
  return e;
}

// Final state of Teleport on |psi>: 1/4 [|j, i, psi>] at the (i, j) branch.
CqState delta_pi(const CVector& psi) {
  CqState d(kReg);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ClassicalState s = {{"xA", i}, {"zA", j}, {"stageA", 2}, {"stageB", 2}, {"xB", i}, {"zB", j}};
      CVector k = tensor(qubit_ket({j, i}), psi);
      d.add(s, projector(k), 0.25);
    }
  }
  return d;
}

TEST(CqState, TraceAndRestriction) {
  Rng rng = make_rng(1);
  CqState d = delta_pi(haar_ket(2, rng));
  EXPECT_NEAR(trace(d), 1.0, 1e-12);
  CqState half = restrict(d, parse_expr("xA = 0", teleport_env()));
  EXPECT_EQ(half.size(), 2u);
  EXPECT_NEAR(trace(half), 0.5, 1e-12);
  EXPECT_NEAR(trace(restrict(d, parse_expr("xA = 0 and zA = 1", teleport_env()))), 0.25, 1e-12);
  EXPECT_TRUE(restrict(d, parse_expr("stageA = 0", teleport_env())).empty());
}

TEST(CqState, LincombCancels) {
  Rng rng = make_rng(2);
  CqState d = delta_pi(haar_ket(2, rng));
  CqState d2 = delta_pi(haar_ket(2, rng));
  CqState back = lincomb({{1.0, d2}, {-1.0, d}, {1.0, d}});
  EXPECT_LT(max_deviation(back, d2), 1e-12);
  EXPECT_THROW(lincomb({{1.0, d}, {-1.0, d2}}), CqStateError);
}

TEST(CqState, OrderIsEntrywiseLoewner) {
  const ClassicalState s = {{"x", 0}};
  CqState mixed = single(s, identity(2) / 2.0, {{"q", 2}});
  CqState zero = single(s, basis_projector(2, 0), {{"q", 2}});
  EXPECT_FALSE(cq_leq(mixed, zero));
  EXPECT_FALSE(cq_leq(zero, mixed));
  EXPECT_TRUE(cq_leq(scale(zero, 0.5), mixed));
  EXPECT_TRUE(cq_leq(CqState({{"q", 2}}), zero));
}

TEST(CqState, RestrictionsPartitionTheState) {
  Rng rng = make_rng(3);
  VarEnv env = {{"x", Type::Int}, {"y", Type::Int}, {"n", Type::Int}};
  const ExprPtr b = parse_expr("x + y = 2 or n = 1", env);
  for (int trial = 0; trial < 50; ++trial) {
    CqState d = testing::random_input(rng, testing::qubits(2), 6, uniform01(rng));
    CqState sum = add(restrict(d, b), restrict(d, mk_not(b)));
    EXPECT_LT(max_deviation(sum, d), 1e-12);
  }
}

TEST(CqState, TraceIsLinear) {
  Rng rng = make_rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    CqState a = testing::random_input(rng, testing::qubits(1), 3, uniform01(rng));
    CqState b = testing::random_input(rng, testing::qubits(1), 3, uniform01(rng));
    const double la = 0.5 * uniform01(rng), lb = 0.5 * uniform01(rng);
    EXPECT_NEAR(trace(lincomb({{la, a}, {lb, b}})), la * trace(a) + lb * trace(b), 1e-12);
  }
}

TEST(CqState, ReduceAndExtend) {
  Rng rng = make_rng(5);
  const CVector psi = haar_ket(2, rng);
  CqState d = delta_pi(psi);
  CqState r = reduce_state(d, {"q2"});
  for (const auto& [s, m] : r.entries) EXPECT_LT(max_abs_diff(m, 0.25 * projector(psi)), 1e-12);
  CqState e = extend_state(r, {{"q2", 2}, {"a", 2}});
  for (const auto& [s, m] : e.entries) {
    EXPECT_LT(max_abs_diff(m, 0.25 * tensor(projector(psi), basis_projector(2, 0))), 1e-12);
  }
}

TEST(CqState, Validity) {
  const QVarList reg = {{"q", 2}};
  CqState d = single({{"x", 0}}, basis_projector(2, 0), reg);
  EXPECT_TRUE(is_valid(d));
  d.add({{"x", 1}}, basis_projector(2, 1));
  std::string why;
  EXPECT_FALSE(is_valid(d, kTol, &why));
  EXPECT_FALSE(why.empty());
}

}  // namespace
}  // namespace dqhl
