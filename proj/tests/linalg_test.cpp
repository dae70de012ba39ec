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
#include "dqhl/linalg.hpp"
#include "dqhl/sampling.hpp"

namespace dqhl {
namespace {

const QVar q{"q", 2}, q1{"q1", 2}, r{"r", 2};

CVector plus() {
  CVector k(2);
  k << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return k;
}

TEST(Linalg, CnotOnPlusZeroGivesBell) {
  DensityOp rho{projector(tensor(plus(), basis_ket(2, 0))), {q, q1}};
  SuperOp cnot{{*builtin_gate("CNOT")}, {q, q1}, {q, q1}};
  DensityOp out = apply_superop(cnot, rho);
  EXPECT_LT(max_abs_diff(out.matrix, projector(bell_ket())), 1e-12);
}

TEST(Linalg, MeasuringPlusGivesMaximallyMixed) {
  SuperOp meas{computational_measurement(2), {q}, {q}};
  DensityOp out = apply_superop(meas, {projector(plus()), {q}});
  EXPECT_LT(max_abs_diff(out.matrix, identity(2) / 2.0), 1e-12);
}

TEST(Linalg, PlusIsNotBelowHalfIdentity) {
  EXPECT_FALSE(loewner_leq(projector(plus()), identity(2) / 2.0));
  EXPECT_TRUE(loewner_leq(identity(2) / 2.0, identity(2)));
}

TEST(Linalg, EmbedOrdersOperands) {
  // CNOT on (q1, q) inside (q, q1) is the reversed CNOT
  const CMatrix c = *builtin_gate("CNOT");
  const CMatrix sw = *builtin_gate("SWAP");
  EXPECT_LT(max_abs_diff(embed(c, {q1, q}, {q, q1}), sw * c * sw), 1e-12);
  EXPECT_LT(max_abs_diff(embed(*builtin_gate("X"), {q1}, {q, q1}), tensor(identity(2), *builtin_gate("X"))), 1e-12);
}

TEST(Linalg, PartialTraceOfBell) {
  DensityOp b{projector(bell_ket()), {q, q1}};
  EXPECT_LT(max_abs_diff(partial_trace(b, {"q1"}).matrix, identity(2) / 2.0), 1e-12);
  CMatrix prod = tensor(projector(plus()), basis_projector(2, 1));
  EXPECT_LT(max_abs_diff(reduce(prod, {q, q1}, {q1, q}), tensor(basis_projector(2, 1), projector(plus()))), 1e-12);
}

TEST(Linalg, AdjointTraceIdentity) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    SuperOp e{random_kraus(4, 3, rng, 0.7), {q, q1}, {q, q1}};
    const CMatrix rho = random_density(4, rng);
    const CMatrix m = random_observable(4, rng);
    const Complex lhs = (m * apply_superop(e, {rho, {q, q1}}).matrix).trace();
    SuperOp ed = adjoint_superop(e);
    const Complex rhs = (apply_superop(ed, {m, {q, q1}}).matrix * rho).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10);
  }
}

TEST(Linalg, ChannelOutputsStayHermitianAndTraceBounded) {
  Rng rng = make_rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    SuperOp e{random_kraus(2, 2, rng, uniform01(rng)), {r}, {r}};
    EXPECT_TRUE(is_trace_nonincreasing(e));
    DensityOp out = apply_superop(e, {random_density(4, rng), {q, r}});
    EXPECT_LT(hermiticity_residual(out.matrix), 1e-12);
    EXPECT_TRUE(is_partial_density(out.matrix));
  }
}

TEST(Linalg, LoewnerIsAPartialOrder) {
  Rng rng = make_rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_observable(3, rng);
    const CMatrix p = random_density(3, rng);
    const CMatrix b = a + 0.3 * p;
    const CMatrix c = b + 0.2 * random_density(3, rng);
    EXPECT_TRUE(loewner_leq(a, a));
    EXPECT_TRUE(loewner_leq(a, b));
    EXPECT_TRUE(loewner_leq(b, c));
    EXPECT_TRUE(loewner_leq(a, c));
    EXPECT_FALSE(loewner_leq(b, a));
  }
}

TEST(Linalg, TensorIsAssociative) {
  Rng rng = make_rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_unitary(2, rng), b = random_density(3, rng), c = random_observable(2, rng);
    EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
  }
}

TEST(Linalg, MinEigenvectorWitnessesNegativity) {
  CMatrix m = projector(plus()) - identity(2) / 2.0 - 0.1 * identity(2);
  const CVector w = min_eigenvector(m);
  EXPECT_NEAR(min_eigenvalue(m), -0.6, 1e-12);
  EXPECT_NEAR((w.adjoint() * m * w)(0, 0).real(), -0.6, 1e-12);
}

TEST(Linalg, RejectsBadInput) {
  EXPECT_FALSE(is_unitary(projector(plus())));
  EXPECT_FALSE(is_psd(-identity(2)));
  EXPECT_THROW(embed(identity(2), {{"z", 2}}, {q}), LinalgError);
}

}  // namespace
}  // namespace dqhl
