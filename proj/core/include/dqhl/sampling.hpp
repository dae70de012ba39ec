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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dqhl/cqstate.hpp"
#include "dqhl/linalg.hpp"

namespace dqhl {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent streams from one seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) { return Rng(derive_seed(seed, stream)); }

// Normalised complex Gaussian vector.
CVector haar_ket(std::size_t dim, Rng& rng);
// QR of a Ginibre matrix with the phases of R's diagonal removed.
CMatrix random_unitary(std::size_t dim, Rng& rng);
// Mixture of `rank` Haar kets with random weights, trace 1.
CMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank = 0);
// U diag(u) U† with u uniform in [0, 1].
CMatrix random_observable(std::size_t dim, Rng& rng);
// n Kraus operators dim x dim with Σ K†K = scale·I (scale in (0, 1]).
std::vector<CMatrix> random_kraus(std::size_t dim, std::size_t n, Rng& rng, double scale = 1.0);

// Σ_σ over the given classical states with random weights summing to `mass`.
CqState random_cq_state(const QVarList& qvars, const std::vector<ClassicalState>& sigmas, Rng& rng,
                        double mass = 1.0, bool pure = false);

double uniform01(Rng& rng);
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

}  // namespace dqhl
