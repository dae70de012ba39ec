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

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dqhl/expr.hpp"

namespace dqhl {

// Inclusive integer range used to enumerate sample classical states.
struct Domain {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
using DomainMap = std::map<std::string, Domain>;

// Adds every variable of `env` missing from `sigma` with value 0 (false).
ClassicalState complete_state(const ClassicalState& sigma, const VarEnv& env);

// Keeps only the variables in `keep`.
ClassicalState project(const ClassicalState& sigma, const VarEnv& keep);

// Default sampling domain for a variable: {0, 1} for booleans, [lo, hi] for integers.
Domain default_domain(Type t, std::int64_t int_lo = -1, std::int64_t int_hi = 3);

// Cartesian product of the domains of every variable in `env` (variables
// without an entry in `domains` use default_domain). When the product exceeds
// `cap`, a deterministic, evenly strided subsample of size `cap` is returned.
std::vector<ClassicalState> enumerate_states(const VarEnv& env, const DomainMap& domains, std::size_t cap = 4096);

}  // namespace dqhl
