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

#include <optional>
#include <string>
#include <vector>

#include "dqhl/linalg.hpp"

namespace dqhl {

// I, X, Y, Z, H, S, T (one qubit) and CNOT, CZ, SWAP (two qubits).
std::optional<CMatrix> builtin_gate(const std::string& name);
bool is_builtin_gate(const std::string& name);
const std::vector<std::string>& builtin_gate_names();

// Computational-basis projectors |k><k| for k < dim.
std::vector<CMatrix> computational_measurement(std::size_t dim);

CMatrix matrix_power(const CMatrix& m, int k);

CVector basis_ket(std::size_t dim, std::size_t k);
// |k_1 ... k_n> over qubits.
CVector qubit_ket(const std::vector<int>& bits);
// (|00> + |11>) / sqrt 2
CVector bell_ket();

}  // namespace dqhl
