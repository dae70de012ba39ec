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

#include "dqhl/gates.hpp"

#include <cmath>

namespace dqhl {

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

std::optional<CMatrix> builtin_gate(const std::string& name) {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "I") return identity(2);
  if (name == "X") return mat2(0, 1, 1, 0);
  if (name == "Y") return mat2(0, -i, i, 0);
  if (name == "Z") return mat2(1, 0, 0, -1);
  if (name == "H") return mat2(r, r, r, -r);
  if (name == "S") return mat2(1, 0, 0, i);
  if (name == "T") return mat2(1, 0, 0, std::exp(i * (M_PI / 4.0)));
  if (name == "CNOT") {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (name == "CZ") {
    CMatrix m = identity(4);
    m(3, 3) = -1.0;
    return m;
  }
  if (name == "SWAP") {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
  }
  return std::nullopt;
}

bool is_builtin_gate(const std::string& name) { return builtin_gate(name).has_value(); }

const std::vector<std::string>& builtin_gate_names() {
  static const std::vector<std::string> names = {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "SWAP"};
  return names;
}

std::vector<CMatrix> computational_measurement(std::size_t dim) {
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < dim; ++k) out.push_back(basis_projector(dim, k));
  return out;
}

CMatrix matrix_power(const CMatrix& m, int k) {
  if (k < 0) throw LinalgError("negative matrix power");
  CMatrix out = identity(m.rows());
  for (int n = 0; n < k; ++n) out = out * m;
  return out;
}

CVector basis_ket(std::size_t dim, std::size_t k) {
  CVector v = CVector::Zero(dim);
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

CVector qubit_ket(const std::vector<int>& bits) {
  std::size_t index = 0;
  for (int b : bits) index = index * 2 + static_cast<std::size_t>(b & 1);
  return basis_ket(std::size_t{1} << bits.size(), index);
}

CVector bell_ket() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace dqhl
