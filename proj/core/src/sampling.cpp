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

#include "dqhl/sampling.hpp"

#include <Eigen/QR>

namespace dqhl {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

namespace {

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  return g;
}

CMatrix isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  const CMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR();
  for (std::size_t j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

CVector haar_ket(std::size_t dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_unitary(std::size_t dim, Rng& rng) { return isometry(dim, dim, rng); }

CMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank) {
  if (rank == 0) rank = dim;
  CMatrix rho = CMatrix::Zero(dim, dim);
  double total = 0.0;
  std::vector<double> w(rank);
  for (auto& x : w) total += (x = uniform01(rng) + 1e-3);
  for (std::size_t k = 0; k < rank; ++k) rho += (w[k] / total) * projector(haar_ket(dim, rng));
  return rho;
}

CMatrix random_observable(std::size_t dim, Rng& rng) {
  const CMatrix u = random_unitary(dim, rng);
  Eigen::VectorXd d(dim);
  for (std::size_t i = 0; i < dim; ++i) d(i) = uniform01(rng);
  CMatrix m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  return (m + m.adjoint()) / 2.0;
}

std::vector<CMatrix> random_kraus(std::size_t dim, std::size_t n, Rng& rng, double scale) {
  const CMatrix v = isometry(dim * n, dim, rng);
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::sqrt(scale) * v.block(k * dim, 0, dim, dim));
  return out;
}

CqState random_cq_state(const QVarList& qvars, const std::vector<ClassicalState>& sigmas, Rng& rng, double mass,
                        bool pure) {
  CqState d;
  d.qvars = qvars;
  const std::size_t dim = total_dim(qvars);
  std::vector<double> w(sigmas.size());
  double total = 0.0;
  for (auto& x : w) total += (x = uniform01(rng) + 1e-3);
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const CMatrix rho = pure ? projector(haar_ket(dim, rng)) : random_density(dim, rng);
    d.add(sigmas[k], rho, mass * w[k] / total);
  }
  return d;
}

}  // namespace dqhl
