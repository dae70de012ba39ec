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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dqhl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Default tolerance for Hermiticity, positivity and Loewner-order checks.
inline constexpr double kTol = 1e-9;

class LinalgError : public std::runtime_error {
 public:
  explicit LinalgError(const std::string& what) : std::runtime_error(what) {}
};

// A named quantum variable together with the dimension of its state space.
struct QVar {
  std::string name;
  int dim = 2;

  friend bool operator==(const QVar&, const QVar&) = default;
};

// Ordered list of quantum variables. The composite basis index of
// |k_1>...|k_n> is k = sum_i k_i * d_{i+1} * ... * d_n (first variable is
// the most significant digit).
using QVarList = std::vector<QVar>;

std::size_t total_dim(const QVarList& vars);
// Position of `name` in `vars`, or -1.
int index_of(const QVarList& vars, std::string_view name);
bool contains(const QVarList& vars, std::string_view name);
bool is_subset(const QVarList& sub, const QVarList& super);
// `a` followed by the members of `b` not already in `a`.
QVarList union_of(const QVarList& a, const QVarList& b);
std::string to_string(const QVarList& vars);

// Partial density operator on an ordered register.
struct DensityOp {
  CMatrix matrix;
  QVarList qvars;
};

// Hermitian operator with spectrum in [0, 1] on an ordered register.
struct Observable {
  CMatrix matrix;
  QVarList qvars;
};

// Completely positive map in Kraus form: E(A) = sum_i K_i A K_i^dagger.
// Each Kraus matrix is dim(qvars_out) x dim(qvars_in).
struct SuperOp {
  std::vector<CMatrix> kraus;
  QVarList qvars_in;
  QVarList qvars_out;
};

CMatrix identity(std::size_t dim);
CMatrix zeros(std::size_t dim);
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix projector(const CVector& ket);
CMatrix basis_projector(std::size_t dim, std::size_t k);

// Lift `op`, acting on `op_vars` (in that order), to an operator on `full`
// that acts as the identity on every other variable.
CMatrix embed(const CMatrix& op, const QVarList& op_vars, const QVarList& full);

// Trace out every variable of `full` that is not in `keep`. The result is
// expressed in the order of `keep`.
CMatrix reduce(const CMatrix& m, const QVarList& full, const QVarList& keep);

DensityOp partial_trace(const DensityOp& rho, const std::vector<std::string>& keep);

// Applies the channel to the register of `rho`. When the channel acts on a
// strict subset of `rho.qvars` it must preserve that subset.
DensityOp apply_superop(const SuperOp& e, const DensityOp& rho);

// Heisenberg-picture dual: Kraus operators daggered, input and output swapped.
SuperOp adjoint_superop(const SuperOp& e);
// sum_i K_i^dagger K_i
CMatrix kraus_completeness(const std::vector<CMatrix>& kraus);
bool is_trace_nonincreasing(const SuperOp& e, double tol = kTol);

// Eigenvalues of the Hermitian part of `m`, ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);
double min_eigenvalue(const CMatrix& m);
double max_eigenvalue(const CMatrix& m);
// Unit eigenvector for the smallest eigenvalue of the Hermitian part.
CVector min_eigenvector(const CMatrix& m);

// max |m - m^dagger| over entries.
double hermiticity_residual(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kTol);
bool is_psd(const CMatrix& m, double tol = kTol);
bool is_unitary(const CMatrix& m, double tol = kTol);
bool is_partial_density(const CMatrix& m, double tol = kTol);
bool is_effect(const CMatrix& m, double tol = kTol);

// Loewner order: b - a is positive semidefinite within tol.
bool loewner_leq(const CMatrix& a, const CMatrix& b, double tol = kTol);
bool loewner_leq(const Observable& a, const Observable& b, double tol = kTol);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double operator_norm(const CMatrix& m);
double real_trace(const CMatrix& m);

}  // namespace dqhl
