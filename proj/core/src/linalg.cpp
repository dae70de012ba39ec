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

#include "dqhl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dqhl {

namespace {

std::vector<int> dims_of(const QVarList& vars) {
  std::vector<int> d;
  d.reserve(vars.size());
  for (const auto& v : vars) d.push_back(v.dim);
  return d;
}

// Mixed-radix digits of `index`, most significant first.
void split(std::size_t index, const std::vector<int>& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
    index /= static_cast<std::size_t>(dims[i]);
  }
}

std::vector<int> positions_in(const QVarList& sub, const QVarList& full) {
  std::vector<int> pos;
  pos.reserve(sub.size());
  for (const auto& v : sub) {
    int p = index_of(full, v.name);
    if (p < 0) throw LinalgError("quantum variable '" + v.name + "' not in register " + to_string(full));
    if (full[p].dim != v.dim) {
      throw LinalgError("dimension mismatch for quantum variable '" + v.name + "'");
    }
    if (std::count(pos.begin(), pos.end(), p) != 0) {
      throw LinalgError("quantum variable '" + v.name + "' listed twice");
    }
    pos.push_back(p);
  }
  return pos;
}

Eigen::MatrixXcd hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

std::size_t total_dim(const QVarList& vars) {
  std::size_t d = 1;
  for (const auto& v : vars) d *= static_cast<std::size_t>(v.dim);
  return d;
}

int index_of(const QVarList& vars, std::string_view name) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool contains(const QVarList& vars, std::string_view name) { return index_of(vars, name) >= 0; }

bool is_subset(const QVarList& sub, const QVarList& super) {
  return std::all_of(sub.begin(), sub.end(), [&](const QVar& v) { return contains(super, v.name); });
}

QVarList union_of(const QVarList& a, const QVarList& b) {
  QVarList out = a;
  for (const auto& v : b) {
    if (!contains(out, v.name)) out.push_back(v);
  }
  return out;
}

std::string to_string(const QVarList& vars) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) os << ", ";
    os << vars[i].name;
    if (vars[i].dim != 2) os << ':' << vars[i].dim;
  }
  os << ']';
  return os.str();
}

CMatrix identity(std::size_t dim) { return CMatrix::Identity(dim, dim); }
CMatrix zeros(std::size_t dim) { return CMatrix::Zero(dim, dim); }

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix projector(const CVector& ket) { return ket * ket.adjoint(); }

CMatrix basis_projector(std::size_t dim, std::size_t k) {
  CMatrix p = zeros(dim);
  p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return p;
}

CMatrix embed(const CMatrix& op, const QVarList& op_vars, const QVarList& full) {
  const std::size_t op_dim = total_dim(op_vars);
  if (static_cast<std::size_t>(op.rows()) != op_dim || static_cast<std::size_t>(op.cols()) != op_dim) {
    throw LinalgError("operator of size " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                      " does not act on " + to_string(op_vars));
  }
  const auto pos = positions_in(op_vars, full);
  if (op_vars.size() == full.size()) {
    bool same_order = true;
    for (std::size_t i = 0; i < pos.size(); ++i) same_order = same_order && pos[i] == static_cast<int>(i);
    if (same_order) return op;
  }
  const auto dims = dims_of(full);
  const std::size_t dim = total_dim(full);
  std::vector<bool> in_op(full.size(), false);
  for (int p : pos) in_op[p] = true;

  // Each full index splits into an op index and a "rest" index; the result is
  // op(r_op, c_op) whenever the rest parts agree.
  std::vector<std::size_t> op_index(dim), rest_index(dim);
  std::vector<int> digits;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    split(idx, dims, digits);
    std::size_t o = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) o = o * static_cast<std::size_t>(full[pos[k]].dim) + digits[pos[k]];
    std::size_t r = 0;
    for (std::size_t k = 0; k < full.size(); ++k) {
      if (!in_op[k]) r = r * static_cast<std::size_t>(dims[k]) + digits[k];
    }
    op_index[idx] = o;
    rest_index[idx] = r;
  }
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (rest_index[r] == rest_index[c]) out(r, c) = op(op_index[r], op_index[c]);
    }
  }
  return out;
}

CMatrix reduce(const CMatrix& m, const QVarList& full, const QVarList& keep) {
  const std::size_t dim = total_dim(full);
  if (static_cast<std::size_t>(m.rows()) != dim || m.cols() != m.rows()) {
    throw LinalgError("matrix does not act on register " + to_string(full));
  }
  const auto pos = positions_in(keep, full);
  const auto dims = dims_of(full);
  std::vector<bool> kept(full.size(), false);
  for (int p : pos) kept[p] = true;
  std::vector<std::size_t> keep_index(dim), rest_index(dim);
  std::vector<int> digits;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    split(idx, dims, digits);
    std::size_t o = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) o = o * static_cast<std::size_t>(full[pos[k]].dim) + digits[pos[k]];
    std::size_t r = 0;
    for (std::size_t k = 0; k < full.size(); ++k) {
      if (!kept[k]) r = r * static_cast<std::size_t>(dims[k]) + digits[k];
    }
    keep_index[idx] = o;
    rest_index[idx] = r;
  }
  const std::size_t kdim = total_dim(keep);
  CMatrix out = CMatrix::Zero(kdim, kdim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (rest_index[r] == rest_index[c]) out(keep_index[r], keep_index[c]) += m(r, c);
    }
  }
  return out;
}

DensityOp partial_trace(const DensityOp& rho, const std::vector<std::string>& keep) {
  QVarList kept;
  for (const auto& name : keep) {
    int p = index_of(rho.qvars, name);
    if (p < 0) throw LinalgError("unknown quantum variable '" + name + "'");
    kept.push_back(rho.qvars[p]);
  }
  // Keep the register's own order so tr over the empty set is the identity map.
  QVarList ordered;
  for (const auto& v : rho.qvars) {
    if (contains(kept, v.name)) ordered.push_back(v);
  }
  return DensityOp{reduce(rho.matrix, rho.qvars, ordered), ordered};
}

DensityOp apply_superop(const SuperOp& e, const DensityOp& rho) {
  if (e.kraus.empty()) throw LinalgError("super-operator has no Kraus operators");
  if (e.qvars_in == rho.qvars) {
    const std::size_t in_dim = total_dim(e.qvars_in), out_dim = total_dim(e.qvars_out);
    CMatrix out = CMatrix::Zero(out_dim, out_dim);
    for (const auto& k : e.kraus) {
      if (static_cast<std::size_t>(k.rows()) != out_dim || static_cast<std::size_t>(k.cols()) != in_dim) {
        throw LinalgError("Kraus operator has wrong shape");
      }
      out += k * rho.matrix * k.adjoint();
    }
    return DensityOp{out, e.qvars_out};
  }
  if (e.qvars_in != e.qvars_out) {
    throw LinalgError("channel on a sub-register must preserve it: " + to_string(e.qvars_in) + " -> " +
                      to_string(e.qvars_out));
  }
  if (!is_subset(e.qvars_in, rho.qvars)) {
    throw LinalgError("channel register " + to_string(e.qvars_in) + " not contained in " + to_string(rho.qvars));
  }
  CMatrix out = CMatrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (const auto& k : e.kraus) {
    CMatrix big = embed(k, e.qvars_in, rho.qvars);
    out += big * rho.matrix * big.adjoint();
  }
  return DensityOp{out, rho.qvars};
}

SuperOp adjoint_superop(const SuperOp& e) {
  SuperOp out;
  out.qvars_in = e.qvars_out;
  out.qvars_out = e.qvars_in;
  out.kraus.reserve(e.kraus.size());
  for (const auto& k : e.kraus) out.kraus.push_back(k.adjoint());
  return out;
}

CMatrix kraus_completeness(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw LinalgError("empty Kraus list");
  CMatrix sum = CMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return sum;
}

bool is_trace_nonincreasing(const SuperOp& e, double tol) {
  CMatrix s = kraus_completeness(e.kraus);
  return loewner_leq(s, identity(s.rows()), tol);
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("eigenvalues of a non-square matrix");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_eigenvalue(const CMatrix& m) {
  auto ev = hermitian_eigenvalues(m);
  return ev.empty() ? 0.0 : ev.front();
}

double max_eigenvalue(const CMatrix& m) {
  auto ev = hermitian_eigenvalues(m);
  return ev.empty() ? 0.0 : ev.back();
}

CVector min_eigenvector(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  return solver.eigenvectors().col(0);
}

double hermiticity_residual(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) { return m.rows() == m.cols() && hermiticity_residual(m) <= tol; }

bool is_psd(const CMatrix& m, double tol) { return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol; }

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.adjoint() * m, identity(m.rows())) <= tol;
}

bool is_partial_density(const CMatrix& m, double tol) { return is_psd(m, tol) && real_trace(m) <= 1.0 + tol; }

bool is_effect(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  auto ev = hermitian_eigenvalues(m);
  return ev.empty() || (ev.front() >= -tol && ev.back() <= 1.0 + tol);
}

bool loewner_leq(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw LinalgError("Loewner comparison of mismatched dimensions");
  return min_eigenvalue(b - a) >= -tol;
}

bool loewner_leq(const Observable& a, const Observable& b, double tol) {
  if (a.qvars != b.qvars) throw LinalgError("Loewner comparison over different registers");
  return loewner_leq(a.matrix, b.matrix, tol);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw LinalgError("comparison of mismatched dimensions");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double real_trace(const CMatrix& m) { return m.trace().real(); }

}  // namespace dqhl
