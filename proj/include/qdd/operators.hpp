// Copyright 2026 The qdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qdd {

using Complex = std::complex<double>;

/// Dense complex square matrix. The universal carrier for Hamiltonians,
/// coupling operators, unitary kicks, projectors and density matrices.
using Operator = Eigen::MatrixXcd;

using CVector = Eigen::VectorXcd;

/// Default tolerance for all numerical predicates; overridable per call.
inline constexpr double kDefaultTol = 1e-10;

inline Operator identity(Eigen::Index d) { return Operator::Identity(d, d); }

inline Operator zero(Eigen::Index d) { return Operator::Zero(d, d); }

/// Matrix unit E_{ij} on a d-dimensional space: a single 1 at (i, j).
inline Operator matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Operator e = Operator::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

/// Standard basis column vector e_i.
inline CVector basis_state(Eigen::Index d, Eigen::Index i) {
  CVector v = CVector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline Operator pauli_x() {
  Operator s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline Operator pauli_y() {
  Operator s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

inline Operator pauli_z() {
  Operator s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

/// Raising operator |0><1| (maps the lower level e_1 to the upper level e_0).
inline Operator pauli_plus() { return matrix_unit(2, 0, 1); }

/// Lowering operator |1><0|.
inline Operator pauli_minus() { return matrix_unit(2, 1, 0); }

/// The 8-element qubit Pauli group, ordered {I, sx, sy, sz, -I, -sx, -sy, -sz}.
inline std::vector<Operator> pauli_group() {
  std::vector<Operator> g{identity(2), pauli_x(), pauli_y(), pauli_z()};
  for (int i = 0; i < 4; ++i) g.push_back(-g[i]);
  return g;
}

/// Entrywise max norm, the metric behind every tolerance in this library.
inline double max_abs(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Operator& a, const Operator& b) {
  return max_abs(a - b);
}

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

inline Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

/// max|A - A^dag| <= tol. Hermiticity is a predicate, not a type state.
inline bool is_hermitian(const Operator& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) return false;
  return max_abs_diff(a, a.adjoint()) <= tol;
}

/// max|U^dag U - I| <= tol.
inline bool is_unitary(const Operator& u, double tol = kDefaultTol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, identity(u.rows())) <= tol;
}

/// Kronecker product, (A (x) B)[(i*dimB+k),(j*dimB+l)] = A[i,j]*B[k,l].
/// Accepts any Eigen expression; column vectors compose to column vectors.
template <typename DerivedA, typename DerivedB>
Eigen::MatrixXcd kron(const Eigen::MatrixBase<DerivedA>& a_expr,
                      const Eigen::MatrixBase<DerivedB>& b_expr) {
  const Eigen::MatrixXcd a = a_expr;
  const Eigen::MatrixXcd b = b_expr;
  Eigen::MatrixXcd c(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return c;
}

/// Column-stacking vectorization: vec(X)[j*d + i] = X[i,j], so that
/// vec(A X B) = (B^T (x) A) vec(X). Every superoperator matrix in this
/// library is written in this convention.
inline CVector vectorize(const Operator& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

inline Operator unvectorize(const CVector& v, Eigen::Index d) {
  if (v.size() != d * d)
    throw std::invalid_argument("unvectorize: vector length does not equal d*d");
  return Eigen::Map<const Operator>(v.data(), d, d);
}

inline Operator unvectorize(const CVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size())
    throw std::invalid_argument("unvectorize: vector length is not a perfect square");
  return unvectorize(v, d);
}

namespace detail {

inline bool is_normal(const Operator& m, double tol = 1e-13) {
  const Operator lhs = m.adjoint() * m;
  const Operator rhs = m * m.adjoint();
  const double scale = std::max(1.0, max_abs(lhs));
  return max_abs_diff(lhs, rhs) <= tol * scale;
}

// Normal matrices exponentiate through a unitary Schur form; this keeps
// exp(anti-Hermitian) unitary to machine precision.
inline Operator expm_normal(const Operator& m) {
  Eigen::ComplexSchur<Operator> schur(m);
  const Operator& q = schur.matrixU();
  CVector d(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) d(i) = std::exp(schur.matrixT()(i, i));
  return q * d.asDiagonal() * q.adjoint();
}

// Scaling-and-squaring with the order-13 Pade approximant (Higham 2005).
inline Operator expm_pade(const Operator& m) {
  static constexpr double b[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  static constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

  const Operator a = m / std::pow(2.0, squarings);
  const Operator id = identity(m.rows());
  const Operator a2 = a * a;
  const Operator a4 = a2 * a2;
  const Operator a6 = a2 * a4;

  const Operator u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * id);
  const Operator v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                     b[4] * a4 + b[2] * a2 + b[0] * id;

  Operator r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace detail

/// Matrix exponential. Normal inputs (Hermitian, anti-Hermitian, unitary)
/// go through an exact spectral route; everything else through Pade
/// scaling-and-squaring.
inline Operator expm(const Operator& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("expm: matrix must be square");
  if (m.rows() == 0) return m;
  if (detail::is_normal(m)) return detail::expm_normal(m);
  return detail::expm_pade(m);
}

/// Partial trace over the ancilla factor of a system (x) ancilla operator,
/// Tr_anc(M)[i,j] = sum_k M[(i,k),(j,k)] with composite index (i,k) = i*m + k.
inline Operator partial_trace_ancilla(const Operator& joint, Eigen::Index d,
                                      Eigen::Index m) {
  if (joint.rows() != joint.cols() || joint.rows() != d * m)
    throw std::invalid_argument(
        "partial_trace_ancilla: operator dimension is not d*m");
  Operator out = Operator::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < m; ++k) out(i, j) += joint(i * m + k, j * m + k);
  return out;
}

}  // namespace qdd
