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

#include <stdexcept>
#include <string>
#include <vector>

#include "qdd/operators.hpp"

namespace qdd {

/// A master-equation model: Hamiltonian H plus coupling (collapse)
/// operators L_1..L_n, all on the same d-dimensional system.
struct LindbladModel {
  Operator H;
  std::vector<Operator> Ls;

  Eigen::Index dim() const { return H.rows(); }

  /// Throws std::invalid_argument when H is not Hermitian to `tol` or the
  /// coupling operators disagree in dimension.
  void validate(double tol = kDefaultTol) const {
    if (H.rows() == 0 || H.rows() != H.cols())
      throw std::invalid_argument("LindbladModel: H must be a nonempty square matrix");
    if (!is_hermitian(H, tol))
      throw std::invalid_argument("LindbladModel: H is not Hermitian within tolerance");
    for (std::size_t k = 0; k < Ls.size(); ++k)
      if (Ls[k].rows() != H.rows() || Ls[k].cols() != H.cols())
        throw std::invalid_argument("LindbladModel: L[" + std::to_string(k) +
                                    "] dimension does not match H");
  }
};

enum class Picture { Heisenberg, Schrodinger };

/// A d^2 x d^2 complex matrix acting on column-stacked operators, tagged by
/// the picture it lives in. Duality: the Schrodinger matrix is the
/// conjugate transpose of the Heisenberg matrix under the Hilbert-Schmidt
/// pairing tr(A^dag B) = vec(A)^dag vec(B).
struct SuperOperator {
  Eigen::Index dim = 0;
  Picture picture = Picture::Heisenberg;
  Eigen::MatrixXcd mat;

  Operator apply(const Operator& x) const {
    if (x.rows() != dim || x.cols() != dim)
      throw std::invalid_argument("SuperOperator::apply: operand dimension mismatch");
    return unvectorize(mat * vectorize(x), dim);
  }
};

inline SuperOperator identity_superop(Eigen::Index d, Picture p) {
  return {d, p, Eigen::MatrixXcd::Identity(d * d, d * d)};
}

/// Hilbert-Schmidt dual: flips the picture.
inline SuperOperator dual(const SuperOperator& s) {
  const Picture p = s.picture == Picture::Heisenberg ? Picture::Schrodinger
                                                     : Picture::Heisenberg;
  return {s.dim, p, s.mat.adjoint()};
}

/// Composition a after b (same picture required).
inline SuperOperator compose(const SuperOperator& a, const SuperOperator& b) {
  if (a.picture != b.picture || a.dim != b.dim)
    throw std::invalid_argument("compose: picture or dimension mismatch");
  return {a.dim, a.picture, a.mat * b.mat};
}

/// Unitary conjugation as a superoperator. Heisenberg: X -> u^dag X u.
/// Schrodinger: rho -> u rho u^dag.
inline SuperOperator conjugation_superop(const Operator& u, Picture p) {
  if (p == Picture::Heisenberg)
    return {u.rows(), p, kron(u.transpose(), u.adjoint())};
  return {u.rows(), p, kron(u.conjugate(), u)};
}

/// Applies the generator directly:
///   L(X) = sum_k L_k^dag X L_k - 1/2 {L_k^dag L_k, X} - i [X, H].
inline Operator apply_generator(const LindbladModel& model, const Operator& x) {
  if (x.rows() != model.dim() || x.cols() != model.dim())
    throw std::invalid_argument("apply_generator: operand dimension mismatch");
  const Complex i_unit(0.0, 1.0);
  Operator out = -i_unit * commutator(x, model.H);
  for (const Operator& l : model.Ls) {
    const Operator ldl = l.adjoint() * l;
    out += l.adjoint() * x * l - 0.5 * anticommutator(ldl, x);
  }
  return out;
}

/// The GKS-Lindblad generator as a superoperator matrix. The Heisenberg
/// form annihilates the identity; the Schrodinger form is its dual and is
/// trace-free in the sense tr(L*(rho)) = 0.
inline SuperOperator generator_superop(const LindbladModel& model,
                                       Picture picture = Picture::Heisenberg) {
  model.validate();
  const Eigen::Index d = model.dim();
  const Operator id = identity(d);
  const Complex i_unit(0.0, 1.0);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  m -= i_unit * (kron(model.H.transpose(), id) - kron(id, model.H));
  for (const Operator& l : model.Ls) {
    const Operator ldl = l.adjoint() * l;
    m += kron(l.transpose(), l.adjoint());
    m -= 0.5 * kron(ldl.transpose(), id);
    m -= 0.5 * kron(id, ldl);
  }
  SuperOperator gen{d, Picture::Heisenberg, std::move(m)};
  return picture == Picture::Heisenberg ? gen : dual(gen);
}

/// Phi_t = exp(t * generator), in the generator's picture.
inline SuperOperator semigroup_map(const SuperOperator& gen, double t) {
  if (t < 0) throw std::invalid_argument("semigroup_map: time must be nonnegative");
  return {gen.dim, gen.picture, expm(t * gen.mat)};
}

/// The dissipation D(X,X) = L(X^dag X) - L(X^dag) X - X^dag L(X); positive
/// semidefinite for a Lindblad generator.
inline Operator dissipation(const LindbladModel& model, const Operator& x) {
  if (x.rows() != model.dim() || x.cols() != model.dim())
    throw std::invalid_argument("dissipation: operand dimension mismatch");
  return apply_generator(model, x.adjoint() * x) -
         apply_generator(model, x.adjoint()) * x - x.adjoint() * apply_generator(model, x);
}

/// Choi matrix C = (map (x) id)|Omega><Omega| with |Omega> = sum_i |ii>
/// (unnormalized). Expects a Schrodinger-picture map.
inline Operator choi_matrix(const SuperOperator& map) {
  if (map.picture != Picture::Schrodinger)
    throw std::invalid_argument("choi_matrix: map must be in the Schrodinger picture");
  const Eigen::Index d = map.dim;
  Operator c = Operator::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      c += kron(map.apply(matrix_unit(d, i, j)), matrix_unit(d, i, j));
  return c;
}

struct CpResult {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

/// Complete positivity certificate: min eig of the (Hermitized) Choi
/// matrix must be >= -tol.
inline CpResult cp_check(const SuperOperator& map, double tol = kDefaultTol) {
  const Operator c = choi_matrix(map);
  const Operator herm = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(herm, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig >= -tol, min_eig};
}

/// Density-matrix predicate: Hermitian, unit trace, PSD, all to `tol`.
inline bool is_density_matrix(const Operator& rho, double tol = kDefaultTol) {
  if (rho.rows() != rho.cols() || !is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

/// Markovian time-ordered correlation kernel
///   tr{rho Phi_{tau1}(Y1^dag Phi_{tau2}(... Phi_{taun}(Yn^dag Xn) ...) X1)}
/// with tau1 = t1 and tau_k = t_k - t_{k-1}, evaluated innermost-first.
/// `gen` must be a Heisenberg-picture generator.
inline Complex markov_kernel(const SuperOperator& gen, const Operator& rho,
                             const std::vector<double>& times,
                             const std::vector<Operator>& Ys,
                             const std::vector<Operator>& Xs) {
  const std::size_t n = times.size();
  if (n == 0 || Ys.size() != n || Xs.size() != n)
    throw std::invalid_argument("markov_kernel: times, Ys, Xs must share a length >= 1");
  if (gen.picture != Picture::Heisenberg)
    throw std::invalid_argument("markov_kernel: generator must be Heisenberg");
  if (times.front() < 0)
    throw std::invalid_argument("markov_kernel: times must be nonnegative");
  for (std::size_t k = 1; k < n; ++k)
    if (times[k] < times[k - 1])
      throw std::invalid_argument("markov_kernel: times must be nondecreasing");
  if (!is_density_matrix(rho))
    throw std::invalid_argument("markov_kernel: rho is not a density matrix");

  Operator a = Ys[n - 1].adjoint() * Xs[n - 1];
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double tau = times[k] - times[k - 1];
    a = Ys[k - 1].adjoint() * semigroup_map(gen, tau).apply(a) * Xs[k - 1];
  }
  a = semigroup_map(gen, times.front()).apply(a);
  return (rho * a).trace();
}

inline Complex markov_kernel(const LindbladModel& model, const Operator& rho,
                             const std::vector<double>& times,
                             const std::vector<Operator>& Ys,
                             const std::vector<Operator>& Xs) {
  return markov_kernel(generator_superop(model, Picture::Heisenberg), rho, times,
                       Ys, Xs);
}

}  // namespace qdd
