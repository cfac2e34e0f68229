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

// The minimal stochastic dilation: a system Hamiltonian H = sum_n E_n P_n
// rescaled by a single Cauchy-distributed random variable. The ensemble
// average over the Cauchy weight turns unitary phases into exact
// exponential decay factors exp(-|E_m - E_n| t), which yields a genuinely
// dissipative semigroup that system-only kicks can nevertheless decouple.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdd/decoupling.hpp"
#include "qdd/lindblad.hpp"
#include "qdd/operators.hpp"

namespace qdd {

struct SpectralLevel {
  double energy = 0.0;
  Operator projector;
};

/// Spectral decomposition {(E_n, P_n)} of a system Hamiltonian together
/// with a system state.
struct SpectralModel {
  std::vector<SpectralLevel> levels;
  Operator rho;

  Eigen::Index dim() const { return rho.rows(); }

  Operator hamiltonian() const {
    Operator h = zero(dim());
    for (const SpectralLevel& lvl : levels) h += lvl.energy * lvl.projector;
    return h;
  }

  void validate(double tol = kDefaultTol) const {
    if (levels.empty())
      throw std::invalid_argument("SpectralModel: level list must be nonempty");
    const Eigen::Index d = dim();
    Operator sum = zero(d);
    for (std::size_t n = 0; n < levels.size(); ++n) {
      const Operator& p = levels[n].projector;
      if (p.rows() != d || p.cols() != d)
        throw std::invalid_argument("SpectralModel: P[" + std::to_string(n) +
                                    "] dimension mismatch");
      if (!std::isfinite(levels[n].energy))
        throw std::invalid_argument("SpectralModel: E[" + std::to_string(n) +
                                    "] is not finite");
      for (std::size_t m = 0; m < levels.size(); ++m) {
        const Operator expected = (n == m) ? p : zero(d);
        if (max_abs_diff(p * levels[m].projector, expected) > tol)
          throw std::invalid_argument(
              "SpectralModel: projectors are not orthogonal idempotents");
      }
      sum += p;
    }
    if (max_abs_diff(sum, identity(d)) > tol)
      throw std::invalid_argument("SpectralModel: projectors do not sum to identity");
    if (!is_density_matrix(rho, tol))
      throw std::invalid_argument("SpectralModel: rho is not a density matrix");
  }
};

namespace detail {

// Gaps below this are one decoherence-free block (decay factor exactly 1).
inline constexpr double kGapTol = 1e-12;

inline double gap(double a, double b) {
  const double g = std::abs(a - b);
  return g < kGapTol ? 0.0 : g;
}

}  // namespace detail

/// The Cauchy-averaged semigroup in the Heisenberg picture:
///   X -> sum_{n,m} P_n X P_m exp(-|E_m - E_n| t).
inline SuperOperator cauchy_semigroup(const SpectralModel& sm, double t) {
  if (t < 0)
    throw std::invalid_argument("cauchy_semigroup: time must be nonnegative");
  const Eigen::Index d = sm.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const SpectralLevel& ln : sm.levels)
    for (const SpectralLevel& lm : sm.levels)
      m += std::exp(-detail::gap(lm.energy, ln.energy) * t) *
           kron(lm.projector.transpose(), ln.projector);
  return {d, Picture::Heisenberg, std::move(m)};
}

/// The generator of cauchy_semigroup: L(X) = -sum |E_m - E_n| P_n X P_m.
inline SuperOperator pocket_generator(const SpectralModel& sm) {
  const Eigen::Index d = sm.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const SpectralLevel& ln : sm.levels)
    for (const SpectralLevel& lm : sm.levels)
      m -= detail::gap(lm.energy, ln.energy) *
           kron(lm.projector.transpose(), ln.projector);
  return {d, Picture::Heisenberg, std::move(m)};
}

struct McEstimate {
  Complex value;
  double std_error = 0.0;
};

namespace detail {

// Uniform double in [0,1) from the top 53 bits; keeps the estimator
// bit-stable for a fixed seed across platforms.
inline double canonical_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline Operator phase_unitary(const SpectralModel& sm, double angle) {
  Operator u = zero(sm.dim());
  for (const SpectralLevel& lvl : sm.levels)
    u += std::exp(Complex(0.0, angle * lvl.energy)) * lvl.projector;
  return u;
}

}  // namespace detail

/// Monte-Carlo estimate of the randomized average
///   E_t[X] = E_lambda tr{rho e^{i lambda t H} X e^{-i lambda t H}},
/// lambda ~ Cauchy (drawn as tan(pi(u - 1/2))). Serves as the independent
/// oracle for cauchy_semigroup; the standard error combines the real and
/// imaginary sample variances.
inline McEstimate cauchy_average_mc(const SpectralModel& sm, double t,
                                    const Operator& x, std::size_t samples,
                                    std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("cauchy_average_mc: need at least one sample");
  std::mt19937_64 rng(seed);
  Complex sum = 0.0;
  double sum_sq_re = 0.0;
  double sum_sq_im = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double u = detail::canonical_unit(rng);
    const double lambda = std::tan(std::numbers::pi * (u - 0.5));
    const Operator a = detail::phase_unitary(sm, lambda * t);
    const Complex f = (sm.rho * a * x * a.adjoint()).trace();
    sum += f;
    sum_sq_re += f.real() * f.real();
    sum_sq_im += f.imag() * f.imag();
  }
  const auto n = double(samples);
  const Complex mean = sum / n;
  double var = 0.0;
  if (samples > 1) {
    var = (sum_sq_re - n * mean.real() * mean.real() +
           sum_sq_im - n * mean.imag() * mean.imag()) /
          (n - 1.0);
    var = std::max(var, 0.0);
  }
  return {mean, std::sqrt(var / n)};
}

/// Exact two-time kernel of the randomized model,
///   sum_{n,m,r} tr{rho P_n Y^dag P_m X P_r} exp(-|(E_n-E_r) t + (E_m-E_r) h|).
/// Depends on t itself, not only on the gap structure: the model is not
/// stationary.
inline Complex two_time_kernel(const SpectralModel& sm, const Operator& y,
                               const Operator& x, double t, double h) {
  if (t < 0 || h < 0)
    throw std::invalid_argument("two_time_kernel: times must be nonnegative");
  Complex out = 0.0;
  for (const SpectralLevel& ln : sm.levels)
    for (const SpectralLevel& lm : sm.levels)
      for (const SpectralLevel& lr : sm.levels) {
        const Complex weight =
            (sm.rho * ln.projector * y.adjoint() * lm.projector * x * lr.projector)
                .trace();
        const double phase = (ln.energy - lr.energy) * t + (lm.energy - lr.energy) * h;
        out += weight * std::exp(-std::abs(phase));
      }
  return out;
}

/// The kernel a Markov dilation of the same semigroup would produce:
/// exponents |E_n - E_r| t + |E_m - E_r| h. Coincides with two_time_kernel
/// on two-level systems; differs whenever some E_r lies strictly between
/// E_n and E_m.
inline Complex markov_two_time(const SpectralModel& sm, const Operator& y,
                               const Operator& x, double t, double h) {
  if (t < 0 || h < 0)
    throw std::invalid_argument("markov_two_time: times must be nonnegative");
  Complex out = 0.0;
  for (const SpectralLevel& ln : sm.levels)
    for (const SpectralLevel& lm : sm.levels)
      for (const SpectralLevel& lr : sm.levels) {
        const Complex weight =
            (sm.rho * ln.projector * y.adjoint() * lm.projector * x * lr.projector)
                .trace();
        const double decay = detail::gap(ln.energy, lr.energy) * t +
                             detail::gap(lm.energy, lr.energy) * h;
        out += weight * std::exp(-decay);
      }
  return out;
}

/// Quadrature controls for the non-commuting branch of
/// dd_pocket_evolution. The Cauchy weight is folded into a uniform weight
/// on (-pi/2, pi/2) through lambda = tan(theta); Gauss-Legendre estimates
/// are doubled until two consecutive ladders agree to `tol` or the ladder
/// is exhausted, in which case the finest estimate is returned.
struct PocketQuadrature {
  int nodes = 129;
  int max_doublings = 5;
  double tol = 1e-9;
};

namespace detail {

inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p_prime = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      p_prime = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / p_prime;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * p_prime * p_prime);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

// Heisenberg map matrix of X -> U^dag X U.
inline Eigen::MatrixXcd heisenberg_conjugation(const Operator& u) {
  return kron(u.transpose(), u.adjoint());
}

// The kicked free propagator at noise value lambda:
//   U_lambda = prod_k v_k^dag e^{-i lambda tau H} v_k  (step 1 rightmost).
inline Operator kicked_propagator(const SpectralModel& sm,
                                  const std::vector<std::size_t>& seq,
                                  const std::vector<Operator>& kicks, double tau,
                                  double lambda) {
  const Operator free_step = phase_unitary(sm, -lambda * tau);
  std::vector<Operator> cached(kicks.size());
  std::vector<bool> have(kicks.size(), false);
  Operator u = identity(sm.dim());
  for (const std::size_t k : seq) {
    if (!have[k]) {
      cached[k] = kicks[k].adjoint() * free_step * kicks[k];
      have[k] = true;
    }
    u = cached[k] * u;
  }
  return u;
}

inline Eigen::MatrixXcd pocket_dd_quadrature(const SpectralModel& sm,
                                             const DDScheme& scheme,
                                             const std::vector<std::size_t>& seq,
                                             const PocketQuadrature& quad) {
  const Eigen::Index d = sm.dim();
  Eigen::MatrixXcd previous;
  int n = quad.nodes;
  std::vector<double> nodes, weights;
  for (int pass = 0; pass <= quad.max_doublings; ++pass) {
    gauss_legendre(n, nodes, weights);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int i = 0; i < n; ++i) {
      const double theta = nodes[i] * std::numbers::pi / 2.0;
      const double lambda = std::tan(theta);
      const Operator u = kicked_propagator(sm, seq, scheme.kicks, scheme.tau, lambda);
      acc += (weights[i] / 2.0) * heisenberg_conjugation(u);
    }
    if (pass > 0 && (acc - previous).cwiseAbs().maxCoeff() <= quad.tol) return acc;
    previous = std::move(acc);
    n = 2 * n - 1;
  }
  return previous;
}

}  // namespace detail

/// The Cauchy-averaged Heisenberg map of N kicked free steps,
///   X -> E_lambda[ U_lambda^dag X U_lambda ].
/// When the kicked Hamiltonians v^dag H v commute pairwise the phases
/// accumulate into one effective Hamiltonian and the average is evaluated
/// in closed form through its spectrum; otherwise the lambda integral is
/// done by quadrature.
inline SuperOperator dd_pocket_evolution(const SpectralModel& sm,
                                         const DDScheme& scheme, std::size_t steps,
                                         const PocketQuadrature& quad = {}) {
  sm.validate();
  scheme.validate();
  const Eigen::Index d = sm.dim();
  if (scheme.kicks.front().rows() != d)
    throw std::invalid_argument("dd_pocket_evolution: kick dimension mismatch");
  if (steps == 0) return identity_superop(d, Picture::Heisenberg);

  const std::vector<std::size_t> seq = kick_sequence(scheme, steps);
  const Operator h = sm.hamiltonian();

  std::vector<Operator> conjugated(scheme.kicks.size());
  std::vector<long> counts(scheme.kicks.size(), 0);
  for (const std::size_t k : seq) ++counts[k];
  for (std::size_t k = 0; k < scheme.kicks.size(); ++k)
    if (counts[k] > 0)
      conjugated[k] = scheme.kicks[k].adjoint() * h * scheme.kicks[k];

  bool commuting = true;
  for (std::size_t a = 0; a < conjugated.size() && commuting; ++a)
    for (std::size_t b = a + 1; b < conjugated.size() && commuting; ++b)
      if (counts[a] > 0 && counts[b] > 0 &&
          max_abs(commutator(conjugated[a], conjugated[b])) > detail::kGapTol)
        commuting = false;

  if (!commuting)
    return {d, Picture::Heisenberg,
            detail::pocket_dd_quadrature(sm, scheme, seq, quad)};

  Operator h_eff = zero(d);
  for (std::size_t k = 0; k < conjugated.size(); ++k)
    if (counts[k] > 0) h_eff += (double(counts[k]) * scheme.tau) * conjugated[k];

  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (h_eff + h_eff.adjoint()));
  const auto& omega = es.eigenvalues();
  const Operator& q = es.eigenvectors();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const Operator qa = q.col(a) * q.col(a).adjoint();
    for (Eigen::Index b = 0; b < d; ++b) {
      const Operator qb = q.col(b) * q.col(b).adjoint();
      m += std::exp(-detail::gap(omega(a), omega(b))) * kron(qb.transpose(), qa);
    }
  }
  return {d, Picture::Heisenberg, std::move(m)};
}

}  // namespace qdd
