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

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdd/lindblad.hpp"
#include "qdd/operators.hpp"

namespace qdd {

enum class KickOrder { Cyclic, Random };

/// A dynamical-decoupling scheme: a finite set of unitary kicks, an
/// ordering policy and the pulse period tau.
///
/// Randomized ordering is bit-reproducible: indices are drawn from
/// std::mt19937_64 seeded with `seed`, mapped to [0, #kicks) by rejection
/// sampling (no modulo bias). The sequence depends on (seed, N, #kicks)
/// only, and sequence(N) is a prefix of sequence(N') for N' > N.
struct DDScheme {
  std::vector<Operator> kicks;
  KickOrder order = KickOrder::Cyclic;
  std::uint64_t seed = 0;
  double tau = 0.0;

  void validate(double tol = kDefaultTol) const {
    if (kicks.empty())
      throw std::invalid_argument("DDScheme: kick set must be nonempty");
    const Eigen::Index d = kicks.front().rows();
    for (std::size_t k = 0; k < kicks.size(); ++k) {
      if (kicks[k].rows() != d || kicks[k].cols() != d)
        throw std::invalid_argument("DDScheme: V[" + std::to_string(k) +
                                    "] dimension mismatch");
      if (!is_unitary(kicks[k], tol))
        throw std::invalid_argument("DDScheme: V[" + std::to_string(k) +
                                    "] is not unitary within tolerance");
    }
    if (!(tau > 0)) throw std::invalid_argument("DDScheme: tau must be positive");
  }
};

/// (1/#V) sum_v v^dag X v.
inline Operator group_average(const std::vector<Operator>& kicks, const Operator& x) {
  if (kicks.empty())
    throw std::invalid_argument("group_average: kick set must be nonempty");
  Operator out = Operator::Zero(x.rows(), x.cols());
  for (const Operator& v : kicks) out += v.adjoint() * x * v;
  return out / double(kicks.size());
}

/// True when the average of every matrix unit collapses to its normalized
/// trace, i.e. the set averages arbitrary operators to (tr X / d) I.
inline bool verify_decoupling_set(const std::vector<Operator>& kicks,
                                  double tol = kDefaultTol) {
  if (kicks.empty()) return false;
  const Eigen::Index d = kicks.front().rows();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const Operator avg = group_average(kicks, matrix_unit(d, i, j));
      const Operator target = (i == j ? 1.0 / double(d) : 0.0) * identity(d);
      if (max_abs_diff(avg, target) > tol) return false;
    }
  return true;
}

/// Result of averaging a model over a kick set. The model carries H = 0
/// and the collapse operators R_{v,j} = v^dag L_j v / sqrt(#V); the scalar
/// left over from averaging H (a global phase, tr(H)/d) is kept as a
/// diagnostic and never enters the generator.
struct AveragedModel {
  LindbladModel model;
  Complex h_phase;
};

inline AveragedModel averaged_generator(const LindbladModel& model,
                                        const std::vector<Operator>& kicks) {
  if (kicks.empty())
    throw std::invalid_argument("averaged_generator: kick set must be nonempty");
  model.validate();
  const Eigen::Index d = model.dim();
  const double scale = 1.0 / std::sqrt(double(kicks.size()));
  std::vector<Operator> rs;
  rs.reserve(kicks.size() * model.Ls.size());
  for (const Operator& v : kicks)
    for (const Operator& l : model.Ls) rs.push_back(scale * (v.adjoint() * l * v));
  return {LindbladModel{zero(d), std::move(rs)}, model.H.trace() / double(d)};
}

/// Kick indices for the first `n` pulses of a scheme.
inline std::vector<std::size_t> kick_sequence(const DDScheme& scheme, std::size_t n) {
  const std::size_t nv = scheme.kicks.size();
  if (nv == 0)
    throw std::invalid_argument("kick_sequence: kick set must be nonempty");
  std::vector<std::size_t> seq(n);
  if (scheme.order == KickOrder::Cyclic) {
    for (std::size_t k = 0; k < n; ++k) seq[k] = k % nv;
    return seq;
  }
  std::mt19937_64 rng(scheme.seed);
  // largest u with [0, u] of size divisible by nv; draws above it are rejected
  const std::uint64_t limit =
      UINT64_MAX - (UINT64_MAX % nv + 1) % nv;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t u = rng();
    while (u > limit) u = rng();
    seq[k] = static_cast<std::size_t>(u % nv);
  }
  return seq;
}

/// The vacuum-amplitude decay rate lambda = (1/d) tr(1/2 sum L^dag L + iH).
/// Its real part is nonnegative; the imaginary part is the tr(H)/d phase.
inline Complex vacuum_decay_rate(const LindbladModel& model) {
  model.validate();
  Operator acc = Complex(0.0, 1.0) * model.H;
  for (const Operator& l : model.Ls) acc += 0.5 * (l.adjoint() * l);
  return acc.trace() / double(model.dim());
}

}  // namespace qdd
