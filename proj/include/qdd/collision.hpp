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

// Repeated-interaction (collision) dynamics: the system meets a fresh
// (n+1)-level ancilla every step of length tau, coupled through sqrt(tau)-
// scaled exchange terms. Ancilla level 0 is the vacuum; level j carries one
// excitation of channel j. A single excitation level per channel suffices
// because only single-excitation exchanges survive at order tau.
// Decoupling kicks act on the system factor only.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdd/decoupling.hpp"
#include "qdd/lindblad.hpp"
#include "qdd/operators.hpp"

namespace qdd {

struct CollisionConfig {
  LindbladModel model;
  DDScheme scheme;
  double total_time = 0.0;
  long steps = 0;          // N; tau is adjusted so that N * tau == T exactly
  int steps_per_kick = 1;  // m: each kick is held for m consecutive collisions

  double tau() const { return total_time / double(steps); }
};

inline CollisionConfig make_collision_config(LindbladModel model, DDScheme scheme,
                                             double total_time,
                                             int steps_per_kick = 1) {
  model.validate();
  scheme.validate();
  if (!(total_time > 0))
    throw std::invalid_argument("CollisionConfig: total time must be positive");
  if (steps_per_kick < 1)
    throw std::invalid_argument("CollisionConfig: steps_per_kick must be >= 1");
  if (model.dim() != scheme.kicks.front().rows())
    throw std::invalid_argument("CollisionConfig: kick dimension does not match model");
  long steps = std::lround(total_time / scheme.tau);
  if (steps < 1) steps = 1;
  return {std::move(model), std::move(scheme), total_time, steps, steps_per_kick};
}

/// One collision unitary on system (x) ancilla:
///   U = exp( sqrt(tau) sum_j (L_j (x) E_{j,0} - L_j^dag (x) E_{0,j})
///            - i tau (H (x) I) ).
/// The exponent is anti-Hermitian, so U is exactly unitary; it matches the
/// first-order increment expansion up to O(tau^{3/2}).
inline Operator step_unitary(const LindbladModel& model, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("step_unitary: tau must be positive");
  model.validate();
  const Eigen::Index d = model.dim();
  const Eigen::Index na = static_cast<Eigen::Index>(model.Ls.size()) + 1;
  const double root_tau = std::sqrt(tau);

  Operator g = Complex(0.0, -tau) * kron(model.H, identity(na));
  for (std::size_t j = 0; j < model.Ls.size(); ++j) {
    const auto lvl = static_cast<Eigen::Index>(j) + 1;
    g += root_tau * (kron(model.Ls[j], matrix_unit(na, lvl, 0)) -
                     kron(model.Ls[j].adjoint(), matrix_unit(na, 0, lvl)));
  }
  return expm(g);
}

namespace detail {

/// Kraus operators of one vacuum collision: K_a = (I (x) <a|) U (I (x) |0>).
inline std::vector<Operator> vacuum_kraus(const LindbladModel& model, double tau) {
  const Operator u = step_unitary(model, tau);
  const Eigen::Index d = model.dim();
  const Eigen::Index na = static_cast<Eigen::Index>(model.Ls.size()) + 1;
  std::vector<Operator> ks(na, Operator(d, d));
  for (Eigen::Index a = 0; a < na; ++a)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) ks[a](i, j) = u(i * na + a, j * na);
  return ks;
}

}  // namespace detail

/// The map of one collision against a vacuum ancilla,
/// rho -> Tr_anc[U (rho (x) |0><0|) U^dag]; CPTP by construction and equal
/// to id + tau * generator up to O(tau^2).
inline SuperOperator step_map_vacuum(const LindbladModel& model, double tau,
                                     Picture picture = Picture::Schrodinger) {
  if (!(tau > 0)) throw std::invalid_argument("step_map_vacuum: tau must be positive");
  const Eigen::Index d = model.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const Operator& k : detail::vacuum_kraus(model, tau))
    m += kron(k.conjugate(), k);
  SuperOperator s{d, Picture::Schrodinger, std::move(m)};
  return picture == Picture::Schrodinger ? s : dual(s);
}

namespace detail {

inline std::vector<std::size_t> step_kick_indices(const CollisionConfig& config) {
  const auto n = static_cast<std::size_t>(config.steps);
  const auto m = static_cast<std::size_t>(config.steps_per_kick);
  const std::vector<std::size_t> draws =
      kick_sequence(config.scheme, (n + m - 1) / m);
  std::vector<std::size_t> per_step(n);
  for (std::size_t k = 0; k < n; ++k) per_step[k] = draws[k / m];
  return per_step;
}

}  // namespace detail

/// N collisions with system-only kicks interleaved: step k applies
/// rho -> v_k^dag Tr_anc[U ((v_k rho v_k^dag) (x) |0><0|) U^dag] v_k.
/// Returns the composed Schrodinger map.
inline SuperOperator evolve_dd(const CollisionConfig& config) {
  const Eigen::Index d = config.model.dim();
  const Eigen::MatrixXcd step =
      step_map_vacuum(config.model, config.tau(), Picture::Schrodinger).mat;

  std::vector<Eigen::MatrixXcd> kicked;
  kicked.reserve(config.scheme.kicks.size());
  for (const Operator& v : config.scheme.kicks) {
    const Eigen::MatrixXcd into_frame = conjugation_superop(v, Picture::Schrodinger).mat;
    const Eigen::MatrixXcd out_of_frame =
        conjugation_superop(v.adjoint(), Picture::Schrodinger).mat;
    kicked.push_back(out_of_frame * step * into_frame);
  }

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(d * d, d * d);
  for (const std::size_t v : detail::step_kick_indices(config))
    total = kicked[v] * total;
  return {d, Picture::Schrodinger, std::move(total)};
}

/// The system block <0|U_dd(T,0)|0> of the kicked collision chain, composed
/// stepwise over fresh vacuum ancillas. For a decoupling group it converges
/// to exp(-T lambda) I as tau -> 0, with lambda the vacuum decay rate.
inline Operator vacuum_amplitude_dd(const CollisionConfig& config) {
  const Eigen::Index d = config.model.dim();
  const Operator u00 = detail::vacuum_kraus(config.model, config.tau()).front();

  std::vector<Operator> kicked;
  kicked.reserve(config.scheme.kicks.size());
  for (const Operator& v : config.scheme.kicks)
    kicked.push_back(v.adjoint() * u00 * v);

  Operator amp = identity(d);
  for (const std::size_t v : detail::step_kick_indices(config))
    amp = kicked[v] * amp;
  return amp;
}

struct StudyRow {
  double tau = 0.0;
  std::string ordering;  // "cyclic", a seed, or "richardson"
  double error_vs_lbar = 0.0;
  double error_vs_identity = 0.0;
  double empirical_order = 0.0;  // NaN on the first row
};

/// First-order Richardson extrapolation from the two finest maps:
/// with S(tau) = S0 + C tau, returns S0.
inline Eigen::MatrixXcd richardson_limit(const Eigen::MatrixXcd& coarse,
                                         double tau_coarse,
                                         const Eigen::MatrixXcd& fine,
                                         double tau_fine) {
  return fine + (fine - coarse) * (tau_fine / (tau_coarse - tau_fine));
}

/// Runs evolve_dd across a descending ladder of pulse periods and reports
/// the max-norm distance to exp(T Lbar) (Schrodinger) and to the identity
/// map, plus the empirical convergence order between consecutive rows.
/// A final "richardson" row holds the extrapolated-limit distances.
inline std::vector<StudyRow> convergence_study(const LindbladModel& model,
                                               const DDScheme& scheme, double total_time,
                                               const std::vector<double>& taus) {
  if (taus.empty())
    throw std::invalid_argument("convergence_study: tau list must be nonempty");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0))
      throw std::invalid_argument("convergence_study: taus must be positive");
    if (i > 0 && taus[i] >= taus[i - 1])
      throw std::invalid_argument("convergence_study: taus must be descending");
  }

  const Eigen::Index d = model.dim();
  const AveragedModel averaged = averaged_generator(model, scheme.kicks);
  const Eigen::MatrixXcd target =
      expm(total_time * generator_superop(averaged.model, Picture::Schrodinger).mat);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d * d, d * d);
  const std::string ordering = scheme.order == KickOrder::Cyclic
                                   ? "cyclic"
                                   : std::to_string(scheme.seed);

  std::vector<StudyRow> rows;
  std::vector<Eigen::MatrixXcd> maps;
  std::vector<double> effective_taus;
  for (const double tau : taus) {
    DDScheme s = scheme;
    s.tau = tau;
    const CollisionConfig config = make_collision_config(model, s, total_time);
    const Eigen::MatrixXcd map = evolve_dd(config).mat;
    StudyRow row;
    row.tau = config.tau();
    row.ordering = ordering;
    row.error_vs_lbar = max_abs(map - target);
    row.error_vs_identity = max_abs(map - id);
    row.empirical_order = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty() && row.error_vs_lbar > 0 && rows.back().error_vs_lbar > 0)
      row.empirical_order = std::log(rows.back().error_vs_lbar / row.error_vs_lbar) /
                            std::log(rows.back().tau / row.tau);
    rows.push_back(row);
    maps.push_back(map);
    effective_taus.push_back(config.tau());
  }

  if (maps.size() >= 2) {
    const std::size_t last = maps.size() - 1;
    const Eigen::MatrixXcd limit = richardson_limit(
        maps[last - 1], effective_taus[last - 1], maps[last], effective_taus[last]);
    StudyRow row;
    row.tau = 0.0;
    row.ordering = "richardson";
    row.error_vs_lbar = max_abs(limit - target);
    row.error_vs_identity = max_abs(limit - id);
    row.empirical_order = std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qdd
