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

#include <catch2/catch_amalgamated.hpp>

#include "qdd/lindblad.hpp"
#include "test_support.hpp"

using namespace qdd;

namespace {

LindbladModel dephasing(double gamma = 1.0) {
  return {zero(2), {std::sqrt(gamma) * pauli_z()}};
}

LindbladModel damping(double gamma = 1.0) {
  return {zero(2), {std::sqrt(gamma) * pauli_minus()}};
}

// The generator evaluated straight from its defining commutator form;
// independent of the superoperator-matrix construction.
Operator generator_oracle(const LindbladModel& m, const Operator& x) {
  const Complex i_unit(0, 1);
  Operator out = -i_unit * (x * m.H - m.H * x);
  for (const Operator& l : m.Ls)
    out += 0.5 * (commutator(l.adjoint(), x) * l + l.adjoint() * commutator(x, l));
  return out;
}

}  // namespace

TEST_CASE("generator of the empty model is zero", "[semigroup]") {
  const SuperOperator gen = generator_superop({zero(2), {}});
  CHECK(max_abs(gen.mat) == 0.0);
}

TEST_CASE("pure-Hamiltonian generator matches the commutator oracle", "[semigroup]") {
  const LindbladModel model{pauli_z(), {}};
  const SuperOperator gen = generator_superop(model);
  CHECK(max_abs_diff(gen.apply(pauli_x()), generator_oracle(model, pauli_x())) <=
        1e-14);
  // -i[sx, sz] spelled out entrywise
  CHECK(max_abs_diff(gen.apply(pauli_x()),
                     Complex(0, -1) * commutator(pauli_x(), pauli_z())) <= 1e-14);
}

TEST_CASE("dephasing generator sends sx to -2 gamma sx", "[semigroup]") {
  const double gamma = 0.8;
  const SuperOperator gen = generator_superop(dephasing(gamma));
  CHECK(max_abs_diff(gen.apply(pauli_x()), -2.0 * gamma * pauli_x()) <= 1e-13);
}

TEST_CASE("generator matrix agrees with the oracle on random models", "[semigroup]") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const auto d = Eigen::Index(2 + rep % 3);
    const LindbladModel model = test::random_model(rng, d, 1 + rep % 3);
    const SuperOperator gen = generator_superop(model);
    const Operator x = test::random_matrix(rng, d);
    CHECK(max_abs_diff(gen.apply(x), generator_oracle(model, x)) <= 1e-12);
    CHECK(max_abs_diff(gen.apply(x), apply_generator(model, x)) <= 1e-12);
  }
}

TEST_CASE("Heisenberg generators annihilate the identity", "[semigroup]") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 10; ++rep) {
    const auto d = Eigen::Index(2 + rep % 3);
    const LindbladModel model = test::random_model(rng, d, rep % 4);
    const SuperOperator gen = generator_superop(model);
    CHECK(max_abs(gen.apply(identity(d))) <= 1e-12);
  }
}

TEST_CASE("picture duality and trace preservation", "[semigroup]") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 8; ++rep) {
    const auto d = Eigen::Index(2 + rep % 3);
    const LindbladModel model = test::random_model(rng, d, 1 + rep % 3);
    const SuperOperator h = generator_superop(model, Picture::Heisenberg);
    const SuperOperator s = generator_superop(model, Picture::Schrodinger);
    CHECK(max_abs(Operator(h.mat.adjoint() - s.mat)) == 0.0);
    CHECK(dual(dual(h)).picture == h.picture);
    CHECK(max_abs(Operator(dual(dual(h)).mat - h.mat)) == 0.0);

    const Operator rho = test::random_density(rng, d);
    CHECK(std::abs(s.apply(rho).trace()) <= 1e-12);
  }
}

TEST_CASE("generator rejects a non-Hermitian Hamiltonian", "[semigroup]") {
  Operator h = pauli_x();
  h(0, 1) += Complex(0, 1e-6);
  CHECK_THROWS_AS(generator_superop({h, {}}), std::invalid_argument);
}

TEST_CASE("semigroup map basics", "[semigroup]") {
  const SuperOperator gen = generator_superop(dephasing(), Picture::Schrodinger);
  CHECK(max_abs_diff(semigroup_map(gen, 0.0).mat, identity(4)) <= 1e-15);
  CHECK_THROWS_AS(semigroup_map(gen, -0.1), std::invalid_argument);
}

TEST_CASE("dephasing damps off-diagonals as exp(-2 gamma t)", "[semigroup]") {
  const double gamma = 1.3, t = 0.4;
  const SuperOperator map =
      semigroup_map(generator_superop(dephasing(gamma), Picture::Schrodinger), t);
  Operator rho(2, 2);
  rho << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  const Operator evolved = map.apply(rho);
  CHECK(std::abs(evolved(0, 0) - rho(0, 0)) <= 1e-12);
  CHECK(std::abs(evolved(0, 1) - std::exp(-2 * gamma * t) * rho(0, 1)) <= 1e-12);
}

TEST_CASE("kick-averaged damping relaxes diagonally at e^{-gamma t}", "[semigroup]") {
  // collapse list {sqrt(g/2) s+, sqrt(g/2) s-}: half damping up, half down
  const double gamma = 1.0;
  const LindbladModel mixed{
      zero(2),
      {std::sqrt(gamma / 2) * pauli_plus(), std::sqrt(gamma / 2) * pauli_minus()}};
  const SuperOperator gen = generator_superop(mixed, Picture::Schrodinger);
  Operator rho(2, 2);
  rho << 0.8, Complex(0.3, -0.1), Complex(0.3, 0.1), 0.2;
  for (const double t : {0.5, 1.0, 2.0}) {
    const Operator evolved = semigroup_map(gen, t).apply(rho);
    const double diag_factor = std::exp(-gamma * t);
    const double off_factor = std::exp(-gamma * t / 2);
    CHECK(std::abs(evolved(0, 0) - (0.5 + (rho(0, 0).real() - 0.5) * diag_factor)) <=
          1e-10);
    CHECK(std::abs(evolved(1, 1) - (0.5 + (rho(1, 1).real() - 0.5) * diag_factor)) <=
          1e-10);
    CHECK(std::abs(evolved(0, 1) - off_factor * rho(0, 1)) <= 1e-10);
  }
}

TEST_CASE("semigroup law and Hermiticity preservation", "[semigroup]") {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 6; ++rep) {
    const auto d = Eigen::Index(2 + rep % 2);
    const LindbladModel model = test::random_model(rng, d, 1 + rep % 2);
    const SuperOperator gen = generator_superop(model);
    const double s = 0.2 + 0.1 * rep, t = 0.35;
    CHECK(max_abs(Operator(semigroup_map(gen, s).mat * semigroup_map(gen, t).mat -
                           semigroup_map(gen, s + t).mat)) <= 1e-10);

    const Operator x = test::random_matrix(rng, d);
    const SuperOperator map = semigroup_map(gen, t);
    CHECK(max_abs_diff(map.apply(x.adjoint()), map.apply(x).adjoint()) <= 1e-12);
    CHECK(max_abs_diff(map.apply(identity(d)), identity(d)) <= 1e-11);
  }
}

TEST_CASE("dissipation fixed cases", "[semigroup]") {
  const double gamma = 0.9;
  const LindbladModel model = dephasing(gamma);
  CHECK(max_abs(dissipation(model, identity(2))) <= 1e-14);
  CHECK(max_abs(dissipation(model, pauli_z())) <= 1e-14);
  CHECK(max_abs_diff(dissipation(model, pauli_x()), 4.0 * gamma * identity(2)) <=
        1e-13);
}

TEST_CASE("dissipation is PSD and matches the commutator form", "[semigroup]") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 10; ++rep) {
    const auto d = Eigen::Index(2 + rep % 3);
    const LindbladModel model = test::random_model(rng, d, 1 + rep % 3);
    const Operator x = test::random_matrix(rng, d);
    const Operator diss = dissipation(model, x);

    Operator oracle = zero(d);
    for (const Operator& l : model.Ls) {
      const Operator c = commutator(x, l);
      oracle += c.adjoint() * c;
    }
    CHECK(max_abs_diff(diss, oracle) <= 1e-12);

    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (diss + diss.adjoint()));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("Choi matrix of the identity map is the rank-one pair projector",
          "[semigroup]") {
  const SuperOperator id = identity_superop(2, Picture::Schrodinger);
  const Operator c = choi_matrix(id);
  const CVector omega = vectorize(identity(2));
  CHECK(max_abs_diff(c, Operator(omega * omega.adjoint())) <= 1e-15);
  const CpResult cp = cp_check(id);
  CHECK(cp.completely_positive);
}

TEST_CASE("the transpose map is not completely positive", "[semigroup]") {
  SuperOperator transpose{2, Picture::Schrodinger, Eigen::MatrixXcd::Zero(4, 4)};
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      transpose.mat.col(j * 2 + i) = vectorize(matrix_unit(2, j, i));
  const CpResult cp = cp_check(transpose);
  CHECK_FALSE(cp.completely_positive);
  CHECK(std::abs(cp.min_eigenvalue - (-1.0)) <= 1e-12);
}

TEST_CASE("damping semigroup is CP and choi_matrix wants Schrodinger",
          "[semigroup]") {
  const SuperOperator map =
      semigroup_map(generator_superop(damping(), Picture::Schrodinger), 0.7);
  const CpResult cp = cp_check(map);
  CHECK(cp.completely_positive);
  CHECK(cp.min_eigenvalue >= -1e-10);

  const SuperOperator heis = dual(map);
  CHECK_THROWS_AS(choi_matrix(heis), std::invalid_argument);
}

TEST_CASE("cp_check passes for random semigroup maps", "[semigroup]") {
  std::mt19937_64 rng(26);
  for (int rep = 0; rep < 20; ++rep) {
    const auto d = Eigen::Index(2 + rep % 3);
    const LindbladModel model = test::random_model(rng, d, 1 + rep % 3);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    const SuperOperator map = semigroup_map(
        generator_superop(model, Picture::Schrodinger), time(rng));
    CHECK(cp_check(map, 1e-10).completely_positive);
  }
}

TEST_CASE("markov_kernel reductions", "[semigroup]") {
  std::mt19937_64 rng(27);
  const LindbladModel model = test::random_model(rng, 2, 2);
  const SuperOperator gen = generator_superop(model);
  const Operator rho = test::random_density(rng, 2);
  const Operator x = test::random_matrix(rng, 2);
  const Operator y = test::random_matrix(rng, 2);

  // n = 1 with Y = I is the one-point average
  const Complex one_point = markov_kernel(model, rho, {0.6}, {identity(2)}, {x});
  const Complex direct = (rho * semigroup_map(gen, 0.6).apply(x)).trace();
  CHECK(std::abs(one_point - direct) <= 1e-12);

  // equal times collapse the inner propagators; at t = 0 nothing is left
  const Complex collapsed =
      markov_kernel(model, rho, {0.0, 0.0}, {y, identity(2)}, {identity(2), x});
  CHECK(std::abs(collapsed - (rho * y.adjoint() * x).trace()) <= 1e-12);

  const Complex outer_only =
      markov_kernel(model, rho, {0.4, 0.4}, {y, identity(2)}, {identity(2), x});
  const Complex outer_direct =
      (rho * semigroup_map(gen, 0.4).apply(y.adjoint() * x)).trace();
  CHECK(std::abs(outer_only - outer_direct) <= 1e-12);
}

TEST_CASE("two-point dephasing kernel matches an explicit matrix chain",
          "[semigroup]") {
  const double gamma = 1.0, t = 0.3, h = 0.5;
  const LindbladModel model = dephasing(gamma);
  Operator rho(2, 2);
  rho << 0.6, 0.2, 0.2, 0.4;

  const Complex kernel = markov_kernel(model, rho, {t, t + h},
                                       {pauli_x(), identity(2)},
                                       {identity(2), pauli_x()});

  // oracle: apply the closed-form dephasing map entry by entry
  auto phi = [&](const Operator& a, double s) {
    Operator out = a;
    out(0, 1) *= std::exp(-2 * gamma * s);
    out(1, 0) *= std::exp(-2 * gamma * s);
    return out;
  };
  const Complex oracle = (rho * phi(pauli_x() * phi(pauli_x(), h), t)).trace();
  CHECK(std::abs(kernel - oracle) <= 1e-12);
}

TEST_CASE("markov_kernel validates its inputs", "[semigroup]") {
  const LindbladModel model = dephasing();
  const Operator rho = 0.5 * identity(2);
  CHECK_THROWS_AS(
      markov_kernel(model, rho, {0.5, 0.2}, {identity(2), identity(2)},
                    {identity(2), identity(2)}),
      std::invalid_argument);
  CHECK_THROWS_AS(markov_kernel(model, pauli_x(), {0.5}, {identity(2)},
                                {identity(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(markov_kernel(model, rho, {}, {}, {}), std::invalid_argument);
}
