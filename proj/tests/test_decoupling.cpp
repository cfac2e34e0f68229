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

#include "qdd/decoupling.hpp"
#include "test_support.hpp"

using namespace qdd;

namespace {

std::vector<Operator> bit_flip_pair() { return {identity(2), pauli_x()}; }

LindbladModel dephasing(double gamma = 1.0) {
  return {zero(2), {std::sqrt(gamma) * pauli_z()}};
}

LindbladModel damping(double gamma = 1.0) {
  return {zero(2), {std::sqrt(gamma) * pauli_minus()}};
}

}  // namespace

TEST_CASE("group_average fixed cases", "[decouple]") {
  CHECK(max_abs(group_average(bit_flip_pair(), pauli_z())) <= 1e-15);
  CHECK(max_abs_diff(group_average(pauli_group(), identity(2)), identity(2)) <=
        1e-15);

  // brute-force sum over all 8 Pauli elements
  const Operator x = matrix_unit(2, 0, 0);
  Operator oracle = zero(2);
  for (const Operator& v : pauli_group()) oracle += v.adjoint() * x * v;
  oracle /= 8.0;
  CHECK(max_abs_diff(oracle, 0.5 * identity(2)) <= 1e-15);
  CHECK(max_abs_diff(group_average(pauli_group(), x), 0.5 * identity(2)) <= 1e-15);

  CHECK_THROWS_AS(group_average({}, pauli_x()), std::invalid_argument);
}

TEST_CASE("group_average of a group is a projection", "[decouple]") {
  std::mt19937_64 rng(31);
  for (const auto& kicks : {pauli_group(), bit_flip_pair()}) {
    const Operator x = test::random_matrix(rng, 2);
    const Operator once = group_average(kicks, x);
    CHECK(max_abs_diff(group_average(kicks, once), once) <= 1e-13);
  }
}

TEST_CASE("verify_decoupling_set", "[decouple]") {
  CHECK(verify_decoupling_set(pauli_group()));
  CHECK_FALSE(verify_decoupling_set(bit_flip_pair()));  // sx is a fixed point
  CHECK_FALSE(verify_decoupling_set({identity(2)}));
}

TEST_CASE("dephasing generator is invariant under bit-flip and Pauli kicks",
          "[decouple]") {
  const LindbladModel model = dephasing();
  const Eigen::MatrixXcd gen = generator_superop(model).mat;
  for (const auto& kicks : {bit_flip_pair(), pauli_group()}) {
    const AveragedModel averaged = averaged_generator(model, kicks);
    CHECK(max_abs(Operator(generator_superop(averaged.model).mat - gen)) <= 1e-12);
  }
}

TEST_CASE("damping averaged over the Pauli group splits into both directions",
          "[decouple]") {
  const double gamma = 1.0;
  const AveragedModel averaged = averaged_generator(damping(gamma), pauli_group());
  const LindbladModel half_half{
      zero(2),
      {std::sqrt(gamma / 2) * pauli_plus(), std::sqrt(gamma / 2) * pauli_minus()}};
  CHECK(max_abs(Operator(generator_superop(averaged.model).mat -
                         generator_superop(half_half).mat)) <= 1e-12);
}

TEST_CASE("averaging a coupling-free model leaves only the phase diagnostic",
          "[decouple]") {
  const LindbladModel pure{pauli_z() + 0.5 * pauli_x(), {}};
  const AveragedModel averaged = averaged_generator(pure, pauli_group());
  CHECK(max_abs(generator_superop(averaged.model).mat) == 0.0);
  CHECK(std::abs(averaged.h_phase - pure.H.trace() / 2.0) <= 1e-15);

  CHECK_THROWS_AS(averaged_generator(pure, {}), std::invalid_argument);
}

TEST_CASE("averaged models stay valid Lindblad generators", "[decouple]") {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 5; ++rep) {
    const LindbladModel model = test::random_model(rng, 2, 1 + rep % 2);
    const AveragedModel averaged = averaged_generator(model, pauli_group());
    const SuperOperator gen = generator_superop(averaged.model);
    CHECK(max_abs(gen.apply(identity(2))) <= 1e-12);

    const Operator x = test::random_matrix(rng, 2);
    const Operator diss = dissipation(averaged.model, x);
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (diss + diss.adjoint()));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("dissipation of the averaged model is the kick average of dissipations",
          "[decouple]") {
  std::mt19937_64 rng(33);
  for (const auto& kicks : {pauli_group(), bit_flip_pair()}) {
    for (int rep = 0; rep < 4; ++rep) {
      const LindbladModel model = test::random_model(rng, 2, 1 + rep % 2);
      const AveragedModel averaged = averaged_generator(model, kicks);
      const Operator x = test::random_matrix(rng, 2);

      Operator oracle = zero(2);
      for (const Operator& v : kicks) {
        const Operator framed = v.adjoint() * x * v;
        oracle += v.adjoint() * dissipation(model, framed) * v;
      }
      oracle /= double(kicks.size());
      CHECK(max_abs_diff(dissipation(averaged.model, x), oracle) <= 1e-11);
    }
  }
}

TEST_CASE("averaging twice over a group changes nothing", "[decouple]") {
  std::mt19937_64 rng(34);
  for (const auto& kicks : {pauli_group(), bit_flip_pair()}) {
    const LindbladModel model = test::random_model(rng, 2, 2);
    const AveragedModel once = averaged_generator(model, kicks);
    const AveragedModel twice = averaged_generator(once.model, kicks);
    CHECK(max_abs(Operator(generator_superop(twice.model).mat -
                           generator_superop(once.model).mat)) <= 1e-12);
  }
}

TEST_CASE("nonzero couplings survive any amount of kick averaging", "[decouple]") {
  std::mt19937_64 rng(35);
  for (int rep = 0; rep < 50; ++rep) {
    const LindbladModel model = test::random_model(rng, 2, 1 + rep % 3);
    const AveragedModel averaged = averaged_generator(model, pauli_group());
    CHECK(max_abs(generator_superop(averaged.model).mat) > 1e-8);
  }
}

TEST_CASE("cyclic kick sequences", "[decouple]") {
  DDScheme scheme{bit_flip_pair(), KickOrder::Cyclic, 0, 0.1};
  scheme.validate();
  CHECK(kick_sequence(scheme, 4) == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(kick_sequence(scheme, 0).empty());
}

TEST_CASE("random kick sequences are uniform and reproducible", "[decouple]") {
  DDScheme scheme{pauli_group(), KickOrder::Random, 42, 0.1};
  const std::size_t n = 10000;
  const auto seq = kick_sequence(scheme, n);
  REQUIRE(seq.size() == n);

  std::vector<long> counts(8, 0);
  for (const std::size_t k : seq) ++counts[k];
  const double expected = double(n) / 8.0;
  const double sigma = std::sqrt(double(n) * (1.0 / 8.0) * (7.0 / 8.0));
  for (const long c : counts) CHECK(std::abs(double(c) - expected) <= 3.0 * sigma);

  CHECK(kick_sequence(scheme, n) == seq);  // same seed, same draws
  const auto prefix = kick_sequence(scheme, 100);
  CHECK(std::equal(prefix.begin(), prefix.end(), seq.begin()));

  DDScheme other = scheme;
  other.seed = 43;
  CHECK(kick_sequence(other, n) != seq);
}

TEST_CASE("scheme validation rejects non-unitary kicks and bad tau", "[decouple]") {
  DDScheme scheme{{0.5 * pauli_x()}, KickOrder::Cyclic, 0, 0.1};
  CHECK_THROWS_AS(scheme.validate(), std::invalid_argument);
  DDScheme flat{bit_flip_pair(), KickOrder::Cyclic, 0, 0.0};
  CHECK_THROWS_AS(flat.validate(), std::invalid_argument);
  DDScheme empty{{}, KickOrder::Cyclic, 0, 0.1};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("vacuum decay rate", "[decouple]") {
  CHECK(std::abs(vacuum_decay_rate(dephasing(1.0)) - Complex(0.5, 0)) <= 1e-14);
  CHECK(std::abs(vacuum_decay_rate(damping(1.0)) - Complex(0.25, 0)) <= 1e-14);
  CHECK(std::abs(vacuum_decay_rate({pauli_x(), {}})) <= 1e-15);  // traceless H
  // the Hamiltonian trace shows up as the imaginary part
  const LindbladModel shifted{pauli_z() + 2.0 * identity(2), {}};
  CHECK(std::abs(vacuum_decay_rate(shifted) - Complex(0, 2.0)) <= 1e-14);
}
