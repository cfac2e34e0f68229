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

// Seeded generators and independent numerical oracles shared by the test
// suites. Everything here is deterministic for a fixed seed.

#pragma once

#include <random>

#include "qdd/lindblad.hpp"
#include "qdd/operators.hpp"

namespace qdd::test {

inline Operator random_matrix(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Operator m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Operator random_hermitian(std::mt19937_64& rng, Eigen::Index d,
                                 double scale = 1.0) {
  const Operator m = random_matrix(rng, d, scale);
  return 0.5 * (m + m.adjoint());
}

inline Operator random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  const Operator m = random_matrix(rng, d);
  Eigen::HouseholderQR<Operator> qr(m);
  Operator q = qr.householderQ();
  // fix the phases so the factorization is unique-ish; keeps q unitary
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

inline Operator random_density(std::mt19937_64& rng, Eigen::Index d) {
  const Operator g = random_matrix(rng, d);
  const Operator p = g * g.adjoint();
  return p / p.trace();
}

inline LindbladModel random_model(std::mt19937_64& rng, Eigen::Index d,
                                  std::size_t n_couplings) {
  LindbladModel model;
  model.H = random_hermitian(rng, d);
  for (std::size_t k = 0; k < n_couplings; ++k)
    model.Ls.push_back(random_matrix(rng, d, 0.7));
  return model;
}

// Plain Taylor-series exponential; independent of the production expm.
// Converges quickly for the moderate norms used in tests.
inline Operator expm_series(const Operator& m, int max_terms = 200) {
  Operator sum = identity(m.rows());
  Operator term = identity(m.rows());
  for (int k = 1; k <= max_terms; ++k) {
    term = term * m / double(k);
    sum += term;
    if (max_abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace qdd::test
