// Copyright 2026 The catsim authors
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

#include "catsim/observables.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "catsim/fock.hpp"

namespace catsim {
namespace {

DensityMatrix random_state(int dim, std::mt19937& rng, int rank = 0) {
  std::normal_distribution<double> dist;
  const int r = rank > 0 ? rank : dim;
  Matrix g(dim, r);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < r; ++j) {
      g(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validated(rho);
}

TEST(Energy, OscillatorGroundAndEigenstates) {
  const int dim = 8;
  const Matrix h = number_op(dim) + 0.5 * identity_op(dim);
  EXPECT_NEAR(energy(DensityMatrix::pure(fock_state(0, dim)), h), 0.5, 1e-13);

  std::mt19937 rng(17);
  Matrix g(dim, dim);
  std::normal_distribution<double> dist;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  const Matrix hr = (0.5 * (g + g.adjoint().eval())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hr);
  const DensityMatrix ground = DensityMatrix::pure(es.eigenvectors().col(0));
  EXPECT_NEAR(energy(ground, hr), es.eigenvalues()(0), 1e-10);
}

TEST(Entropy, PureMixedAndUniform) {
  const int dim = 4;
  EXPECT_NEAR(entropy(DensityMatrix::pure(coherent_state(0.7, dim))), 0.0,
              1e-9);
  EXPECT_NEAR(entropy(DensityMatrix::validated(
                  (identity_op(dim) / 4.0).eval())),
              std::log(4.0), 1e-12);
  Matrix half = Matrix::Zero(dim, dim);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  EXPECT_NEAR(entropy(DensityMatrix::validated(half)), std::log(2.0), 1e-12);
}

TEST(ParityExpect, FockCatCoherent) {
  const int dim = 30;
  EXPECT_NEAR(parity_expect(DensityMatrix::pure(fock_state(1, dim))), -1.0,
              1e-14);
  EXPECT_NEAR(parity_expect(DensityMatrix::pure(cat_state(2.0, +1, dim))), 1.0,
              1e-9);
  EXPECT_NEAR(parity_expect(DensityMatrix::pure(coherent_state(2.0, dim))),
              std::exp(-8.0), 1e-6);
}

TEST(TraceDistanceAndFidelity, PinnedPairs) {
  const int dim = 4;
  const DensityMatrix v0 = DensityMatrix::pure(fock_state(0, dim));
  const DensityMatrix v1 = DensityMatrix::pure(fock_state(1, dim));
  EXPECT_NEAR(trace_distance(v0, v0), 0.0, 1e-14);
  EXPECT_NEAR(fidelity(v0, v0), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(v0, v1), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(v0, v1), 0.0, 1e-12);

  Matrix mixed2 = Matrix::Zero(2, 2);
  mixed2(0, 0) = 0.5;
  mixed2(1, 1) = 0.5;
  const DensityMatrix half = DensityMatrix::validated(mixed2);
  const DensityMatrix pure2 = DensityMatrix::pure(fock_state(0, 2));
  EXPECT_NEAR(trace_distance(pure2, half), 0.5, 1e-12);
}

TEST(TraceDistance, TriangleInequalityOnSampledTriples) {
  std::mt19937 rng(29);
  const int dim = 5;
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix a = random_state(dim, rng);
    const DensityMatrix b = random_state(dim, rng, 2);
    const DensityMatrix c = random_state(dim, rng, 1);
    EXPECT_LE(trace_distance(a, c),
              trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST(Purity, BoundsAndUniform) {
  const int dim = 6;
  EXPECT_NEAR(purity(DensityMatrix::pure(coherent_state(1.2, dim))), 1.0,
              1e-12);
  EXPECT_NEAR(purity(DensityMatrix::validated(
                  (identity_op(dim) / 6.0).eval())),
              1.0 / 6.0, 1e-12);
}

TEST(EntropyPurity, CoupledAtPureLimit) {
  std::mt19937 rng(31);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix psi = random_state(6, rng, 1);
    EXPECT_NEAR(entropy(psi), 0.0, 1e-9);
    EXPECT_NEAR(purity(psi), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace catsim
