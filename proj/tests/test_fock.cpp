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

#include "catsim/fock.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace catsim {
namespace {

TEST(Annihilation, MatrixElements) {
  const Matrix a2 = annihilation_op(2);
  // a|1> = |0>
  Vector v = a2 * fock_state(1, 2);
  EXPECT_NEAR(std::abs(v(0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(1)), 0.0, 1e-15);

  const Matrix a4 = annihilation_op(4);
  EXPECT_NEAR(a4(2, 3).real(), std::sqrt(3.0), 1e-12);
  EXPECT_THROW(annihilation_op(1), InvalidDimensionError);
}

TEST(Annihilation, CoherentEigenrelation) {
  const int dim = 16;
  const Complex alpha = 1.0;
  const Vector c = coherent_state(alpha, dim);
  Vector ac = annihilation_op(dim) * c;
  ac.normalize();
  const double overlap = std::abs((c.adjoint() * ac)(0, 0));
  EXPECT_GE(overlap, 0.999);
}

TEST(Annihilation, CommutatorTruncationCorner) {
  const int dim = 12;
  const Matrix a = annihilation_op(dim);
  const Matrix comm = a * a.adjoint() - a.adjoint() * a;
  // [a, a†] = 1 on the top-left block; the last diagonal entry deviates.
  for (int i = 0; i < dim - 1; ++i) {
    for (int j = 0; j < dim - 1; ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(comm(i, j) - expect), 0.0, 1e-12);
    }
  }
  EXPECT_NEAR(comm(dim - 1, dim - 1).real(), 1.0 - dim, 1e-12);
}

TEST(Parity, DiagonalSigns) {
  const Matrix p = parity_op(3);
  EXPECT_NEAR(p(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(p(1, 1).real(), -1.0, 1e-15);
  EXPECT_NEAR(p(2, 2).real(), 1.0, 1e-15);
}

TEST(Parity, Involution) {
  const Matrix p = parity_op(7);
  EXPECT_NEAR((p * p - identity_op(7)).cwiseAbs().maxCoeff(), 0.0, 0.0);
}

TEST(Parity, CommutesWithPairLowering) {
  const int dim = 8;
  const Matrix p = parity_op(dim);
  const Matrix a2 = annihilation_op(dim) * annihilation_op(dim);
  EXPECT_NEAR((p * a2 * p - a2).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(FockState, BasisVectorsAndExpectations) {
  const Vector v = fock_state(0, 4);
  EXPECT_NEAR(std::abs(v(0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(v.tail(3).norm(), 0.0, 1e-15);

  const int dim = 6;
  const Matrix n = number_op(dim);
  const Vector f2 = fock_state(2, dim);
  EXPECT_NEAR((f2.adjoint() * n * f2)(0, 0).real(), 2.0, 1e-14);
  const Vector f1 = fock_state(1, dim);
  EXPECT_NEAR((f1.adjoint() * parity_op(dim) * f1)(0, 0).real(), -1.0, 1e-14);

  EXPECT_THROW(fock_state(4, 4), InvalidDimensionError);
  EXPECT_THROW(fock_state(-1, 4), InvalidDimensionError);
}

TEST(CoherentState, VacuumAndMeanPhotonNumber) {
  const Vector v = coherent_state(0.0, 4);
  EXPECT_NEAR((v - fock_state(0, 4)).norm(), 0.0, 1e-15);

  const int dim = 20;
  const Vector c = coherent_state(1.0, dim);
  const double nbar = (c.adjoint() * number_op(dim) * c)(0, 0).real();
  EXPECT_NEAR(nbar, 1.0, 1e-6);
}

TEST(CoherentState, ParityMatchesAnalyticSeries) {
  const int dim = 30;
  const Complex alpha = 2.0;
  const Vector c = coherent_state(alpha, dim);
  // oracle: alternating Poisson series for <Pi>, summed independently
  double series = 0.0;
  double log_fact = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) {
      log_fact += std::log(static_cast<double>(n));
    }
    const double pn =
        std::exp(-std::norm(alpha) + n * std::log(std::norm(alpha)) - log_fact);
    series += ((n % 2 == 0) ? pn : -pn);
  }
  double expect = 0.0;
  for (int n = 0; n < dim; ++n) {
    expect += ((n % 2 == 0) ? 1.0 : -1.0) * std::norm(c(n));
  }
  EXPECT_NEAR(expect, series, 1e-12);
  EXPECT_NEAR(expect, std::exp(-2.0 * std::norm(alpha)), 1e-6);
}

TEST(CoherentState, EigenrelationResidual) {
  const Complex alpha = 2.0;
  const int dim = 30;  // >= |a|^2+6|a|+10
  const Vector c = coherent_state(alpha, dim);
  const Vector r = annihilation_op(dim) * c - alpha * c;
  EXPECT_LT(r.norm(), 1e-6);
}

TEST(CoherentState, TruncationAdequacyRule) {
  EXPECT_TRUE(coherent_truncation_adequate(1.0, 16));
  EXPECT_FALSE(coherent_truncation_adequate(3.0, 16));
}

TEST(CatState, ParityStructure) {
  const int dim = 40;
  const Vector even = cat_state(2.0, +1, dim);
  const Vector odd = cat_state(2.0, -1, dim);
  for (int n = 0; n < dim; ++n) {
    if (n % 2 == 1) {
      EXPECT_NEAR(std::abs(even(n)), 0.0, 1e-14);
    } else {
      EXPECT_NEAR(std::abs(odd(n)), 0.0, 1e-14);
    }
  }
  EXPECT_NEAR(even.norm(), 1.0, 1e-12);
}

TEST(HermitianFunction, IdentityFunction) {
  const int dim = 8;
  const Matrix a = annihilation_op(dim);
  const Matrix m = a + a.adjoint().eval();
  const Matrix f = hermitian_function(m, [](double w) { return w; });
  EXPECT_LT((f - m).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(HermitianFunction, CosOfZeroIsIdentity) {
  const Matrix z = Matrix::Zero(5, 5);
  const Matrix f = hermitian_function(z, [](double w) { return std::cos(w); });
  EXPECT_LT((f - identity_op(5)).cwiseAbs().maxCoeff(), 1e-14);
}

// Oracle: scaled Taylor series for the matrix cosine. cos is expanded at
// ||M||/2^s <= 1/2 where 12 terms are exact to ~1e-20, then the double-angle
// identity cos(2X) = 2 cos(X)^2 - 1 recovers the full argument.
Matrix taylor_matrix_cos(const Matrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    ++s;
    scale *= 0.5;
  }
  const Matrix x = scale * m;
  const Matrix x2 = x * x;
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  Matrix sum = term;
  for (int k = 1; k < 12; ++k) {
    term = (term * x2 * (-1.0 / ((2.0 * k - 1.0) * (2.0 * k)))).eval();
    sum += term;
  }
  for (int k = 0; k < s; ++k) {
    sum = (2.0 * (sum * sum) - Matrix::Identity(m.rows(), m.cols())).eval();
  }
  return sum;
}

TEST(HermitianFunction, CosMatchesTaylorOracle) {
  const int dim = 10;
  const Matrix a = annihilation_op(dim);
  const Matrix m = a + a.adjoint().eval();
  const Matrix spectral =
      hermitian_function(m, [](double w) { return std::cos(w); });
  const Matrix oracle = taylor_matrix_cos(m);
  EXPECT_LT((spectral - oracle).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(HermitianFunction, RejectsNonHermitian) {
  const Matrix a = annihilation_op(4);
  EXPECT_THROW(hermitian_function(a, [](double w) { return w; }),
               ContractViolationError);
}

TEST(HermitianFunction, CommutesWithUnitaryConjugation) {
  std::mt19937 rng(7);
  std::normal_distribution<double> dist;
  const int dim = 9;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  m = 0.5 * (m + m.adjoint().eval());
  // unitary from the spectrum of another random Hermitian matrix
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  g = 0.5 * (g + g.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Matrix u = es.eigenvectors();
  auto f = [](double w) { return std::tanh(w); };
  const Matrix lhs = hermitian_function((u * m * u.adjoint()).eval(), f);
  const Matrix rhs = u * hermitian_function(m, f) * u.adjoint();
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(hermiticity_defect(lhs), 1e-12);
}

TEST(DensityMatrix, ValidationContracts) {
  const int dim = 5;
  const DensityMatrix rho = DensityMatrix::pure(coherent_state(0.8, dim));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);

  Matrix bad = Matrix::Zero(dim, dim);
  bad(0, 1) = 1.0;  // not Hermitian
  EXPECT_THROW(DensityMatrix::validated(bad), ContractViolationError);

  Matrix neg = Matrix::Zero(dim, dim);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;  // far beyond tolerated numerical negativity
  EXPECT_THROW(DensityMatrix::validated(neg), ContractViolationError);

  Matrix scaled = 2.0 * DensityMatrix::pure(fock_state(1, dim)).matrix();
  const DensityMatrix renorm = DensityMatrix::validated(scaled);
  EXPECT_NEAR(renorm.matrix().trace().real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace catsim
