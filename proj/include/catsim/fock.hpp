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

// Operator algebra on a truncated Fock space. All operators are built
// exactly in the truncated basis; the canonical commutator [a, a†] = 1
// therefore fails in the last row/column, which callers must expect.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "catsim/types.hpp"

namespace catsim {

inline void require_dim(int dim, int min_dim) {
  if (dim < min_dim) {
    throw InvalidDimensionError("Fock dimension " + std::to_string(dim) +
                                " below minimum " + std::to_string(min_dim));
  }
}

// <n-1| a |n> = sqrt(n)
inline Matrix annihilation_op(int dim) {
  require_dim(dim, 2);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

inline Matrix creation_op(int dim) { return annihilation_op(dim).adjoint(); }

inline Matrix number_op(int dim) {
  require_dim(dim, 1);
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return n;
}

// diag((-1)^n)
inline Matrix parity_op(int dim) {
  require_dim(dim, 1);
  Matrix p = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

inline Matrix identity_op(int dim) {
  require_dim(dim, 1);
  return Matrix::Identity(dim, dim);
}

inline void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatchError("operator dimensions do not match");
  }
}

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double rel_tol = 1e-12) {
  const double scale = m.cwiseAbs().maxCoeff();
  return hermiticity_defect(m) <= rel_tol * std::max(scale, 1e-300);
}

inline void require_hermitian(const Matrix& m, double rel_tol = 1e-12) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatchError("matrix is not square");
  }
  if (!is_hermitian(m, rel_tol)) {
    throw ContractViolationError("matrix is not Hermitian within tolerance");
  }
}

// Kronecker product, left factor is the slow index.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline Vector fock_state(int n, int dim) {
  require_dim(dim, 1);
  if (n < 0 || n >= dim) {
    throw InvalidDimensionError("Fock index " + std::to_string(n) +
                                " outside dimension " + std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return v;
}

// Truncation big enough that a coherent state fits with comfortable margin.
inline bool coherent_truncation_adequate(Complex alpha, int dim) {
  const double a = std::abs(alpha);
  return a * a + 5.0 * a + 10.0 <= static_cast<double>(dim);
}

// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), renormalized after truncation.
inline Vector coherent_state(Complex alpha, int dim) {
  require_dim(dim, 1);
  Vector v(dim);
  Complex c = std::exp(-0.5 * std::norm(alpha));
  v(0) = c;
  for (int n = 1; n < dim; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = c;
  }
  v.normalize();
  return v;
}

// (|alpha> + sign |-alpha>) / norm; sign=+1 even cat, -1 odd cat.
inline Vector cat_state(Complex alpha, int sign, int dim) {
  if (sign != 1 && sign != -1) {
    throw InvalidParameterError("cat state sign must be +1 or -1");
  }
  Vector v = coherent_state(alpha, dim) +
             static_cast<double>(sign) * coherent_state(-alpha, dim);
  const double n = v.norm();
  if (n < 1e-12) {
    throw InvalidParameterError("cat state has vanishing norm (alpha too small)");
  }
  return v / n;
}

// f(M) by spectral decomposition M = V diag(w) V†. Requires Hermitian input.
inline Matrix hermitian_function(const Matrix& m,
                                 const std::function<double(double)>& f,
                                 double rel_tol = 1e-12) {
  require_hermitian(m, rel_tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed in hermitian_function");
  }
  RealVector w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = f(w(i));
  }
  Matrix out = es.eigenvectors() * w.asDiagonal() *
               es.eigenvectors().adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

inline Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

struct DensityTolerances {
  double trace = 1e-9;
  double hermiticity = 1e-10;
  double min_eigenvalue = -1e-8;
};

// Validated density matrix: unit trace, Hermitian, positive up to a small
// tolerated numerical negativity. Construction symmetrizes and rescales the
// trace; it never clips eigenvalues.
class DensityMatrix {
 public:
  static DensityMatrix validated(Matrix m,
                                 const DensityTolerances& tol = {}) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw InvalidDimensionError("density matrix must be square");
    }
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    if (hermiticity_defect(m) > tol.hermiticity * std::max(1.0, scale)) {
      throw ContractViolationError("density matrix not Hermitian within tolerance");
    }
    m = 0.5 * (m + m.adjoint().eval());
    const double tr = m.trace().real();
    if (std::abs(tr) < 1e-12) {
      throw ContractViolationError("density matrix trace vanishes");
    }
    m /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < tol.min_eigenvalue) {
      throw ContractViolationError(
          "density matrix has eigenvalue " + std::to_string(min_eig) +
          " below tolerated numerical negativity");
    }
    return DensityMatrix(std::move(m), min_eig);
  }

  static DensityMatrix pure(const Vector& psi) {
    Vector p = psi;
    const double n = p.norm();
    if (n < 1e-12) {
      throw ContractViolationError("state vector has vanishing norm");
    }
    p /= n;
    return DensityMatrix(p * p.adjoint(), 0.0);
  }

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double min_eigenvalue() const { return min_eig_; }

 private:
  DensityMatrix(Matrix m, double min_eig)
      : m_(std::move(m)), min_eig_(min_eig) {}
  Matrix m_;
  double min_eig_ = 0.0;
};

}  // namespace catsim
