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

// Scalar diagnostics over density matrices.

#pragma once

#include <cmath>

#include <Eigen/Eigenvalues>

#include "catsim/fock.hpp"
#include "catsim/types.hpp"

namespace catsim {

// Re Tr(rho H); the imaginary residue must be numerical noise.
inline double energy(const DensityMatrix& rho, const Matrix& h) {
  require_same_dim(rho.matrix(), h);
  const Complex tr = (rho.matrix() * h).trace();
  const double scale = std::max(1.0, std::abs(tr));
  if (std::abs(tr.imag()) > 1e-10 * scale) {
    throw ContractViolationError("energy has non-negligible imaginary part");
  }
  return tr.real();
}

// S = -sum lambda_i ln lambda_i. Eigenvalues below eps_clip contribute
// nothing; eigenvalues below -1e-8 mean the state is not a valid density
// matrix and raise instead of being hidden.
inline double entropy(const DensityMatrix& rho, double eps_clip = 1e-14) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w < -1e-8) {
      throw ContractViolationError("entropy of a non-positive state");
    }
    if (w > eps_clip) {
      s -= w * std::log(w);
    }
  }
  return std::max(s, 0.0);
}

inline double purity(const DensityMatrix& rho) {
  return rho.matrix().squaredNorm();
}

// Re Tr(rho Pi) = sum_n (-1)^n rho_nn.
inline double parity_expect(const DensityMatrix& rho) {
  double p = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    p += ((n % 2 == 0) ? 1.0 : -1.0) * rho.matrix()(n, n).real();
  }
  return p;
}

// 1/2 ||rho1 - rho2||_1 via the spectrum of the Hermitian difference.
inline double trace_distance(const DensityMatrix& rho1,
                             const DensityMatrix& rho2) {
  require_same_dim(rho1.matrix(), rho2.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho1.matrix() - rho2.matrix(),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace detail {
// PSD square root with clipping of tolerated numerical negativity.
inline Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = std::sqrt(std::max(w(i), 0.0));
  }
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

// Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, in [0, 1].
inline double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1.matrix(), rho2.matrix());
  const Matrix s = detail::psd_sqrt(rho1.matrix());
  const Matrix inner = s * rho2.matrix() * s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()),
                                           Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return std::min(f * f, 1.0);
}

}  // namespace catsim
