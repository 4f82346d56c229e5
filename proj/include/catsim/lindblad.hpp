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

// Lindblad generator machinery. The master equation is
//   drho/dt = -i [H, rho] + sum_j rate_j D[L_j] rho,
//   D[L] rho = L rho L† - 1/2 (L†L rho + rho L†L).
// Superoperators act on column-stacked rho: vec(A rho B) = (B^T ⊗ A) vec(rho).

#pragma once

#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "catsim/fock.hpp"
#include "catsim/types.hpp"

namespace catsim {

struct LindbladChannel {
  Matrix op;
  double rate = 0.0;
  std::string label;
};

inline LindbladChannel channel(Matrix op, double rate, std::string label = "") {
  if (rate < 0.0) {
    throw InvalidParameterError("channel rate must be nonnegative");
  }
  if (op.rows() != op.cols()) {
    throw DimensionMismatchError("jump operator must be square");
  }
  return LindbladChannel{std::move(op), rate, std::move(label)};
}

// rate * (L rho L† - 1/2 {L†L, rho}); traceless for any rho.
inline Matrix dissipator_apply(const LindbladChannel& c, const Matrix& rho) {
  require_same_dim(c.op, rho);
  const Matrix ldl = c.op.adjoint() * c.op;
  return c.rate * (c.op * rho * c.op.adjoint() -
                   0.5 * (ldl * rho + rho * ldl));
}

// Full right-hand side -i[H, rho] + sum_j rate_j D[L_j] rho.
inline Matrix lindblad_rhs(const Matrix& h,
                           const std::vector<LindbladChannel>& channels,
                           const Matrix& rho) {
  require_same_dim(h, rho);
  Matrix d = -imag_unit * (h * rho - rho * h);
  for (const auto& c : channels) {
    d += dissipator_apply(c, rho);
  }
  return d;
}

struct Liouvillian {
  int dim = 0;       // Hilbert dimension N; matrix is N^2 x N^2
  Matrix matrix;
};

// -i(I ⊗ H - H^T ⊗ I) + sum_j rate_j [ conj(L) ⊗ L
//   - 1/2 I ⊗ (L†L) - 1/2 (L†L)^T ⊗ I ]  (column stacking).
inline Liouvillian liouvillian_matrix(
    const Matrix& h, const std::vector<LindbladChannel>& channels,
    double herm_tol = 1e-10) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatchError("Hamiltonian must be square");
  }
  if (!is_hermitian(h, herm_tol)) {
    throw ContractViolationError("Hamiltonian not Hermitian within tolerance");
  }
  const int n = static_cast<int>(h.rows());
  const Matrix id = identity_op(n);
  Matrix l = -imag_unit *
             (tensor(id, h) - tensor(h.transpose().eval(), id));
  for (const auto& c : channels) {
    require_same_dim(c.op, h);
    const Matrix ldl = c.op.adjoint() * c.op;
    l += c.rate * (tensor(c.op.conjugate().eval(), c.op) -
                   0.5 * tensor(id, ldl) -
                   0.5 * tensor(ldl.transpose().eval(), id));
  }
  return Liouvillian{n, std::move(l)};
}

// Frobenius norm of drho/dt; zero iff rho is stationary.
inline double residual_norm(const Matrix& rho, const Matrix& h,
                            const std::vector<LindbladChannel>& channels) {
  return lindblad_rhs(h, channels, rho).norm();
}

// Spectral-norm estimate of the generator by power iteration on the direct
// superoperator action; used to make residual thresholds relative.
inline double liouvillian_norm_estimate(
    const Matrix& h, const std::vector<LindbladChannel>& channels,
    int iterations = 25) {
  const int n = static_cast<int>(h.rows());
  Matrix v = Matrix::Zero(n, n);
  // deterministic pseudo-random start spread over all entries
  double s = 0.12345;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s = std::fmod(s * 997.0 + 0.173, 1.0);
      v(i, j) = Complex(s - 0.5, 0.31 * s);
    }
  }
  v /= v.norm();
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Matrix w = lindblad_rhs(h, channels, v);
    est = w.norm();
    if (est < 1e-300) {
      return 0.0;
    }
    v = w / est;
  }
  return est;
}

// Trace over the probe (right Kronecker factor, signal ⊗ probe ordering).
inline Matrix partial_trace_signal(const Matrix& rho_joint, int dim_a,
                                   int dim_b) {
  if (rho_joint.rows() != rho_joint.cols() ||
      rho_joint.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionMismatchError(
        "joint state dimension does not factor as dim_a * dim_b");
  }
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out(i, j) = rho_joint.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

// True when H and every jump operator commute with Fock parity, in which
// case even and odd sectors each hold a fixed point and the algebraic
// steady-state path must be refused (null space dimension >= 2).
inline bool parity_sectored(const Matrix& h,
                            const std::vector<LindbladChannel>& channels,
                            double rel_tol = 1e-10) {
  const int n = static_cast<int>(h.rows());
  const Matrix pi = parity_op(n);
  auto commutes = [&](const Matrix& m) {
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    return ((m * pi - pi * m).cwiseAbs().maxCoeff()) <= rel_tol * scale;
  };
  if (!commutes(h)) {
    return false;
  }
  for (const auto& c : channels) {
    if (c.rate > 0.0 && !commutes(c.op)) {
      return false;
    }
  }
  return true;
}

// Numerically detected null-space dimension of the generator. Rank-revealing
// QR is dense: intended for verification at small dimensions.
inline int nullspace_dimension(const Liouvillian& l,
                               double rel_threshold = 1e-9) {
  Eigen::ColPivHouseholderQR<Matrix> qr(l.matrix);
  qr.setThreshold(rel_threshold);
  return static_cast<int>(l.matrix.cols() - qr.rank());
}

}  // namespace catsim
