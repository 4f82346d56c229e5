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

// Model builders.
//
// SQUID ring: a flux mode in a double-well potential, quantized about the
// external bias point (shifted frame, phi = Phi - Phi_x), so that at
// half-flux bias the potential is even in phi and Fock parity (-1)^n is the
// conserved parity. The returned ring Hamiltonian is H/(hbar*omega_LC);
// time is measured in units of 1/omega_LC and all Lindblad rates are
// dimensionless in that same unit.
//
// Two-cavity coupler: a driven probe cavity cross-coupled to a signal
// cavity. Tensor ordering is signal (x) probe: the signal operator acts on
// the left Kronecker factor. Coupler Hamiltonians are H/hbar with chi's and
// kappa's carrying the (common, arbitrary) frequency unit.

#pragma once

#include <cmath>

#include "catsim/fock.hpp"
#include "catsim/types.hpp"

namespace catsim {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;    // J s
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);
}  // namespace constants

struct CircuitParams {
  double inductance = 3e-10;       // henry
  double capacitance = 5e-15;      // farad
  double critical_current = 2e-6;  // ampere
  double external_flux_frac = 0.5; // Phi_x / Phi_0

  void validate() const {
    if (!(inductance > 0.0) || !(capacitance > 0.0) ||
        !(critical_current > 0.0)) {
      throw InvalidParameterError("circuit parameters must be positive");
    }
    if (!(external_flux_frac >= 0.0) || !(external_flux_frac < 1.0)) {
      throw InvalidParameterError("external flux fraction must lie in [0, 1)");
    }
  }

  double omega_lc() const {
    return 1.0 / std::sqrt(inductance * capacitance);
  }
  // Zero-point flux of the LC mode, webers.
  double phi_zp() const {
    return std::sqrt(constants::hbar / (2.0 * capacitance * omega_lc()));
  }
  // Screening parameter; > 1 means the potential has two wells.
  double beta_l() const {
    return 2.0 * M_PI * inductance * critical_current /
           constants::flux_quantum;
  }
  bool double_well() const { return beta_l() > 1.0; }
  // Junction energy over hbar*omega_LC: Ic/(2 e omega_LC), dimensionless.
  double josephson_scale() const {
    return critical_current /
           (2.0 * constants::elementary_charge * omega_lc());
  }
  // 2*pi*Phi_zp/Phi_0: flux operator prefactor inside the cosine.
  double cosine_coupling() const {
    return 2.0 * M_PI * phi_zp() / constants::flux_quantum;
  }
};

// Shifted flux operator phi = Phi - Phi_x in webers: phi = Phi_zp (a + a†).
inline Matrix squid_flux_operator(const CircuitParams& p, int dim) {
  p.validate();
  require_dim(dim, 2);
  const Matrix a = annihilation_op(dim);
  return p.phi_zp() * (a + a.adjoint().eval());
}

// H/(hbar omega_LC) = a†a + 1/2 - u_J cos(lambda (a+a†) + 2 pi f_x),
// with the cosine evaluated spectrally. Even in phi at f_x = 1/2.
inline Matrix squid_hamiltonian(const CircuitParams& p, int dim) {
  p.validate();
  require_dim(dim, 2);
  const Matrix a = annihilation_op(dim);
  const Matrix x = a + a.adjoint().eval();
  const double offset = 2.0 * M_PI * p.external_flux_frac;
  const Matrix cosine = hermitian_function(
      p.cosine_coupling() * x,
      [offset](double w) { return std::cos(w + offset); });
  Matrix h = number_op(dim) + 0.5 * identity_op(dim) -
             p.josephson_scale() * cosine;
  return 0.5 * (h + h.adjoint().eval());
}

struct CouplerParams {
  double chi_a = 0.0;    // signal self-Kerr, rad/s
  double chi_b = 0.0;    // probe self-Kerr, rad/s
  double kappa_a = 0.0;  // signal photon decay, 1/s
  double kappa_b = 0.0;  // probe photon decay, 1/s
  Complex epsilon = 0.0; // probe drive amplitude, rad/s

  void validate() const {
    if (chi_a < 0.0 || chi_b < 0.0 || kappa_a < 0.0) {
      throw InvalidParameterError("chi_a, chi_b, kappa_a must be nonnegative");
    }
    if (!(kappa_b > 0.0)) {
      throw InvalidParameterError("kappa_b must be positive");
    }
  }

  // Probe steady amplitude without the coupler, real by phase convention.
  double beta0() const { return 2.0 * std::abs(epsilon) / kappa_b; }
  double cross_coupling() const { return std::sqrt(chi_a * chi_b); }
};

struct EffectiveRates {
  double gamma2 = 0.0;      // two-photon decay
  double gamma_perp = 0.0;  // dephasing, gamma2/4 by construction
};

// Gamma_2 = 16 chi_a chi_b beta0^2 / kappa_b, Gamma_perp = Gamma_2 / 4.
inline EffectiveRates effective_rates(const CouplerParams& p) {
  p.validate();
  const double b0 = p.beta0();
  EffectiveRates r;
  r.gamma2 = 16.0 * p.chi_a * p.chi_b * b0 * b0 / p.kappa_b;
  r.gamma_perp = 0.25 * r.gamma2;
  return r;
}

// H_a/hbar = chi_a a†²a² + 4 sqrt(chi_a chi_b) beta0² a†a
//          + sqrt(chi_a chi_b) beta0² (a² + a†²)
inline Matrix signal_mode_hamiltonian(const CouplerParams& p, int dim) {
  p.validate();
  require_dim(dim, 3);
  const Matrix a = annihilation_op(dim);
  const Matrix a2 = a * a;
  const Matrix ad2 = a2.adjoint();
  const double j = p.cross_coupling();
  const double b2 = p.beta0() * p.beta0();
  Matrix h = p.chi_a * (ad2 * a2) + 4.0 * j * b2 * number_op(dim) +
             j * b2 * (a2 + ad2);
  return 0.5 * (h + h.adjoint().eval());
}

// Lab-frame interaction Hamiltonian on signal (x) probe:
// H/hbar = chi_b b†²b² + chi_a a†²a² + (eps* b + eps b†)
//        + sqrt(chi_a chi_b) (b²a†² + b†²a² + 4 a†a b†b)
inline Matrix two_mode_hamiltonian(const CouplerParams& p, int dim_a,
                                   int dim_b) {
  p.validate();
  require_dim(dim_a, 2);
  require_dim(dim_b, 2);
  const Matrix a = tensor(annihilation_op(dim_a), identity_op(dim_b));
  const Matrix b = tensor(identity_op(dim_a), annihilation_op(dim_b));
  const Matrix a2 = a * a, b2 = b * b;
  const Matrix ad2 = a2.adjoint(), bd2 = b2.adjoint();
  const double j = p.cross_coupling();
  Matrix h = p.chi_b * (bd2 * b2) + p.chi_a * (ad2 * a2) +
             std::conj(p.epsilon) * b + p.epsilon * b.adjoint() +
             j * (b2 * ad2 + bd2 * a2 +
                  4.0 * (a.adjoint() * a) * (b.adjoint() * b));
  return 0.5 * (h + h.adjoint().eval());
}

// Displaced-frame Hamiltonian linearized in the probe fluctuation bbar:
// H/hbar = H_a + 4 J beta0 (bbar + bbar†) a†a + 2 J beta0 (bbar† a² + bbar a†²)
inline Matrix linearized_hamiltonian(const CouplerParams& p, int dim_a,
                                     int dim_b) {
  p.validate();
  require_dim(dim_a, 2);
  require_dim(dim_b, 2);
  const Matrix ha = tensor(signal_mode_hamiltonian(p, dim_a),
                           identity_op(dim_b));
  const Matrix a = tensor(annihilation_op(dim_a), identity_op(dim_b));
  const Matrix bb = tensor(identity_op(dim_a), annihilation_op(dim_b));
  const Matrix a2 = a * a;
  const double g = p.cross_coupling() * p.beta0();
  Matrix h = ha + 4.0 * g * (bb + bb.adjoint()) * (a.adjoint() * a) +
             2.0 * g * (bb.adjoint() * a2 + bb * a2.adjoint());
  return 0.5 * (h + h.adjoint().eval());
}

// Exact displaced-frame two-mode Hamiltonian: the lab-frame interaction
// evaluated at b -> bbar + beta0. The coherent drive cancels against the
// frame shift of the probe damping when beta0 = 2|eps|/kappa_b, so no drive
// term appears; constant shifts are dropped. Used by the coupler validation
// path together with jumps kappa_a D[a], kappa_b D[bbar].
inline Matrix displaced_two_mode_hamiltonian(const CouplerParams& p,
                                             int dim_a, int dim_b) {
  p.validate();
  require_dim(dim_a, 2);
  require_dim(dim_b, 2);
  const int n = dim_a * dim_b;
  const Matrix a = tensor(annihilation_op(dim_a), identity_op(dim_b));
  const Matrix bs = tensor(identity_op(dim_a), annihilation_op(dim_b)) +
                    p.beta0() * Matrix::Identity(n, n);
  const Matrix a2 = a * a, bs2 = bs * bs;
  const Matrix ad2 = a2.adjoint(), bsd2 = bs2.adjoint();
  const double j = p.cross_coupling();
  Matrix h = p.chi_b * (bsd2 * bs2) + p.chi_a * (ad2 * a2) +
             j * (bs2 * ad2 + bsd2 * a2 +
                  4.0 * (a.adjoint() * a) * (bs.adjoint() * bs));
  h -= h.trace() / static_cast<double>(n) * Matrix::Identity(n, n);
  return 0.5 * (h + h.adjoint().eval());
}

}  // namespace catsim
