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

// Wigner functions on a phase-space grid, Wigner negativity and relative
// cattiness.
//
// Convention: dimensionless quadratures x = (a+a†)/sqrt(2), p = -i(a-a†)/
// sqrt(2) with hbar = 1, so that  ∫ W dx dp = 1  and the vacuum is
// W = exp(-x²-p²)/π. With this normalization π W(0,0) = <Π>. Physical flux
// and charge axes are affine relabelings (Φ = Φx + Φzp·sqrt(2)·x) emitted as
// grid metadata by the scenario layer.
//
// The kernel is the displaced-parity expansion: with B = sqrt(2)(x+ip) and
// u = |B|²,
//   W(x,p) = (1/π) Σ_k Σ_m  w(ρ_{m,m+k} · t_m^{(k)}),
//   t_0^{(k)} = B^k e^{-u/2} / sqrt(k!),
//   t_m = (u-(2m-1+k))/sqrt(m(m+k)) · t_{m-1}
//         - sqrt((m-1)(m-1+k)/(m(m+k))) · t_{m-2},
// which is the associated-Laguerre closed form with the Gaussian folded in,
// so every intermediate stays bounded by O(1) on any grid.

#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "catsim/fock.hpp"
#include "catsim/types.hpp"

namespace catsim {

struct WignerGridSpec {
  double x_min = -8.0, x_max = 8.0;
  int nx = 256;
  double p_min = -8.0, p_max = 8.0;
  int np = 256;

  void validate() const {
    if (nx < 16 || np < 16) {
      throw InvalidParameterError("Wigner grid needs at least 16 points/axis");
    }
    if (!(x_max > x_min) || !(p_max > p_min) || !std::isfinite(x_min) ||
        !std::isfinite(x_max) || !std::isfinite(p_min) ||
        !std::isfinite(p_max)) {
      throw InvalidParameterError("Wigner grid ranges must be finite, ordered");
    }
  }
  double dx() const { return (x_max - x_min) / nx; }
  double dp() const { return (p_max - p_min) / np; }
  // midpoint-rule cell centers
  double x_at(int i) const { return x_min + (i + 0.5) * dx(); }
  double p_at(int j) const { return p_min + (j + 0.5) * dp(); }
};

// Coverage rule: half-width 2(sqrt(dim)+2) holds every state representable
// at this truncation.
inline double recommended_half_width(int dim) {
  return 2.0 * (std::sqrt(static_cast<double>(dim)) + 2.0);
}

inline WignerGridSpec default_grid(int dim, int points_per_axis = 256) {
  const double l = recommended_half_width(dim);
  return WignerGridSpec{-l, l, points_per_axis, -l, l, points_per_axis};
}

struct WignerGrid {
  WignerGridSpec spec;
  RealMatrix values;  // nx rows (x) by np cols (p)
  double cell_area = 0.0;
  bool coverage_warning = false;
};

// Single-point kernel evaluation.
inline double wigner_point(const Matrix& rho, double x, double p) {
  const int m_dim = static_cast<int>(rho.rows());
  const Complex b = std::sqrt(2.0) * Complex(x, p);
  const double u = std::norm(b);
  double w = 0.0;
  Complex t0k = std::exp(-0.5 * u);
  for (int k = 0; k < m_dim; ++k) {
    if (k > 0) {
      t0k *= b / std::sqrt(static_cast<double>(k));
    }
    Complex tm1 = 0.0, t = t0k;
    for (int m = 0; m + k < m_dim; ++m) {
      if (m > 0) {
        const double den = std::sqrt(static_cast<double>(m) * (m + k));
        const double c1 = (u - (2.0 * m - 1.0 + k)) / den;
        const double c2 =
            std::sqrt(static_cast<double>(m - 1) * (m - 1 + k)) / den;
        const Complex tn = c1 * t - c2 * tm1;
        tm1 = t;
        t = tn;
      }
      const Complex r = rho(m, m + k);
      w += (k == 0) ? r.real() * t.real() : 2.0 * (r * t).real();
    }
  }
  return w / M_PI;
}

// Sampled Wigner function. Row-parallel; safe on shared immutable rho.
inline WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
  spec.validate();
  WignerGrid grid;
  grid.spec = spec;
  grid.cell_area = spec.dx() * spec.dp();
  grid.values.resize(spec.nx, spec.np);
  const double rec = recommended_half_width(rho.dim());
  grid.coverage_warning = spec.x_max < rec || -spec.x_min < rec ||
                          spec.p_max < rec || -spec.p_min < rec;

  const Matrix& m = rho.matrix();
  auto fill_rows = [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double x = spec.x_at(i);
      for (int j = 0; j < spec.np; ++j) {
        grid.values(i, j) = wigner_point(m, x, spec.p_at(j));
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int want = static_cast<int>(std::min<unsigned>(hw, 8));
  if (want <= 1 || spec.nx < 2 * want) {
    fill_rows(0, spec.nx);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (spec.nx + want - 1) / want;
    for (int c = 0; c < want; ++c) {
      const int i0 = c * chunk;
      const int i1 = std::min(spec.nx, i0 + chunk);
      if (i0 < i1) {
        pool.emplace_back(fill_rows, i0, i1);
      }
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  return grid;
}

// N = 1/2 Σ (|W| - W) cell_area; zero when W is nonnegative everywhere.
inline double negativity(const WignerGrid& grid) {
  double s = 0.0;
  for (int i = 0; i < grid.spec.nx; ++i) {
    for (int j = 0; j < grid.spec.np; ++j) {
      const double w = grid.values(i, j);
      s += std::abs(w) - w;
    }
  }
  return 0.5 * s * grid.cell_area;
}

// Smallest reference negativity that still defines a meaningful ratio;
// below this the "negative volume" is kernel roundoff, not structure.
inline constexpr double kNegligibleNegativity = 1e-9;

// Cat(rho, rho_ref) = N(rho)/N(rho_ref) on the same grid.
inline double cattiness(const DensityMatrix& rho, const DensityMatrix& rho_ref,
                        const WignerGridSpec& spec) {
  const double n_ref = negativity(wigner(rho_ref, spec));
  if (n_ref <= kNegligibleNegativity) {
    throw UndefinedReferenceError(
        "reference state has zero Wigner negativity on this grid");
  }
  return negativity(wigner(rho, spec)) / n_ref;
}

// Text heightmap: '#'-prefixed metadata lines, then one "x,p,W" row per cell.
inline void write_wigner_csv(std::ostream& os, const WignerGrid& grid,
                             const std::map<std::string, std::string>& meta) {
  os << "# wigner grid: nx=" << grid.spec.nx << " np=" << grid.spec.np
     << " x=[" << grid.spec.x_min << "," << grid.spec.x_max << "] p=["
     << grid.spec.p_min << "," << grid.spec.p_max << "]\n";
  os << "# convention: x=(a+ad)/sqrt(2), p=-i(a-ad)/sqrt(2), integral W dx dp = 1\n";
  for (const auto& [k, v] : meta) {
    os << "# " << k << ": " << v << "\n";
  }
  os << "x,p,W\n";
  os << std::scientific << std::setprecision(16);
  for (int i = 0; i < grid.spec.nx; ++i) {
    for (int j = 0; j < grid.spec.np; ++j) {
      os << grid.spec.x_at(i) << "," << grid.spec.p_at(j) << ","
         << grid.values(i, j) << "\n";
    }
  }
}

}  // namespace catsim
