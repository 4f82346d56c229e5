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

// Master-equation time integration and steady states.
//
// The vectorized state is advanced with an adaptive Dormand-Prince 5(4)
// stepper (boost::odeint) at abs/rel tolerance 1e-9 by default; a fixed-step
// classic RK4 fallback is available through the options. Output states are
// renormalized in trace only, with the pre-normalization drift recorded.
//
// Two-photon decay makes the generator stiff at high Fock index (decay rates
// grow like n^2), which caps the stable explicit step. When enabled, the
// integrator tracks the occupied Fock support and restricts the generator to
// it, keeping a guard band of levels; discarded tail mass is accounted in
// the diagnostics and bounded far below the trace-drift contract.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include <Eigen/LU>

#include "catsim/fock.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/types.hpp"

namespace catsim {

struct IntegratorOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double fixed_step = 0.0;    // > 0 selects fixed-step RK4
  double initial_step = 1e-3;
  std::size_t max_steps = 200'000'000;
  bool adaptive_support = false;  // restrict generator to occupied Fock levels
  double support_tail = 1e-14;    // population treated as unoccupied
  int support_guard = 10;         // guard band above the occupied block
};

struct TrajectoryDiagnostics {
  std::size_t steps = 0;
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double max_hermiticity_defect = 0.0;
  double truncated_mass = 0.0;   // total population dropped by support shrinks
  int support_events = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::map<std::string, std::vector<double>> observables;
  TrajectoryDiagnostics diagnostics;
};

namespace detail {

using OdeState = std::vector<double>;  // interleaved re/im of column-major rho

inline Eigen::Map<Matrix> as_matrix(OdeState& y, int d) {
  return Eigen::Map<Matrix>(reinterpret_cast<Complex*>(y.data()), d, d);
}
inline Eigen::Map<const Matrix> as_matrix(const OdeState& y, int d) {
  return Eigen::Map<const Matrix>(reinterpret_cast<const Complex*>(y.data()),
                                  d, d);
}

// Right-hand side on the currently active Fock block.
class MasterEquationRhs {
 public:
  MasterEquationRhs(const Matrix& h, const std::vector<LindbladChannel>& chans,
                    int d)
      : d_(d), h_(h.topLeftCorner(d, d)) {
    for (const auto& c : chans) {
      if (c.rate <= 0.0) {
        continue;
      }
      Channel ch;
      ch.rate = c.rate;
      ch.op = c.op.topLeftCorner(d, d);
      ch.opd = ch.op.adjoint();
      ch.ldl = ch.opd * ch.op;
      chans_.push_back(std::move(ch));
    }
    tmp_.resize(d, d);
    tmp2_.resize(d, d);
  }

  void operator()(const OdeState& y, OdeState& dydt, double /*t*/) const {
    auto rho = as_matrix(y, d_);
    dydt.resize(y.size());
    auto out = as_matrix(dydt, d_);
    tmp_.noalias() = h_ * rho;
    tmp2_.noalias() = rho * h_;
    out = Complex(0.0, -1.0) * (tmp_ - tmp2_);
    for (const auto& c : chans_) {
      tmp_.noalias() = c.op * rho;
      tmp2_.noalias() = tmp_ * c.opd;
      out += c.rate * tmp2_;
      tmp_.noalias() = c.ldl * rho;
      out -= (0.5 * c.rate) * tmp_;
      tmp_.noalias() = rho * c.ldl;
      out -= (0.5 * c.rate) * tmp_;
    }
  }

 private:
  struct Channel {
    Matrix op, opd, ldl;
    double rate;
  };
  int d_;
  Matrix h_;
  std::vector<Channel> chans_;
  mutable Matrix tmp_, tmp2_;
};

// Advance y over [t0, t1]; returns steps taken. Throws IntegrationError on
// persistent step-size failure or step-budget exhaustion.
inline std::size_t advance_segment(const MasterEquationRhs& rhs, OdeState& y,
                                   double t0, double t1, double& dt,
                                   const IntegratorOptions& opt,
                                   std::size_t steps_so_far) {
  namespace ode = boost::numeric::odeint;
  std::size_t steps = 0;
  if (opt.fixed_step > 0.0) {
    ode::runge_kutta4<OdeState> stepper;
    auto system = [&rhs](const OdeState& s, OdeState& dsdt, double t) {
      rhs(s, dsdt, t);
    };
    const double span = t1 - t0;
    const auto n = static_cast<std::size_t>(
        std::max(1.0, std::ceil(span / opt.fixed_step)));
    const double h = span / static_cast<double>(n);
    double t = t0;
    for (std::size_t k = 0; k < n; ++k, t += h) {
      stepper.do_step(system, y, t, h);
      ++steps;
    }
    return steps;
  }
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<OdeState>>(
      opt.abs_tol, opt.rel_tol);
  auto system = [&rhs](const OdeState& s, OdeState& dsdt, double t) {
    rhs(s, dsdt, t);
  };
  double t = t0;
  int consecutive_failures = 0;
  while (t < t1) {
    dt = std::min(dt, t1 - t);
    if (!(dt > 0.0) || !std::isfinite(dt) || t + dt == t) {
      throw IntegrationError("step size underflow", t);
    }
    const auto result = stepper.try_step(system, y, t, dt);
    if (result == ode::fail) {
      if (++consecutive_failures > 600) {
        throw IntegrationError("step control failed to find a usable step", t);
      }
      continue;
    }
    consecutive_failures = 0;
    if (++steps + steps_so_far > opt.max_steps) {
      throw IntegrationError("step budget exhausted", t);
    }
  }
  return steps;
}

inline std::vector<double> populations(const OdeState& y, int d) {
  auto rho = as_matrix(y, d);
  std::vector<double> p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = std::abs(rho(i, i).real());
  }
  return p;
}

}  // namespace detail

// Integrate drho/dt = -i[H,rho] + sum_j rate_j D[L_j] rho over the given
// output grid. t_grid must start at 0 and increase strictly.
inline Trajectory evolve(const DensityMatrix& rho0, const Matrix& h,
                         const std::vector<LindbladChannel>& channels,
                         const std::vector<double>& t_grid,
                         const IntegratorOptions& opt = {}) {
  const int n = rho0.dim();
  require_same_dim(rho0.matrix(), h);
  for (const auto& c : channels) {
    require_same_dim(c.op, h);
  }
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw InvalidParameterError("time grid must start at 0");
  }
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) {
      throw InvalidParameterError("time grid must increase strictly");
    }
  }

  Trajectory traj;
  traj.diagnostics.min_eigenvalue = rho0.min_eigenvalue();

  int d = n;  // active block
  detail::OdeState y(2 * static_cast<std::size_t>(n) * n);
  detail::as_matrix(y, n) = rho0.matrix();
  auto rhs = std::make_unique<detail::MasterEquationRhs>(h, channels, d);

  const DensityTolerances traj_tol{1e-7, 1e-9, -1e-7};
  double dt = opt.initial_step;

  auto record = [&](double t) {
    Matrix full = Matrix::Zero(n, n);
    full.topLeftCorner(d, d) = detail::as_matrix(y, d);
    const double drift = std::abs(full.trace().real() - 1.0 +
                                  traj.diagnostics.truncated_mass);
    traj.diagnostics.max_trace_drift =
        std::max(traj.diagnostics.max_trace_drift, drift);
    traj.diagnostics.max_hermiticity_defect =
        std::max(traj.diagnostics.max_hermiticity_defect,
                 hermiticity_defect(full));
    if (drift > 1e-7) {
      throw IntegrationError("trace drift exceeded contract", t);
    }
    DensityMatrix state = DensityMatrix::validated(std::move(full), traj_tol);
    traj.diagnostics.min_eigenvalue =
        std::min(traj.diagnostics.min_eigenvalue, state.min_eigenvalue());
    traj.times.push_back(t);
    traj.states.push_back(std::move(state));
  };

  auto adapt_support = [&]() {
    if (!opt.adaptive_support) {
      return;
    }
    const auto p = detail::populations(y, d);
    int top = 0;
    for (int i = 0; i < d; ++i) {
      if (p[i] > opt.support_tail) {
        top = i;
      }
    }
    double guard_mass = 0.0;
    for (int i = std::max(0, d - 4); i < d; ++i) {
      guard_mass += p[i];
    }
    int d_new = d;
    if (guard_mass > 100.0 * opt.support_tail && d < n) {
      d_new = std::min(n, d + opt.support_guard);
    } else {
      const int want = std::min(n, top + 1 + opt.support_guard);
      if (want < d - 4) {
        d_new = want;
      }
    }
    if (d_new == d) {
      return;
    }
    Matrix cur = detail::as_matrix(y, d);
    if (d_new < d) {
      for (int i = d_new; i < d; ++i) {
        traj.diagnostics.truncated_mass += p[i];
      }
    }
    detail::OdeState y_new(2 * static_cast<std::size_t>(d_new) * d_new, 0.0);
    {
      auto m = detail::as_matrix(y_new, d_new);
      const int dc = std::min(d, d_new);
      m.topLeftCorner(dc, dc) = cur.topLeftCorner(dc, dc);
    }
    y.swap(y_new);
    d = d_new;
    rhs = std::make_unique<detail::MasterEquationRhs>(h, channels, d);
    ++traj.diagnostics.support_events;
  };

  record(t_grid.front());
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    traj.diagnostics.steps += detail::advance_segment(
        *rhs, y, t_grid[k - 1], t_grid[k], dt, opt, traj.diagnostics.steps);
    record(t_grid[k]);
    adapt_support();
  }
  return traj;
}

enum class SteadyStateMethod { Auto, Trajectory, Algebraic };

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::Auto;
  double residual_tol = 1e-9;  // relative to the generator norm estimate
  double block_time = 20.0;
  double max_time = 20000.0;
  int algebraic_dim_limit = 64;      // N^2 x N^2 dense solve guard
  int nullspace_check_limit = 40;    // exact nullity only below this N
  IntegratorOptions integrator{};
};

struct SteadyStateResult {
  DensityMatrix state;
  double residual = 0.0;
  double time_reached = 0.0;  // 0 for the algebraic path
  int nullspace_dim = -1;     // -1: not computed
  std::string method_used;
};

namespace detail {

inline SteadyStateResult algebraic_steady_state(
    const Matrix& h, const std::vector<LindbladChannel>& channels,
    const SteadyStateOptions& opt, double abs_residual_tol) {
  const int n = static_cast<int>(h.rows());
  if (n > opt.algebraic_dim_limit) {
    throw InvalidParameterError(
        "algebraic steady-state solve disabled above dimension limit");
  }
  if (parity_sectored(h, channels)) {
    throw ConvergenceError(
        "degenerate null space (dimension >= 2): the generator conserves Fock "
        "parity, so each parity sector holds a fixed point; use the "
        "trajectory method with an initial state");
  }
  Liouvillian liou = liouvillian_matrix(h, channels);
  int nullity = -1;
  if (n <= opt.nullspace_check_limit) {
    nullity = nullspace_dimension(liou);
    if (nullity > 1) {
      throw ConvergenceError(
          "degenerate null space (dimension " + std::to_string(nullity) +
          "): steady state depends on the initial state; use the trajectory "
          "method");
    }
  }
  Matrix a = std::move(liou.matrix);
  // impose Tr rho = 1 in place of the first row
  a.row(0).setZero();
  for (int i = 0; i < n; ++i) {
    a(0, i * (n + 1)) = 1.0;
  }
  Vector b = Vector::Zero(static_cast<Eigen::Index>(n) * n);
  b(0) = 1.0;
  Eigen::PartialPivLU<Matrix> lu(std::move(a));
  Vector x = lu.solve(b);
  if (!x.allFinite()) {
    throw ConvergenceError(
        "algebraic steady-state solve produced non-finite entries "
        "(degenerate or ill-conditioned generator)");
  }
  Matrix rho = Eigen::Map<Matrix>(x.data(), n, n);
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  const double res = residual_norm(rho, h, channels);
  if (res > abs_residual_tol) {
    throw ConvergenceError(
        "algebraic steady-state residual " + std::to_string(res) +
        " exceeds tolerance (degenerate null space or ill-conditioning); "
        "use the trajectory method");
  }
  SteadyStateResult out{
      DensityMatrix::validated(std::move(rho),
                               DensityTolerances{1e-9, 1e-8, -1e-7}),
      res, 0.0, nullity, "algebraic"};
  return out;
}

inline SteadyStateResult trajectory_steady_state(
    const Matrix& h, const std::vector<LindbladChannel>& channels,
    const SteadyStateOptions& opt, double abs_residual_tol,
    const DensityMatrix& rho0) {
  DensityMatrix rho = rho0;
  double t = 0.0;
  double res = residual_norm(rho.matrix(), h, channels);
  while (res > abs_residual_tol) {
    if (t >= opt.max_time) {
      std::ostringstream msg;
      msg << "steady state not reached by t = " << t << " (residual " << res
          << ", tolerance " << abs_residual_tol << ")";
      throw ConvergenceError(msg.str());
    }
    Trajectory step = evolve(rho, h, channels, {0.0, opt.block_time},
                             opt.integrator);
    rho = step.states.back();
    t += opt.block_time;
    res = residual_norm(rho.matrix(), h, channels);
  }
  SteadyStateResult out{std::move(rho), res, t, -1, "trajectory"};
  return out;
}

}  // namespace detail

// Solve L[rho] = 0. The trajectory path integrates from rho0 until the
// residual passes below residual_tol * ||L||; it is the default whenever the
// generator conserves parity (degenerate fixed points, limit depends on the
// initial state). The algebraic path solves the trace-constrained linear
// system and refuses degenerate null spaces rather than returning an
// arbitrary element.
inline SteadyStateResult steady_state(
    const Matrix& h, const std::vector<LindbladChannel>& channels,
    const SteadyStateOptions& opt = {},
    const std::optional<DensityMatrix>& rho0 = std::nullopt) {
  bool any_rate = false;
  for (const auto& c : channels) {
    any_rate |= c.rate > 0.0;
  }
  if (!any_rate) {
    throw InvalidParameterError(
        "steady state requires at least one dissipative channel");
  }
  const double l_norm = liouvillian_norm_estimate(h, channels);
  const double abs_tol = opt.residual_tol * std::max(l_norm, 1.0);

  switch (opt.method) {
    case SteadyStateMethod::Algebraic:
      return detail::algebraic_steady_state(h, channels, opt, abs_tol);
    case SteadyStateMethod::Trajectory:
      if (!rho0) {
        throw InvalidParameterError(
            "trajectory steady-state method requires an initial state");
      }
      return detail::trajectory_steady_state(h, channels, opt, abs_tol, *rho0);
    case SteadyStateMethod::Auto:
      break;
  }
  if (parity_sectored(h, channels)) {
    if (!rho0) {
      throw ConvergenceError(
          "generator conserves parity (degenerate fixed points); provide an "
          "initial state for the trajectory method");
    }
    return detail::trajectory_steady_state(h, channels, opt, abs_tol, *rho0);
  }
  if (static_cast<int>(h.rows()) <= opt.algebraic_dim_limit) {
    try {
      return detail::algebraic_steady_state(h, channels, opt, abs_tol);
    } catch (const ConvergenceError&) {
      if (!rho0) {
        throw;
      }
    }
  }
  if (!rho0) {
    throw InvalidParameterError(
        "no viable steady-state method without an initial state");
  }
  return detail::trajectory_steady_state(h, channels, opt, abs_tol, *rho0);
}

}  // namespace catsim
