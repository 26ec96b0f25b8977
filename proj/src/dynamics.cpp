#include "cfluid/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cfluid {

namespace {

// Field-level right-hand side; used directly on RK4 stage states, which may
// graze zero density without violating the FieldPair invariant.
std::pair<Field1D, Field1D> rhs_fields(const Field1D& R, const Field1D& Theta,
                                       const Potential& pot) {
  pot.check_floor(R);
  Field1D theta_x = derivative(Theta, 1);
  Field1D dR = -1.0 * derivative(dealias(R * theta_x), 1);
  Field1D dTheta = -0.5 * dealias(theta_x * theta_x) - pot.dV_dR(R);
  return {std::move(dR), std::move(dTheta)};
}

}  // namespace

std::pair<Field1D, Field1D> rhs(const FieldPair& state, const Potential& pot) {
  state.R.check_finite("rhs R");
  state.Theta.check_finite("rhs Theta");
  return rhs_fields(state.R, state.Theta, pot);
}

CausticDiagnostic caustic_monitor(const FieldPair& state, double dt,
                                  double curv_threshold,
                                  double tail_threshold) {
  CausticDiagnostic diag;
  diag.max_grad = derivative(state.Theta, 1).max_abs();
  diag.max_curv = derivative(state.Theta, 2).max_abs();
  diag.tail_fraction = spectral_tail_fraction(state.Theta);
  diag.tripped = (diag.max_curv * dt > curv_threshold) ||
                 (diag.tail_fraction > tail_threshold);
  return diag;
}

namespace {

struct StateVec {
  std::vector<double> R, Theta;
};

StateVec axpy(const StateVec& a, double h, const StateVec& b) {
  StateVec out = a;
  for (std::size_t i = 0; i < out.R.size(); ++i) {
    out.R[i] += h * b.R[i];
    out.Theta[i] += h * b.Theta[i];
  }
  return out;
}

}  // namespace

FieldMap2D evolve(const FieldPair& initial, const Potential& pot,
                  const EvolveOptions& opts) {
  if (!(opts.dt > 0.0)) throw Error("dt must be positive");
  if (!(opts.t_final > initial.t)) throw Error("t_final must exceed initial time");

  const Grid1D grid = initial.R.grid();
  const double h = grid.spacing();

  {
    // CFL-like sanity check on the initial phase gradient.
    const double grad = derivative(initial.Theta, 1).max_abs();
    if (grad * opts.dt / h >= 1.0)
      throw Error("time step too large for initial phase gradient");
  }

  const auto nsteps_real = (opts.t_final - initial.t) / opts.dt;
  const std::size_t nsteps =
      static_cast<std::size_t>(std::llround(nsteps_real));
  if (nsteps == 0 || std::abs(nsteps_real - static_cast<double>(nsteps)) > 1e-9)
    throw Error("t_final must be an integer number of steps from t0");

  auto eval_rhs = [&](const StateVec& s, double) {
    auto [dR, dTheta] = rhs_fields(Field1D(grid, s.R), Field1D(grid, s.Theta), pot);
    return StateVec{dR.values(), dTheta.values()};
  };

  // Keep at least four slices so the result always supports interpolation.
  const std::size_t stride =
      std::max<std::size_t>(1, std::min(opts.stride, nsteps / 3 + 1));

  std::vector<double> times;
  std::vector<std::vector<double>> Rs, Thetas;
  auto store = [&](const StateVec& s, double t) {
    times.push_back(t);
    Rs.push_back(s.R);
    Thetas.push_back(s.Theta);
  };

  StateVec state{initial.R.values(), initial.Theta.values()};
  double t = initial.t;
  store(state, t);
  double t_last_good = t;

  for (std::size_t step = 0; step < nsteps; ++step) {
    if (opts.monitor) {
      FieldPair p(Field1D(grid, state.R), Field1D(grid, state.Theta), t);
      auto diag = caustic_monitor(p, opts.dt);
      if (diag.tripped)
        throw SimulationAbort("caustic monitor tripped", t_last_good);
    }
    try {
      StateVec k1 = eval_rhs(state, t);
      StateVec k2 = eval_rhs(axpy(state, 0.5 * opts.dt, k1), t + 0.5 * opts.dt);
      StateVec k3 = eval_rhs(axpy(state, 0.5 * opts.dt, k2), t + 0.5 * opts.dt);
      StateVec k4 = eval_rhs(axpy(state, opts.dt, k3), t + opts.dt);
      for (std::size_t i = 0; i < state.R.size(); ++i) {
        state.R[i] += opts.dt / 6.0 *
                      (k1.R[i] + 2.0 * k2.R[i] + 2.0 * k3.R[i] + k4.R[i]);
        state.Theta[i] +=
            opts.dt / 6.0 *
            (k1.Theta[i] + 2.0 * k2.Theta[i] + 2.0 * k3.Theta[i] + k4.Theta[i]);
      }
    } catch (const Error& e) {
      throw SimulationAbort(e.what(), t_last_good);
    }
    t = initial.t + opts.dt * static_cast<double>(step + 1);
    t_last_good = t;

    // Truncation-level undershoots of R are left alone (clamping would
    // inject mass); genuine negativity aborts.
    const double abort_limit =
        1e-6 * (*std::max_element(state.R.begin(), state.R.end()));
    for (double r : state.R)
      if (r < -abort_limit)
        throw SimulationAbort("density went negative", t_last_good);

    const bool last = (step + 1 == nsteps);
    if (last || ((step + 1) % stride == 0)) store(state, t);
  }

  return FieldMap2D(grid, std::move(times), std::move(Rs), std::move(Thetas));
}

FieldPair standard_datum(std::size_t n, double L, double pedestal) {
  Grid1D grid(n, L);
  // The pedestal keeps singular potentials above the density floor where the
  // dynamics happens; it rides on a compact window so R vanishes identically
  // near the periodic seam and the x-weighted charge quadrature stays exact.
  Field1D R = Field1D::from_function(grid, [&](double x) {
    return 0.5 * std::exp(-0.5 * x * x) +
           pedestal * smooth_window(x, 0.275 * L, 0.325 * L);
  });
  Field1D Theta = Field1D::from_function(grid, [](double x) {
    return 0.3 * std::exp(-0.5 * (x - 1.0) * (x - 1.0));
  });
  return FieldPair(std::move(R), std::move(Theta), 0.0);
}

FieldPair unit_background_datum(std::size_t n, double L) {
  Grid1D grid(n, L);
  Field1D R = Field1D::from_function(
      grid, [](double x) { return 1.0 + 0.5 * std::exp(-0.5 * x * x); });
  Field1D Theta = Field1D::from_function(grid, [](double x) {
    return 0.3 * std::exp(-0.5 * (x - 1.0) * (x - 1.0));
  });
  return FieldPair(std::move(R), std::move(Theta), 0.0);
}

}  // namespace cfluid
