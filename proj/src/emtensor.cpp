#include "cfluid/emtensor.hpp"

#include <cmath>

#include "cfluid/liealg.hpp"

namespace cfluid {
namespace emtensor {

namespace {

// dTheta/dt from the equation of motion (valid on solutions).
Field1D theta_t_from_eom(const FieldPair& state, const Potential& pot) {
  Field1D theta_x = derivative(state.Theta, 1);
  return -0.5 * (theta_x * theta_x) - pot.dV_dR(state.R);
}

}  // namespace

TensorQPoint tensor_q_components(double R, double theta_x, double theta_t,
                                 double V, double dVdR) {
  TensorQPoint p;
  p.tt = 0.5 * R * theta_x * theta_x + V;
  p.xt = -R * theta_x * theta_t;
  p.tx = R * theta_x;
  p.xx = R * theta_x * theta_x + R * dVdR - V;
  return p;
}

TensorQ tensor_Q(const FieldPair& state, const Potential& pot) {
  const Grid1D& grid = state.R.grid();
  Field1D theta_x = derivative(state.Theta, 1);
  Field1D theta_t = theta_t_from_eom(state, pot);
  Field1D V = pot.energy_density(state.R);
  Field1D dV = pot.dV_dR(state.R);
  std::vector<double> tt(grid.n), xt(grid.n), tx(grid.n), xx(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto p = tensor_q_components(state.R[i], theta_x[i], theta_t[i],
                                       V[i], dV[i]);
    tt[i] = p.tt;
    xt[i] = p.xt;
    tx[i] = p.tx;
    xx[i] = p.xx;
  }
  return TensorQ{Field1D(grid, tt), Field1D(grid, xt), Field1D(grid, tx),
                 Field1D(grid, xx)};
}

Field1D trace_check(const FieldPair& state, const Potential& pot) {
  TensorQ T = tensor_Q(state, pot);
  return T.xx - 2.0 * T.tt;
}

ContinuityResidual continuity_residual(const FieldMap2D& traj,
                                       const Potential& pot) {
  const std::size_t m = traj.slice_count();
  if (m < 5) throw Error("insufficient trajectory resolution");
  const auto& times = traj.times();
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::max(1.0, dt))
      throw Error("insufficient trajectory resolution");

  std::vector<TensorQ> tensors;
  tensors.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    tensors.push_back(tensor_Q(traj.slice(i), pot));

  ContinuityResidual out;
  auto ddt = [&](auto pick, std::size_t i) {
    return (1.0 / (12.0 * dt)) *
           (-1.0 * pick(i + 2) + 8.0 * pick(i + 1) - 8.0 * pick(i - 1) +
            pick(i - 2));
  };
  for (std::size_t i = 2; i + 2 < m; ++i) {
    Field1D dt_tt = ddt([&](std::size_t k) { return tensors[k].tt; }, i);
    Field1D dt_tx = ddt([&](std::size_t k) { return tensors[k].tx; }, i);
    Field1D bt = dt_tt + derivative(tensors[i].xt, 1);
    Field1D bx = dt_tx + derivative(tensors[i].xx, 1);
    out.max_abs = std::max({out.max_abs, bt.max_abs(), bx.max_abs()});
    out.times.push_back(times[i]);
    out.beta_t.push_back(std::move(bt));
    out.beta_x.push_back(std::move(bx));
  }
  return out;
}

TensorM tensor_M(const FieldPair& state, const Potential& pot) {
  const Grid1D& grid = state.R.grid();
  Field1D theta_x = derivative(state.Theta, 1);
  Field1D theta_t = theta_t_from_eom(state, pot);
  Field1D V = pot.energy_density(state.R);
  std::vector<double> xx(grid.n), xt(grid.n), xs(grid.n), tt(grid.n),
      ts(grid.n), ss(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double R = state.R[i], thx = theta_x[i], tht = theta_t[i];
    const double grad_sq = thx * thx + 2.0 * tht;  // theta_s = 1
    xx[i] = -R * thx * thx + 0.5 * R * grad_sq + V[i];
    xt[i] = -R * thx * tht;
    xs[i] = -R * thx;
    tt[i] = -R * tht * tht;
    ts[i] = -R * tht + 0.5 * R * grad_sq + V[i];
    ss[i] = -R;
  }
  return TensorM{Field1D(grid, xx), Field1D(grid, xt), Field1D(grid, xs),
                 Field1D(grid, tt), Field1D(grid, ts), Field1D(grid, ss)};
}

Field1D tensor_M_trace(const FieldPair& state, const Potential& pot) {
  TensorM T = tensor_M(state, pot);
  return T.xx + 2.0 * T.ts;
}

CurrentResult current(Generator g, const FieldPair& state,
                      const Potential& pot) {
  const Grid1D& grid = state.R.grid();
  TensorM T = tensor_M(state, pot);
  const auto& X = liealg::generator_field(g);

  std::vector<double> kx(grid.n), kt(grid.n), ks(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double s = -state.Theta[i];  // restriction to the section
    const auto v = X.evaluate(x, state.t, s);
    // Raise with g^xx = 1, g^ts = g^st = 1: T^x_nu = T_x nu,
    // T^t_nu = T_s nu, T^s_nu = T_t nu.
    kx[i] = T.xx[i] * v[0] + T.xt[i] * v[1] + T.xs[i] * v[2];
    kt[i] = T.xs[i] * v[0] + T.ts[i] * v[1] + T.ss[i] * v[2];
    ks[i] = T.xt[i] * v[0] + T.tt[i] * v[1] + T.ts[i] * v[2];
  }
  CurrentResult out{Field1D(grid, kx), Field1D(grid, kt), Field1D(grid, ks),
                    Field1D(grid, kt), Field1D(grid, kx), 0.0};
  // Equivariant lift: d_s theta = 1, so J^alpha = j^alpha.
  out.Q_value = integrate(out.J_t);
  return out;
}

EmtensorsCheck emtensors_check(const FieldPair& state, const Potential& pot) {
  TensorQ TQ = tensor_Q(state, pot);
  TensorM TM = tensor_M(state, pot);
  // Printed relations (d_s theta = 1):
  //   T_tt = -T^M_st,  T_tx = +T^M_sx,  T_xt = -T^M_xt,  T_xx = +T^M_xx.
  auto residual_for = [&](double sigma) {
    double worst = 0.0;
    const std::size_t n = state.R.grid().n;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(TQ.tt[i] - sigma * (-TM.ts[i])));
      worst = std::max(worst, std::abs(TQ.tx[i] - sigma * (TM.xs[i])));
      worst = std::max(worst, std::abs(TQ.xt[i] - sigma * (-TM.xt[i])));
      worst = std::max(worst, std::abs(TQ.xx[i] - sigma * (TM.xx[i])));
    }
    return worst;
  };
  const double plus = residual_for(1.0), minus = residual_for(-1.0);
  EmtensorsCheck out;
  out.sigma = (plus <= minus) ? 1 : -1;
  out.max_residual = std::min(plus, minus);
  return out;
}

namespace {

struct SchrodingerFields {
  Field1D theta_x, theta_t, rho_t, rho_x, rho_xx, rho_xt, rho_tt;
};

// All derivatives reconstructed from a single slice through the reduced
// Schroedinger system (continuity + quantum Hamilton-Jacobi).
SchrodingerFields schrodinger_derivatives(const FieldPair& state) {
  SchrodingerFields f;
  const Field1D& R = state.R;
  f.theta_x = derivative(state.Theta, 1);
  f.rho_x = derivative(R, 1);
  f.rho_xx = derivative(R, 2);
  const Grid1D& grid = R.grid();
  std::vector<double> tht(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double g = f.rho_x[i] / R[i];
    tht[i] = -0.5 * f.theta_x[i] * f.theta_x[i] - 0.125 * g * g +
             0.25 * f.rho_xx[i] / R[i];
  }
  f.theta_t = Field1D(grid, tht);
  f.rho_t = -1.0 * derivative(R * f.theta_x, 1);
  f.rho_xt = derivative(f.rho_t, 1);
  // d_t rho_t = -d_x(rho_t theta_x + R d_x theta_t).
  f.rho_tt = -1.0 * derivative(f.rho_t * f.theta_x + R * derivative(f.theta_t, 1), 1);
  return f;
}

}  // namespace

TensorM tensor_schrodinger(const FieldPair& state, bool include_dd_rho) {
  const Grid1D& grid = state.R.grid();
  const auto f = schrodinger_derivatives(state);
  const Field1D& R = state.R;
  std::vector<double> xx(grid.n), xt(grid.n), xs(grid.n), tt(grid.n),
      ts(grid.n), ss(grid.n);
  const double dd = include_dd_rho ? 1.0 : 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double r = R[i], thx = f.theta_x[i], tht = f.theta_t[i];
    const double grad_th = thx * thx + 2.0 * tht;       // theta_s = 1
    const double grad_rho = f.rho_x[i] * f.rho_x[i];    // rho_s = 0
    // rho theta_mu theta_nu - (1/2) g rho (grad theta)^2
    // + (1/4) rho g (grad theta)^2 + (1/4) rho_mu rho_nu / rho
    // - (1/16) g (grad rho)^2 / rho - (1/8) dd_mu_nu rho.
    auto comp = [&](double th_mu, double th_nu, double g_mu_nu, double rho_mu,
                    double rho_nu, double dd_rho) {
      return r * th_mu * th_nu - 0.5 * g_mu_nu * r * grad_th +
             0.25 * r * g_mu_nu * grad_th + 0.25 * rho_mu * rho_nu / r -
             (1.0 / 16.0) * g_mu_nu * grad_rho / r - 0.125 * dd * dd_rho;
    };
    xx[i] = comp(thx, thx, 1.0, f.rho_x[i], f.rho_x[i], f.rho_xx[i]);
    xt[i] = comp(thx, tht, 0.0, f.rho_x[i], f.rho_t[i], f.rho_xt[i]);
    xs[i] = comp(thx, 1.0, 0.0, f.rho_x[i], 0.0, 0.0);
    tt[i] = comp(tht, tht, 0.0, f.rho_t[i], f.rho_t[i], f.rho_tt[i]);
    ts[i] = comp(tht, 1.0, 1.0, f.rho_t[i], 0.0, 0.0);
    ss[i] = comp(1.0, 1.0, 0.0, 0.0, 0.0, 0.0);
  }
  return TensorM{Field1D(grid, xx), Field1D(grid, xt), Field1D(grid, xs),
                 Field1D(grid, tt), Field1D(grid, ts), Field1D(grid, ss)};
}

SchrodingerContinuity schrodinger_continuity(
    const std::vector<FieldPair>& slices, double dt, bool include_dd_rho,
    double interior_half_width) {
  if (slices.size() < 5) throw Error("insufficient trajectory resolution");
  std::vector<TensorM> tensors;
  tensors.reserve(slices.size());
  for (const auto& s : slices)
    tensors.push_back(tensor_schrodinger(s, include_dd_rho));

  SchrodingerContinuity out;
  auto ddt = [&](auto pick, std::size_t i) {
    return (1.0 / (12.0 * dt)) *
           (-1.0 * pick(i + 2) + 8.0 * pick(i + 1) - 8.0 * pick(i - 1) +
            pick(i - 2));
  };
  const Grid1D& grid = slices.front().R.grid();
  auto interior_max = [&](const Field1D& f) {
    if (interior_half_width < 0.0) return f.max_abs();
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j)
      if (std::abs(grid.x(j)) <= interior_half_width)
        worst = std::max(worst, std::abs(f[j]));
    return worst;
  };
  for (std::size_t i = 2; i + 2 < slices.size(); ++i) {
    // res_nu = d_x T_x nu + d_t T_s nu (s-derivatives vanish).
    Field1D rx = derivative(tensors[i].xx, 1) +
                 ddt([&](std::size_t k) { return tensors[k].xs; }, i);
    Field1D rt = derivative(tensors[i].xt, 1) +
                 ddt([&](std::size_t k) { return tensors[k].ts; }, i);
    Field1D rs = derivative(tensors[i].xs, 1) +
                 ddt([&](std::size_t k) { return tensors[k].ss; }, i);
    out.per_direction[0] = std::max(out.per_direction[0], interior_max(rx));
    out.per_direction[1] = std::max(out.per_direction[1], interior_max(rt));
    out.per_direction[2] = std::max(out.per_direction[2], interior_max(rs));
  }
  out.max_abs = std::max(
      {out.per_direction[0], out.per_direction[1], out.per_direction[2]});
  return out;
}

}  // namespace emtensor
}  // namespace cfluid
