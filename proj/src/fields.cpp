#include "cfluid/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cfluid {

FieldPair::FieldPair(Field1D density, Field1D phase, double time)
    : R(std::move(density)), Theta(std::move(phase)), t(time) {
  if (!(R.grid() == Theta.grid()))
    throw Error("R and Theta must share one grid");
  // Spectral evolution of compactly supported densities undershoots zero at
  // truncation level; genuine negativity is rejected.
  if (R.min() < -1e-6 * std::max(1.0, R.max()))
    throw Error("density must be non-negative");
}

FieldMap2D::FieldMap2D(Grid1D grid, std::vector<double> times,
                       std::vector<std::vector<double>> R_samples,
                       std::vector<std::vector<double>> Theta_samples)
    : grid_(grid),
      times_(std::move(times)),
      R_(std::move(R_samples)),
      Theta_(std::move(Theta_samples)) {
  if (times_.size() < 4) throw Error("field map needs at least 4 time slices");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw Error("times must be strictly increasing");
  if (R_.size() != times_.size() || Theta_.size() != times_.size())
    throw Error("sample blocks must match the time axis");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    // Each slice must satisfy the FieldPair invariants.
    FieldPair check(Field1D(grid_, R_[i]), Field1D(grid_, Theta_[i]), times_[i]);
    (void)check;
  }
}

FieldPair FieldMap2D::slice(std::size_t i) const {
  return FieldPair(Field1D(grid_, R_[i]), Field1D(grid_, Theta_[i]), times_[i]);
}

namespace {

// Cubic Lagrange weights on 4 consecutive nodes; u is the offset from the
// second node in units of spacing, u in [0,1).  Exact {0,1,0,0} at u == 0.
std::array<double, 4> lagrange_weights(double u, int deriv) {
  if (deriv == 0) {
    return {-u * (u - 1.0) * (u - 2.0) / 6.0,
            (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
            -(u + 1.0) * u * (u - 2.0) / 2.0,
            (u + 1.0) * u * (u - 1.0) / 6.0};
  }
  return {-(3.0 * u * u - 6.0 * u + 2.0) / 6.0,
          (3.0 * u * u - 4.0 * u - 1.0) / 2.0,
          -(3.0 * u * u - 2.0 * u - 2.0) / 2.0,
          (3.0 * u * u - 1.0) / 6.0};
}

// Generic Lagrange weights for 4 arbitrary nodes (time axis).
std::array<double, 4> lagrange_weights_nodes(const std::array<double, 4>& tn,
                                             double t, int deriv) {
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) {
    if (deriv == 0) {
      double p = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) p *= (t - tn[j]) / (tn[i] - tn[j]);
      w[i] = p;
    } else {
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (k == i) continue;
        double p = 1.0 / (tn[i] - tn[k]);
        for (int j = 0; j < 4; ++j)
          if (j != i && j != k) p *= (t - tn[j]) / (tn[i] - tn[j]);
        sum += p;
      }
      w[i] = sum;
    }
  }
  return w;
}

}  // namespace

double FieldMap2D::interp(const std::vector<std::vector<double>>& data,
                          double x, double t, int dx_order,
                          int dt_order) const {
  if (t < times_.front() || t > times_.back()) throw Error("time out of range");

  // Periodic wrap of x into [-L/2, L/2).
  const double L = grid_.length;
  double xw = std::fmod(x + 0.5 * L, L);
  if (xw < 0.0) xw += L;
  const double h = grid_.spacing();
  double jr = std::floor(xw / h);
  std::size_t j = static_cast<std::size_t>(jr);
  if (j >= grid_.n) j = grid_.n - 1;
  double u = xw / h - jr;
  auto wx = lagrange_weights(u, dx_order);

  // Time window of 4 consecutive slices around t.
  std::size_t m = times_.size();
  std::size_t k = static_cast<std::size_t>(
      std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
  std::size_t k0 = (k >= 2) ? k - 2 : 0;
  if (k0 + 4 > m) k0 = m - 4;
  std::array<double, 4> tn = {times_[k0], times_[k0 + 1], times_[k0 + 2],
                              times_[k0 + 3]};
  auto wt = lagrange_weights_nodes(tn, t, dt_order);

  double value = 0.0;
  for (int a = 0; a < 4; ++a) {
    const std::vector<double>& slice = data[k0 + a];
    double sx = 0.0;
    for (int b = -1; b <= 2; ++b) {
      // b ranges over {-1,0,1,2} relative to node j, wrapped periodically.
      std::size_t idx = (j + grid_.n + static_cast<std::size_t>(b + 2) - 2) % grid_.n;
      sx += wx[b + 1] * slice[idx];
    }
    value += wt[a] * sx;
  }
  if (dx_order == 1) value /= h;
  return value;
}

std::pair<double, double> FieldMap2D::sample(double x, double t) const {
  return {interp(R_, x, t, 0, 0), interp(Theta_, x, t, 0, 0)};
}

double FieldMap2D::sample_theta_dx(double x, double t) const {
  return interp(Theta_, x, t, 1, 0);
}

double FieldMap2D::sample_theta_dt(double x, double t) const {
  return interp(Theta_, x, t, 0, 1);
}

FieldMap2D sample_map(const Grid1D& grid, const std::vector<double>& times,
                      const std::function<double(double, double)>& R,
                      const std::function<double(double, double)>& Theta) {
  std::vector<std::vector<double>> rs, ts;
  rs.reserve(times.size());
  ts.reserve(times.size());
  for (double t : times) {
    std::vector<double> r(grid.n), th(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      r[i] = R(grid.x(i), t);
      th[i] = Theta(grid.x(i), t);
    }
    rs.push_back(std::move(r));
    ts.push_back(std::move(th));
  }
  return FieldMap2D(grid, times, std::move(rs), std::move(ts));
}

}  // namespace cfluid
