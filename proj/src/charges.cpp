#include "cfluid/charges.hpp"

#include <algorithm>
#include <cmath>

namespace cfluid {

std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::H: return "H";
    case Generator::P: return "P";
    case Generator::B: return "B";
    case Generator::N: return "N";
    case Generator::Delta: return "Delta";
    case Generator::K: return "K";
    case Generator::D: return "D";
    case Generator::G: return "G";
    case Generator::C1: return "C1";
    case Generator::C2: return "C2";
  }
  throw Error("unknown generator");
}

Generator generator_from_name(std::string_view name) {
  for (Generator g : kGenerators)
    if (generator_name(g) == name) return g;
  throw Error("unknown generator name: " + std::string(name));
}

Field1D charge_density(Generator g, const FieldPair& state,
                       const Potential& pot) {
  const Grid1D& grid = state.R.grid();
  const Field1D& R = state.R;
  const Field1D& Th = state.Theta;
  const double t = state.t;

  Field1D theta_x = derivative(Th, 1);
  Field1D x = charge_coordinate(grid);
  Field1D H_density = 0.5 * (R * theta_x * theta_x) + pot.energy_density(R);
  Field1D P_density = R * theta_x;

  switch (g) {
    case Generator::H:
      return H_density;
    case Generator::P:
      return P_density;
    case Generator::B:
      return x * R - t * P_density;
    case Generator::N:
      return R;
    case Generator::Delta:
      return t * H_density - 0.5 * (x * P_density);
    case Generator::K:
      return (t * t) * H_density - t * (x * P_density) +
             0.5 * (x * x * R);
    case Generator::D:
      return t * H_density - R * Th;
    case Generator::G:
      return x * H_density - Th * P_density;
    case Generator::C1:
      return 0.5 * (x * x * H_density) - x * Th * P_density + Th * Th * R;
    case Generator::C2:
      return x * (t * H_density) - (0.5 * (x * x) + t * Th) * P_density +
             x * Th * R;
  }
  throw Error("unknown generator");
}

double charge(Generator g, const FieldPair& state, const Potential& pot) {
  return integrate(charge_density(g, state, pot));
}

FunctionalGradient functional_gradient(Generator g, const FieldPair& state,
                                       const Potential& pot) {
  const Grid1D& grid = state.R.grid();
  const Field1D& R = state.R;
  const Field1D& Th = state.Theta;
  const double t = state.t;

  Field1D theta_x = derivative(Th, 1);
  Field1D R_x = derivative(R, 1);
  Field1D x = charge_coordinate(grid);
  Field1D dVdR = pot.dV_dR(R);
  Field1D momentum_div = derivative(R * theta_x, 1);  // (R Theta_x)_x
  Field1D half_grad_sq = 0.5 * (theta_x * theta_x);

  switch (g) {
    case Generator::H:
      return {half_grad_sq + dVdR, -1.0 * momentum_div};
    case Generator::P:
      return {theta_x, -1.0 * R_x};
    case Generator::B:
      return {x - t * theta_x, t * R_x};
    case Generator::N:
      return {Field1D::constant(grid, 1.0), Field1D::zeros(grid)};
    case Generator::Delta:
      return {t * (half_grad_sq + dVdR) - 0.5 * (x * theta_x),
              -t * momentum_div + derivative(0.5 * (x * R), 1)};
    case Generator::K:
      return {(t * t) * (half_grad_sq + dVdR) - t * (x * theta_x) +
                  0.5 * (x * x),
              -(t * t) * momentum_div + t * derivative(x * R, 1)};
    case Generator::D:
      return {t * (half_grad_sq + dVdR) - Th, -t * momentum_div - R};
    case Generator::G:
      return {x * (half_grad_sq + dVdR) - Th * theta_x,
              -1.0 * (R * theta_x) - derivative(x * R * theta_x - Th * R, 1)};
    case Generator::C1:
      return {0.5 * (x * x) * (half_grad_sq + dVdR) - x * Th * theta_x +
                  Th * Th,
              -1.0 * (x * R * theta_x) + 2.0 * (Th * R) -
                  derivative(0.5 * (x * x) * (R * theta_x) - x * Th * R, 1)};
    case Generator::C2:
      return {x * t * (half_grad_sq + dVdR) -
                  (0.5 * (x * x) + t * Th) * theta_x + x * Th,
              -t * (R * theta_x) + x * R -
                  derivative(x * t * (R * theta_x) -
                                 (0.5 * (x * x) + t * Th) * R,
                             1)};
  }
  throw Error("unknown generator");
}

std::vector<DriftRow> conservation_report(const FieldMap2D& traj,
                                          const Potential& pot) {
  std::vector<DriftRow> rows;
  rows.reserve(kGenerators.size());
  for (Generator g : kGenerators) {
    DriftRow row;
    row.g = g;
    row.initial = charge(g, traj.slice(0), pot);
    const double scale = std::max(std::abs(row.initial), 1e-3);
    for (std::size_t i = 0; i < traj.slice_count(); ++i) {
      const double q = charge(g, traj.slice(i), pot);
      row.max_drift = std::max(row.max_drift, std::abs(q - row.initial) / scale);
      if (i + 1 == traj.slice_count()) row.final_value = q;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cfluid
