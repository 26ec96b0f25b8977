#pragma once

#include <utility>

#include "cfluid/fields.hpp"
#include "cfluid/potential.hpp"

namespace cfluid {

/// Right-hand side of the equations of motion:
///   dR/dt     = -d/dx (R dTheta/dx)
///   dTheta/dt = -1/2 (dTheta/dx)^2 - dV/dR
/// Quadratic products are de-aliased with the 2/3 rule.
std::pair<Field1D, Field1D> rhs(const FieldPair& state, const Potential& pot);

struct CausticDiagnostic {
  double max_grad = 0.0;      // max |dTheta/dx|
  double max_curv = 0.0;      // max |d2Theta/dx2|
  double tail_fraction = 0.0; // spectral tail energy fraction of Theta
  bool tripped = false;
};

/// Gradient blow-up monitor for the Hamilton-Jacobi phase equation.  Trips
/// when max|Theta_xx| * dt exceeds curv_threshold or the spectral tail of
/// Theta exceeds tail_threshold of the total.
CausticDiagnostic caustic_monitor(const FieldPair& state, double dt = 1e-3,
                                  double curv_threshold = 0.5,
                                  double tail_threshold = 1e-6);

struct EvolveOptions {
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t stride = 1;  // keep every stride-th step (plus first and last)
  bool monitor = true;
};

/// Classical RK4 integration; returns the stored slices as a FieldMap2D.
/// Aborts (SimulationAbort) on caustic trip or density-floor violation.
FieldMap2D evolve(const FieldPair& initial, const Potential& pot,
                  const EvolveOptions& opts);

/// The asymmetric compact test datum used across the verification suite:
/// R = 0.5 exp(-x^2/2) + pedestal, Theta = 0.3 exp(-(x-1)^2/2)
/// on L = 40, n = 512.
FieldPair standard_datum(std::size_t n = 512, double L = 40.0,
                         double pedestal = 1e-6);

/// Strictly positive variant (unit background) used for membrane-potential
/// runs, where dV/dR = -c/R^2 makes a near-zero pedestal unusable.
FieldPair unit_background_datum(std::size_t n = 512, double L = 40.0);

}  // namespace cfluid
