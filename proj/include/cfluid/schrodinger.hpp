#pragma once

#include <complex>
#include <vector>

#include "cfluid/fields.hpp"

namespace cfluid {
namespace nls {

/// Complex wave function on the periodic grid at one time.
struct WaveField {
  Grid1D grid;
  std::vector<std::complex<double>> psi;
  double t = 0.0;

  WaveField(Grid1D g, std::vector<std::complex<double>> values, double time);
  double norm() const;  // integral of |psi|^2
};

struct WaveTrajectory {
  Grid1D grid;
  std::vector<double> times;
  std::vector<std::vector<std::complex<double>>> psi;

  WaveField slice(std::size_t i) const {
    return WaveField(grid, psi[i], times[i]);
  }
};

struct NlsOptions {
  double dt = 1e-4;
  double t_final = 0.5;
  std::size_t stride = 1;
  double quintic_c = 0.0;  // Vbar = c rho^3, i.e. quintic in psi
};

/// Strang split-step Fourier integration of
/// i d_t psi = -1/2 d_xx psi - dVbar/dpsi*; norm-preserving per step.
WaveTrajectory evolve_nls(const WaveField& initial, const NlsOptions& opts);

/// Madelung transcription R = |psi|^2, Theta = unwrapped phase (anchored at
/// the left domain edge).  Requires |psi| above the amplitude floor.
FieldPair hydro_decompose(const WaveField& psi);

/// Residuals of the reduced system (continuity and quantum Hamilton-Jacobi)
/// on a hydrodynamic trajectory sampled at uniform dt.
struct SchrodDecResiduals {
  double continuity = 0.0;
  double phase = 0.0;
};
SchrodDecResiduals effective_potential_check(const std::vector<FieldPair>& slices,
                                             double dt);

/// Jevicki-ansatz checks on one state:
///  (a) theta = sqrt(R) sin(Theta + s) vanishes on the section (exact);
///  (b) rho d_s theta on the section equals R (exact);
///  (c) the s-average of the scalar-field Lagrange density over one vertical
///      period equals the reduced integrand
///      R theta_t + R theta_x^2 / 2 + R_x^2 / (8R), via 64-point quadrature.
struct JevickiReport {
  double check_a = 0.0;  // max |theta on section|
  double check_b = 0.0;  // max |rho d_s theta - R|
  double check_c = 0.0;  // max |s-average - reduced integrand|
};
JevickiReport jevicki_check(const FieldPair& state, const Field1D& theta_t);

}  // namespace nls
}  // namespace cfluid
