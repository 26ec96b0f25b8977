#pragma once

#include <vector>

#include "cfluid/charges.hpp"
#include "cfluid/fields.hpp"
#include "cfluid/potential.hpp"

namespace cfluid {
namespace emtensor {

/// Energy-momentum tensor on ordinary space-time (lower indices only; the
/// base carries no metric).  dTheta/dt is reconstructed from the equation of
/// motion so a single slice suffices.
struct TensorQ {
  Field1D tt, xt, tx, xx;
};

/// Pointwise component values; the field-level tensor_Q evaluates these.
struct TensorQPoint {
  double tt, xt, tx, xx;
};
TensorQPoint tensor_q_components(double R, double theta_x, double theta_t,
                                 double V, double dVdR);

TensorQ tensor_Q(const FieldPair& state, const Potential& pot);

/// Pointwise trace condition T_xx - 2 T_tt; vanishes identically iff the
/// potential is a cubic power law.
Field1D trace_check(const FieldPair& state, const Potential& pot);

struct ContinuityResidual {
  std::vector<double> times;          // interior slice times
  std::vector<Field1D> beta_t;        // d_t T_tt + d_x T_xt
  std::vector<Field1D> beta_x;        // d_t T_tx + d_x T_xx
  double max_abs = 0.0;
};

/// Continuity residual along a trajectory: spectral x-derivatives and
/// 4th-order centered time differences of the tensor components.
ContinuityResidual continuity_residual(const FieldMap2D& traj,
                                       const Potential& pot);

/// Extended-space energy-momentum tensor on the equivariant lift of a slice
/// (all components s-independent).  Index order (x, t, s).
struct TensorM {
  Field1D xx, xt, xs, tt, ts, ss;
};
TensorM tensor_M(const FieldPair& state, const Potential& pot);

/// Trace with the inverse flat metric: g^xx T_xx + 2 g^ts T_ts.
Field1D tensor_M_trace(const FieldPair& state, const Potential& pot);

/// Noether current of a generator via k^mu = T^mu_nu X^nu, restricted to the
/// section s = -Theta and projected: J^alpha = j^alpha / d_s theta.
struct CurrentResult {
  Field1D k_x, k_t, k_s;  // = j on the section (s-independent lift)
  Field1D J_t, J_x;
  double Q_value = 0.0;
};
CurrentResult current(Generator g, const FieldPair& state,
                      const Potential& pot);

/// Relation between the extended-space and base tensors, component by
/// component; the single sign reconciling all four lines is reported.
struct EmtensorsCheck {
  int sigma = 0;             // +1: relations as printed, -1: globally flipped
  double max_residual = 0.0;
};
EmtensorsCheck emtensors_check(const FieldPair& state, const Potential& pot);

/// Energy-momentum tensor of the linear Schroedinger equation in flat
/// extended space (equivariant lift, curvature terms absent).  The
/// include_dd_rho switch drops the -1/8 grad grad rho block for ablation
/// studies.
TensorM tensor_schrodinger(const FieldPair& state, bool include_dd_rho = true);

/// Continuity residual of the Schroedinger tensor along a hydrodynamic
/// trajectory sampled at uniform spacing dt.
struct SchrodingerContinuity {
  double max_abs = 0.0;
  std::array<double, 3> per_direction{};  // nu = x, t, s
};
SchrodingerContinuity schrodinger_continuity(
    const std::vector<FieldPair>& slices, double dt, bool include_dd_rho = true,
    double interior_half_width = -1.0);  // < 0: whole domain

}  // namespace emtensor
}  // namespace cfluid
