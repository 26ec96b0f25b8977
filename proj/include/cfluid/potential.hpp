#pragma once

#include "cfluid/fields.hpp"

namespace cfluid {

enum class PotentialKind {
  Free,              // V = 0
  PowerLaw,          // V = c R^omega  (omega = -1: membrane, omega = 3: conformal)
  QuantumEffective,  // V = c_bar R^3 + (1/8) R_x^2 / R  (Madelung transcription)
};

/// Potential V(R) entering the phase equation through -dV/dR.
/// The quantum-effective variant depends on R_x, so the evaluators work on
/// whole fields rather than point values.
struct Potential {
  PotentialKind kind = PotentialKind::Free;
  double c = 0.0;
  double omega = 0.0;

  static Potential free() { return {PotentialKind::Free, 0.0, 0.0}; }
  static Potential power_law(double c, double omega) {
    if (c == 0.0) return free();
    return {PotentialKind::PowerLaw, c, omega};
  }
  static Potential membrane(double c) { return power_law(c, -1.0); }
  static Potential conformal(double c) { return power_law(c, 3.0); }
  static Potential quantum_effective(double c_bar = 0.0) {
    return {PotentialKind::QuantumEffective, c_bar, 3.0};
  }

  bool singular_at_low_density() const {
    return (kind == PotentialKind::PowerLaw && omega < 1.0) ||
           kind == PotentialKind::QuantumEffective;
  }

  /// Aborts when a singular potential is evaluated below the density floor.
  void check_floor(const Field1D& R) const;

  /// Potential density V(R) as a field.
  Field1D energy_density(const Field1D& R) const;

  /// Functional derivative delta V / delta R (pointwise c*omega*R^(omega-1)
  /// for power laws; includes the gradient terms for the quantum variant).
  Field1D dV_dR(const Field1D& R) const;
};

}  // namespace cfluid
