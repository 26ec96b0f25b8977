#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "cfluid/fields.hpp"
#include "cfluid/potential.hpp"

namespace cfluid {

/// The ten symmetry generators.  H,P,B,N span the extended Galilei algebra;
/// Delta,K the non-relativistic conformal extension; D,G the antiboost/time
/// dilatation pair and C1,C2 the remaining relativistic conformal charges.
enum class Generator { H, P, B, N, Delta, K, D, G, C1, C2 };

constexpr std::array<Generator, 10> kGenerators = {
    Generator::H,     Generator::P, Generator::B, Generator::N,
    Generator::Delta, Generator::K, Generator::D, Generator::G,
    Generator::C1,    Generator::C2};

std::string_view generator_name(Generator g);
Generator generator_from_name(std::string_view name);

/// Charge density as a field (the integrand whose quadrature is the charge).
Field1D charge_density(Generator g, const FieldPair& state,
                       const Potential& pot);

/// Value of the conserved functional on a state; explicit time weights come
/// from state.t.
double charge(Generator g, const FieldPair& state, const Potential& pot);

/// Functional derivatives (deltaF/deltaR, deltaF/deltaTheta).
struct FunctionalGradient {
  Field1D dR;
  Field1D dTheta;
};

FunctionalGradient functional_gradient(Generator g, const FieldPair& state,
                                       const Potential& pot);

struct DriftRow {
  Generator g;
  double initial = 0.0;
  double final_value = 0.0;
  double max_drift = 0.0;  // max_t |Q(t)-Q(0)| / max(|Q(0)|, 1e-3)
};

/// Evaluates all ten charges on every stored slice of a trajectory.
std::vector<DriftRow> conservation_report(const FieldMap2D& traj,
                                          const Potential& pot);

}  // namespace cfluid
