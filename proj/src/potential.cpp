#include "cfluid/potential.hpp"

#include <cmath>

namespace cfluid {

void Potential::check_floor(const Field1D& R) const {
  if (singular_at_low_density() && R.min() < kDensityFloor)
    throw Error("density floor violated");
}

Field1D Potential::energy_density(const Field1D& R) const {
  switch (kind) {
    case PotentialKind::Free:
      return Field1D::zeros(R.grid());
    case PotentialKind::PowerLaw: {
      check_floor(R);
      std::vector<double> v(R.size());
      for (std::size_t i = 0; i < R.size(); ++i)
        v[i] = c * std::pow(R[i], omega);
      return Field1D(R.grid(), std::move(v));
    }
    case PotentialKind::QuantumEffective: {
      check_floor(R);
      Field1D Rx = derivative(R, 1);
      std::vector<double> v(R.size());
      for (std::size_t i = 0; i < R.size(); ++i)
        v[i] = c * R[i] * R[i] * R[i] + 0.125 * Rx[i] * Rx[i] / R[i];
      return Field1D(R.grid(), std::move(v));
    }
  }
  throw Error("unknown potential kind");
}

Field1D Potential::dV_dR(const Field1D& R) const {
  switch (kind) {
    case PotentialKind::Free:
      return Field1D::zeros(R.grid());
    case PotentialKind::PowerLaw: {
      check_floor(R);
      std::vector<double> v(R.size());
      for (std::size_t i = 0; i < R.size(); ++i)
        v[i] = c * omega * std::pow(R[i], omega - 1.0);
      return Field1D(R.grid(), std::move(v));
    }
    case PotentialKind::QuantumEffective: {
      check_floor(R);
      // delta/deltaR of (1/8) R_x^2 / R = (1/8)(R_x/R)^2 - (1/4) R_xx / R.
      Field1D Rx = derivative(R, 1);
      Field1D Rxx = derivative(R, 2);
      std::vector<double> v(R.size());
      for (std::size_t i = 0; i < R.size(); ++i) {
        const double g = Rx[i] / R[i];
        v[i] = 3.0 * c * R[i] * R[i] + 0.125 * g * g - 0.25 * Rxx[i] / R[i];
      }
      return Field1D(R.grid(), std::move(v));
    }
  }
  throw Error("unknown potential kind");
}

}  // namespace cfluid
