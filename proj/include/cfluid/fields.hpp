#pragma once

#include <utility>
#include <vector>

#include "cfluid/grid.hpp"

namespace cfluid {

/// Density floor below which the singular membrane potential dV/dR = -c/R^2
/// is considered unusable.
inline constexpr double kDensityFloor = 1e-8;

/// Fluid state at one time: density R >= 0 and phase Theta on a shared grid.
struct FieldPair {
  Field1D R;
  Field1D Theta;
  double t = 0.0;

  FieldPair() = default;
  FieldPair(Field1D density, Field1D phase, double time);
};

/// Space-time block of (R, Theta) samples with smooth interpolation, cubic in
/// both directions (periodic in x).  Nodal queries reproduce stored values
/// bit-for-bit.
class FieldMap2D {
 public:
  FieldMap2D(Grid1D grid, std::vector<double> times,
             std::vector<std::vector<double>> R_samples,
             std::vector<std::vector<double>> Theta_samples);

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t slice_count() const { return times_.size(); }
  FieldPair slice(std::size_t i) const;

  /// Interpolated (R, Theta) at an arbitrary point; x wraps periodically,
  /// t must lie inside [times.front(), times.back()].
  std::pair<double, double> sample(double x, double t) const;

  /// Interpolated first derivatives of Theta (same stencils, differentiated).
  double sample_theta_dx(double x, double t) const;
  double sample_theta_dt(double x, double t) const;

 private:
  double interp(const std::vector<std::vector<double>>& data, double x,
                double t, int dx_order, int dt_order) const;

  Grid1D grid_;
  std::vector<double> times_;
  std::vector<std::vector<double>> R_;
  std::vector<std::vector<double>> Theta_;
};

/// Builds a map by sampling analytic fields at the given times.
FieldMap2D sample_map(const Grid1D& grid, const std::vector<double>& times,
                      const std::function<double(double, double)>& R,
                      const std::function<double(double, double)>& Theta);

}  // namespace cfluid
