#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cfluid/errors.hpp"

namespace cfluid {

/// Periodic uniform grid on x in [-L/2, L/2), spacing h = L/n.
/// n must be a power of two (>= 16) so transforms stay fast.
struct Grid1D {
  std::size_t n = 0;
  double length = 0.0;

  Grid1D() = default;
  Grid1D(std::size_t n_points, double domain_length);

  double spacing() const { return length / static_cast<double>(n); }
  double x(std::size_t i) const {
    return -0.5 * length + spacing() * static_cast<double>(i);
  }
  bool operator==(const Grid1D&) const = default;
};

/// Real scalar field sampled on a Grid1D.  Values are checked to be finite
/// on construction and after the arithmetic helpers below.
class Field1D {
 public:
  Field1D() = default;
  Field1D(Grid1D grid, std::vector<double> values);

  static Field1D zeros(const Grid1D& grid);
  static Field1D constant(const Grid1D& grid, double value);
  static Field1D from_function(const Grid1D& grid,
                               const std::function<double(double)>& f);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double min() const;
  double max() const;
  double max_abs() const;

  void check_finite(const char* context = "field") const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

Field1D operator+(const Field1D& a, const Field1D& b);
Field1D operator-(const Field1D& a, const Field1D& b);
Field1D operator*(const Field1D& a, const Field1D& b);
Field1D operator*(double a, const Field1D& b);
Field1D operator*(const Field1D& a, double b);
Field1D operator-(const Field1D& a);

/// Field of grid coordinates x_i.
Field1D coordinate_field(const Grid1D& grid);

/// C-infinity cutoff: exactly 1 for |x| <= flat, exactly 0 for |x| >= edge.
double smooth_window(double x, double flat, double edge);

/// Coordinate weight used in the x-weighted charge densities: equal to x on
/// the bulk |x| <= 0.7 L/2 and tapered smoothly to zero at the periodic seam.
/// Test data live well inside the flat region, where the weight is exact;
/// the taper removes the seam discontinuity of the bare coordinate.
Field1D charge_coordinate(const Grid1D& grid);

/// Spectral (Fourier) derivative of order 1 or 2; exact for band-limited input.
Field1D derivative(const Field1D& f, int order);

/// Periodic quadrature h * sum(values); spectrally accurate for smooth fields.
double integrate(const Field1D& f);

/// 2/3-rule spectral mask used to de-alias quadratic products.
Field1D dealias(const Field1D& f);

/// Fraction of spectral energy above the 2/3 cut (mean mode excluded).
double spectral_tail_fraction(const Field1D& f);

}  // namespace cfluid
