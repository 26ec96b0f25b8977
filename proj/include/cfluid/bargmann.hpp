#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cfluid/charges.hpp"
#include "cfluid/conformal_matrix.hpp"
#include "cfluid/field_source.hpp"

namespace cfluid {
namespace bargmann {

/// Closed-form diffeomorphism (g,h,k) of extended space with its conformal
/// factor Omega and extended Jacobian Jtilde = sign * Omega^3 (sign resolved
/// from the exact Jacobian determinant at a reference point).
class ExtendedMap {
 public:
  ExtendedMap(Generator flow, double parameter);

  Generator flow() const { return flow_; }
  double parameter() const { return parameter_; }
  std::string name() const { return std::string(generator_name(flow_)); }

  conformal::Vec3 apply(const conformal::Vec3& y) const;
  double omega(const conformal::Vec3& y) const;
  double jtilde(const conformal::Vec3& y) const;
  /// d(g,h,k)/ds at y, central differences.
  conformal::Vec3 s_derivative(const conformal::Vec3& y) const;

 private:
  Generator flow_;
  double parameter_;
  double orientation_ = 1.0;
};

/// Equivariant lift rho(x,t,s) = R(x,t), theta(x,t,s) = Theta(x,t) + s.
struct LiftedFields {
  std::function<double(double, double, double)> rho;
  std::function<double(double, double, double)> theta;
};
LiftedFields equivariant_lift(const FieldSource& source);

/// Scalar solve of the generalized section condition
///   F(u) = Theta(g(x,t,-u), h(x,t,-u)) + k(x,t,-u) = 0
/// by safeguarded Newton with parameter continuation.
struct SectionPoint {
  double theta_star = 0.0;
  double x_star = 0.0;
  double t_star = 0.0;
  double residual = 0.0;
  int iterations = 0;
};
SectionPoint solve_section(const ExtendedMap& map, const FieldSource& source,
                           double x, double t);

/// Field-dependent projection of an extended-space map at one time slice.
struct SectionSolution {
  Field1D x_star, t_star, theta_star, R_star;
  double query_t = 0.0;
  double max_residual = 0.0;
  int max_iterations = 0;
};

/// Generic projector: section solve per grid point, then
/// R* = Omega * (Jtilde / J*) * R(x*,t*) with J* differenced numerically
/// (4th order in x over the grid, and in t across query times spaced dt_fd).
SectionSolution project_transform(const ExtendedMap& map,
                                  const FieldSource& source,
                                  const Grid1D& grid, double query_t,
                                  double dt_fd = 1e-3);

/// Printed closed-form transforms (Galilei family, Schroedinger family,
/// antiboost/time-dilation, C1/C2 with their explicit Jacobians).
SectionSolution named_transform(Generator flow, double parameter,
                                const FieldSource& source, const Grid1D& grid,
                                double query_t);

/// Field-dependent action of the t <-> s interchange isometry:
///   t* = -Theta*(x,t),  Theta(x, -Theta*) + t = 0,
///   R*(x,t) = R(x, -Theta*) dTheta/dt(x, -Theta*).
/// search window [tau_lo, tau_hi] must bracket the root; Theta(x,.) must be
/// strictly monotone on it.
SectionSolution interchange_transform(const FieldSource& source,
                                      const Grid1D& grid, double query_t,
                                      double tau_lo, double tau_hi);

/// Lazily transformed fields: evaluates the projection point-wise so that
/// transforms compose; phase derivatives by local finite differences.
std::shared_ptr<FieldSource> transformed_source(
    Generator flow, double parameter, std::shared_ptr<const FieldSource> base);

std::shared_ptr<FieldSource> interchange_source(
    std::shared_ptr<const FieldSource> base, double tau_lo, double tau_hi);

}  // namespace bargmann
}  // namespace cfluid
