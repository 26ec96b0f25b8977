#pragma once

#include <array>

#include "cfluid/charges.hpp"
#include "cfluid/errors.hpp"

namespace cfluid {
namespace conformal {

/// Point of extended space (x, t, s).
struct Vec3 {
  double x = 0.0, t = 0.0, s = 0.0;
};

using Vec5 = std::array<double, 5>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// 5x5 matrix in basis order (x, t, s, a, b).
struct Mat5 {
  std::array<std::array<double, 5>, 5> m{};

  double& operator()(int i, int j) { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  double operator()(int i, int j) const { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  static Mat5 identity();
  friend Mat5 operator*(const Mat5& a, const Mat5& b);
  friend Mat5 operator+(const Mat5& a, const Mat5& b);
  friend Mat5 operator*(double c, const Mat5& a);
  friend Vec5 operator*(const Mat5& a, const Vec5& v);
  Mat5 transpose() const;
  double max_abs() const;
};

/// Gram matrix of the quadratic form x^2 + 2ts + 2ab.
Mat5 gram();

/// Quadratic form value YbarY = x^2 + 2ts + 2ab.
double quadratic_form(const Vec5& Y);

/// Embedding y -> (y, 1, -ybar y / 2) into the isotropic cone.
Vec5 embed(const Vec3& y);

/// Affine chart projection; throws "point at infinity" when |a| <= 1e-12.
Vec3 project(const Vec5& p);

/// Assembles the o(3,2) element with blocks Lambda (must be in o(2,1) w.r.t.
/// x^2 + 2ts), translations V, special-conformal W and dilation weight
/// lambda.
Mat5 algebra_element(const Mat3& Lambda, const Vec3& V, const Vec3& W,
                     double lambda);

/// Matrix generator whose projective action realizes the charge's vector
/// field X_i exactly (parameter 1).
Mat5 generator_matrix(Generator g, double parameter = 1.0);

/// The vertical-translation generator xi_hat (V = xi = d_s).
Mat5 xi_hat();

/// Infinitesimal action Lambda y + V - (1/2) W ybar y + (Wbar y + lambda) y.
Vec3 infinitesimal_action(const Mat5& Z, const Vec3& y);

/// Derivative of the projective matrix action at the identity; must agree
/// with infinitesimal_action.
Vec3 chart_derivative(const Mat5& Z, const Vec3& y);

/// Matrix exponential (exact finite series for nilpotent input, scaling and
/// squaring otherwise).
Mat5 expm(const Mat5& Z);

/// project(exp(Z) * embed(y)); throws "point at infinity" when the image
/// leaves the affine chart.
Vec3 group_action(const Mat5& Z, const Vec3& y);

/// True iff [Z, xi_hat] = 0, i.e. Z belongs to the extended Schroedinger
/// subalgebra (the fiber-preserving generators).
bool schrodinger_condition(const Mat5& Z);

/// Printed closed-form finite actions for the four non-fiber-preserving
/// one-parameter families (D: time dilation, G: antiboost, C1, C2).
/// Throws "point at infinity" at the denominators' zeros.
Vec3 closed_form_action(Generator g, double parameter, const Vec3& y);

}  // namespace conformal
}  // namespace cfluid
