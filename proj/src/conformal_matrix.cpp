#include "cfluid/conformal_matrix.hpp"

#include <cmath>

namespace cfluid {
namespace conformal {

Mat5 Mat5::identity() {
  Mat5 I;
  for (int i = 0; i < 5; ++i) I(i, i) = 1.0;
  return I;
}

Mat5 operator*(const Mat5& a, const Mat5& b) {
  Mat5 out;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < 5; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Mat5 operator+(const Mat5& a, const Mat5& b) {
  Mat5 out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

Mat5 operator*(double c, const Mat5& a) {
  Mat5 out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out(i, j) = c * a(i, j);
  return out;
}

Vec5 operator*(const Mat5& a, const Vec5& v) {
  Vec5 out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      out[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

Mat5 Mat5::transpose() const {
  Mat5 out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out(i, j) = (*this)(j, i);
  return out;
}

double Mat5::max_abs() const {
  double v = 0.0;
  for (const auto& row : m)
    for (double e : row) v = std::max(v, std::abs(e));
  return v;
}

Mat5 gram() {
  Mat5 G;
  G(0, 0) = 1.0;
  G(1, 2) = G(2, 1) = 1.0;  // 2 t s
  G(3, 4) = G(4, 3) = 1.0;  // 2 a b
  return G;
}

double quadratic_form(const Vec5& Y) {
  return Y[0] * Y[0] + 2.0 * Y[1] * Y[2] + 2.0 * Y[3] * Y[4];
}

Vec5 embed(const Vec3& y) {
  const double ybar_y = y.x * y.x + 2.0 * y.t * y.s;
  return {y.x, y.t, y.s, 1.0, -0.5 * ybar_y};
}

Vec3 project(const Vec5& p) {
  if (std::abs(p[3]) <= 1e-12) throw Error("point at infinity");
  return {p[0] / p[3], p[1] / p[3], p[2] / p[3]};
}

namespace {

// Gram matrix of x^2 + 2ts on the (x,t,s) block.
constexpr double kGamma[3][3] = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};

// bar swaps the t and s entries: for u = (x,t,s), ubar = (x,s,t).
std::array<double, 3> bar(const Vec3& u) { return {u.x, u.s, u.t}; }

}  // namespace

Mat5 algebra_element(const Mat3& Lambda, const Vec3& V, const Vec3& W,
                     double lambda) {
  // Lambda must be antisymmetric w.r.t. gamma.
  double scale = 1e-12;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      scale = std::max(scale, std::abs(Lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double entry = 0.0;
      for (int k = 0; k < 3; ++k)
        entry += kGamma[i][k] * Lambda[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] +
                 Lambda[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * kGamma[k][j];
      if (std::abs(entry) > 1e-12 * scale) throw Error("invalid rotation block");
    }

  Mat5 Z;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      Z(i, j) = Lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const double v[3] = {V.x, V.t, V.s};
  const double w[3] = {W.x, W.t, W.s};
  const auto vbar = bar(V);
  const auto wbar = bar(W);
  for (int i = 0; i < 3; ++i) {
    Z(i, 3) = v[i];
    Z(i, 4) = w[i];
    Z(3, i) = -wbar[static_cast<std::size_t>(i)];
    Z(4, i) = -vbar[static_cast<std::size_t>(i)];
  }
  Z(3, 3) = -lambda;
  Z(4, 4) = lambda;
  return Z;
}

Mat5 xi_hat() { return algebra_element(Mat3{}, {0.0, 0.0, 1.0}, {}, 0.0); }

Mat5 generator_matrix(Generator g, double p) {
  switch (g) {
    case Generator::H:
      return algebra_element(Mat3{}, {0.0, p, 0.0}, {}, 0.0);
    case Generator::P:
      return algebra_element(Mat3{}, {-p, 0.0, 0.0}, {}, 0.0);
    case Generator::N:
      return algebra_element(Mat3{}, {0.0, 0.0, -p}, {}, 0.0);
    case Generator::B: {
      Mat3 L{};
      L[0][1] = p;   // t d_x
      L[2][0] = -p;  // -x d_s
      return algebra_element(L, {}, {}, 0.0);
    }
    case Generator::Delta: {
      Mat3 L{};
      L[1][1] = 0.5 * p;
      L[2][2] = -0.5 * p;
      return algebra_element(L, {}, {}, 0.5 * p);
    }
    case Generator::K:
      return algebra_element(Mat3{}, {}, {0.0, 0.0, p}, 0.0);
    case Generator::D: {
      Mat3 L{};
      L[1][1] = p;
      L[2][2] = -p;
      return algebra_element(L, {}, {}, 0.0);
    }
    case Generator::G: {
      // Antiboost block: x~ receives -alpha s, t~ receives alpha x.
      Mat3 L{};
      L[0][2] = -p;
      L[1][0] = p;
      return algebra_element(L, {}, {}, 0.0);
    }
    case Generator::C1:
      return algebra_element(Mat3{}, {}, {0.0, -p, 0.0}, 0.0);
    case Generator::C2:
      return algebra_element(Mat3{}, {}, {p, 0.0, 0.0}, 0.0);
  }
  throw Error("unknown generator");
}

Vec3 infinitesimal_action(const Mat5& Z, const Vec3& y) {
  // Read the blocks back off the matrix.
  const Vec3 V{Z(0, 3), Z(1, 3), Z(2, 3)};
  const Vec3 W{Z(0, 4), Z(1, 4), Z(2, 4)};
  const double lambda = Z(4, 4);
  const double ybar_y = y.x * y.x + 2.0 * y.t * y.s;
  const double wbar_y = W.x * y.x + W.s * y.t + W.t * y.s;  // Wbar . y
  const double f = wbar_y + lambda;
  Vec3 out;
  out.x = Z(0, 0) * y.x + Z(0, 1) * y.t + Z(0, 2) * y.s + V.x -
          0.5 * W.x * ybar_y + f * y.x;
  out.t = Z(1, 0) * y.x + Z(1, 1) * y.t + Z(1, 2) * y.s + V.t -
          0.5 * W.t * ybar_y + f * y.t;
  out.s = Z(2, 0) * y.x + Z(2, 1) * y.t + Z(2, 2) * y.s + V.s -
          0.5 * W.s * ybar_y + f * y.s;
  return out;
}

Vec3 chart_derivative(const Mat5& Z, const Vec3& y) {
  // d/de project(exp(eZ) embed(y)) at e = 0 with a-component 1.
  const Vec5 Y = embed(y);
  const Vec5 dY = Z * Y;
  return {dY[0] - y.x * dY[3], dY[1] - y.t * dY[3], dY[2] - y.s * dY[3]};
}

Mat5 expm(const Mat5& Z) {
  const double norm = Z.max_abs();
  if (norm == 0.0) return Mat5::identity();

  // Nilpotent elements (translations, special conformal, antiboost blocks)
  // have Z^5 = 0; the series then terminates exactly.
  Mat5 Z2 = Z * Z;
  Mat5 Z4 = Z2 * Z2;
  Mat5 Z5 = Z4 * Z;
  const double n5 = Z5.max_abs();
  if (n5 <= 1e-14 * std::pow(norm, 5)) {
    Mat5 out = Mat5::identity();
    Mat5 term = Z;
    double factorial = 1.0;
    for (int k = 1; k <= 4; ++k) {
      factorial *= k;
      out = out + (1.0 / factorial) * term;
      term = term * Z;
    }
    return out;
  }

  // Scaling and squaring with a Taylor series.
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled *= 0.5;
    ++squarings;
  }
  Mat5 S = std::pow(0.5, squarings) * Z;
  Mat5 out = Mat5::identity();
  Mat5 term = Mat5::identity();
  for (int k = 1; k <= 24; ++k) {
    term = (1.0 / k) * (term * S);
    out = out + term;
  }
  for (int i = 0; i < squarings; ++i) out = out * out;
  return out;
}

Vec3 group_action(const Mat5& Z, const Vec3& y) {
  return project(expm(Z) * embed(y));
}

bool schrodinger_condition(const Mat5& Z) {
  const Mat5 xi = xi_hat();
  const Mat5 comm = Z * xi + (-1.0) * (xi * Z);
  const double scale = std::max(1.0, Z.max_abs());
  return comm.max_abs() <= 1e-13 * scale;
}

Vec3 closed_form_action(Generator g, double p, const Vec3& y) {
  switch (g) {
    case Generator::H:
      return {y.x, y.t + p, y.s};
    case Generator::P:
      return {y.x - p, y.t, y.s};
    case Generator::N:
      return {y.x, y.t, y.s - p};
    case Generator::B:
      return {y.x + p * y.t, y.t, y.s - p * y.x - 0.5 * p * p * y.t};
    case Generator::Delta:
      return {std::exp(0.5 * p) * y.x, std::exp(p) * y.t, y.s};
    case Generator::K: {
      const double d = 1.0 - p * y.t;
      if (std::abs(d) <= 1e-12) throw Error("point at infinity");
      return {y.x / d, y.t / d, y.s - 0.5 * p * y.x * y.x / d};
    }
    case Generator::D:
      return {y.x, std::exp(p) * y.t, std::exp(-p) * y.s};
    case Generator::G:
      return {y.x - p * y.s, y.t + p * y.x - 0.5 * p * p * y.s, y.s};
    case Generator::C1: {
      const double d = 1.0 + p * y.s;
      if (std::abs(d) <= 1e-12) throw Error("point at infinity");
      return {y.x / d, y.t + 0.5 * p * y.x * y.x / d, y.s / d};
    }
    case Generator::C2: {
      const double a = 1.0 - 0.5 * p * y.x;
      const double q = a * a + 0.5 * p * p * y.t * y.s;
      if (std::abs(q) <= 1e-12) throw Error("point at infinity");
      return {(y.x - p * (0.5 * y.x * y.x + y.t * y.s)) / q, y.t / q, y.s / q};
    }
  }
  throw Error("unknown generator");
}

}  // namespace conformal
}  // namespace cfluid
