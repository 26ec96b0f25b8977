#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cfluid/fields.hpp"
#include "cfluid/grid.hpp"
#include "oracles.hpp"

using namespace cfluid;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid1D(100, 10.0), Error);  // not a power of two
  CHECK_THROWS_AS(Grid1D(8, 10.0), Error);    // too small
  Grid1D g(64, 16.0);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.x(0) == doctest::Approx(-8.0));
  CHECK(g.x(32) == doctest::Approx(0.0));
}

TEST_CASE("field finiteness enforced") {
  Grid1D g(16, 1.0);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_WITH_AS(Field1D(g, v), doctest::Contains("non-finite field"),
                       Error);
}

TEST_CASE("spectral derivative of a single Fourier mode") {
  Grid1D g(128, 10.0);
  const double k = 2.0 * M_PI / g.length;
  Field1D f = Field1D::from_function(g, [&](double x) { return std::sin(k * x); });
  Field1D d = derivative(f, 1);
  for (std::size_t i = 0; i < g.n; ++i)
    CHECK(std::abs(d[i] - k * std::cos(k * g.x(i))) < 1e-12);

  Field1D c = Field1D::constant(g, 3.7);
  Field1D dc = derivative(c, 1);
  CHECK(dc.max_abs() < 1e-14);
}

TEST_CASE("spectral derivative matches finite-difference oracle") {
  Grid1D g(256, 20.0);
  // Random band-limited field (modes <= n/4).
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(g.n / 4), b(g.n / 4);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  Field1D f = Field1D::from_function(g, [&](double x) {
    double s = 0.0;
    for (std::size_t m = 1; m < 12; ++m) {
      const double k = 2.0 * M_PI * double(m) / g.length;
      s += a[m] * std::cos(k * x) + b[m] * std::sin(k * x);
    }
    return s;
  });
  Field1D spectral = derivative(f, 1);
  Field1D fd = oracles::fd_derivative(f);
  const double h = g.spacing();
  // 4th-order FD truncation bound: h^4/30 * max|f^(5)|.
  double f5 = 0.0;
  for (std::size_t m = 1; m < 12; ++m) {
    const double k = 2.0 * M_PI * double(m) / g.length;
    f5 += (std::abs(a[m]) + std::abs(b[m])) * std::pow(k, 5);
  }
  const double bound = std::pow(h, 4) / 30.0 * f5 + 1e-10;
  CHECK((spectral - fd).max_abs() < bound);
}

TEST_CASE("second derivative") {
  Grid1D g(128, 10.0);
  const double k = 4.0 * M_PI / g.length;
  Field1D f = Field1D::from_function(g, [&](double x) { return std::cos(k * x); });
  Field1D d2 = derivative(f, 2);
  for (std::size_t i = 0; i < g.n; ++i)
    CHECK(std::abs(d2[i] + k * k * std::cos(k * g.x(i))) < 1e-11);
}

TEST_CASE("quadrature") {
  Grid1D g(64, 10.0);
  CHECK(integrate(Field1D::constant(g, 1.0)) == doctest::Approx(10.0));
  Field1D s = Field1D::from_function(
      g, [&](double x) { return std::sin(2.0 * M_PI * x / g.length); });
  CHECK(std::abs(integrate(s)) < 1e-13);
}

TEST_CASE("gaussian quadrature against adaptive oracle") {
  Grid1D g(512, 40.0);
  Field1D f = Field1D::from_function(g, [](double x) { return std::exp(-x * x); });
  const double oracle = oracles::adaptive_simpson(
      [](double x) { return std::exp(-x * x); }, -20.0, 20.0, 1e-14);
  CHECK(std::abs(integrate(f) - oracle) < 1e-10);
}

TEST_CASE("integral of derivative vanishes and derivative is linear") {
  Grid1D g(128, 12.0);
  Field1D f = Field1D::from_function(g, [&](double x) {
    return std::exp(std::sin(2.0 * M_PI * x / g.length));
  });
  Field1D q = Field1D::from_function(g, [&](double x) {
    return std::cos(4.0 * M_PI * x / g.length);
  });
  CHECK(std::abs(integrate(derivative(f, 1))) < 1e-12);
  Field1D lhs = derivative(2.5 * f - 1.25 * q, 1);
  Field1D rhs = 2.5 * derivative(f, 1) - 1.25 * derivative(q, 1);
  CHECK((lhs - rhs).max_abs() < 1e-12);
}

TEST_CASE("field map reproduces nodes bit-for-bit and interpolates") {
  Grid1D g(64, 16.0);
  std::vector<double> times = {0.0, 0.1, 0.2, 0.3, 0.4};
  auto Rfun = [](double x, double t) {
    return 1.0 + 0.5 * std::exp(-x * x) * (1.0 + 0.3 * t);
  };
  auto Tfun = [](double x, double t) {
    return 0.4 * std::exp(-0.25 * (x - 1.0) * (x - 1.0)) - 0.1 * t;
  };
  FieldMap2D map = sample_map(g, times, Rfun, Tfun);

  // Exact nodal reproduction.
  for (std::size_t it : {std::size_t(0), std::size_t(2), std::size_t(4)}) {
    for (std::size_t i = 0; i < g.n; i += 7) {
      auto [r, th] = map.sample(g.x(i), times[it]);
      CHECK(r == Rfun(g.x(i), times[it]));
      CHECK(th == Tfun(g.x(i), times[it]));
    }
  }

  // Constant map stays constant everywhere.
  FieldMap2D cmap = sample_map(
      g, times, [](double, double) { return 2.0; },
      [](double, double) { return -1.5; });
  auto [rc, tc] = cmap.sample(0.123, 0.217);
  CHECK(rc == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tc == doctest::Approx(-1.5).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(map.sample(0.0, 0.7), doctest::Contains("time out of range"),
                       Error);
}

TEST_CASE("interpolation error is O(h^4) for a windowed plane wave") {
  // Theta(x,t) = W(x) * (beta x - beta^2 t / 2) with a compact window W.
  const double beta = 0.4;
  auto window = [](double x) {
    return std::exp(-std::pow(x / 5.0, 8.0));  // flat-top compact window
  };
  auto Tfun = [&](double x, double t) {
    return window(x) * (beta * x - 0.5 * beta * beta * t);
  };
  auto Rfun = [](double, double) { return 1.0; };

  double prev_err = 0.0;
  std::vector<double> errs;
  for (std::size_t n : {std::size_t(256), std::size_t(512)}) {
    Grid1D g(n, 40.0);
    std::vector<double> times = {0.0, 0.05, 0.1, 0.15, 0.2};
    FieldMap2D map = sample_map(g, times, Rfun, Tfun);
    double err = 0.0;
    for (int q = 0; q < 200; ++q) {
      const double x = -4.0 + 8.0 * q / 199.0;  // inside the window
      const double t = 0.02 + 0.001 * q * 0.8;
      auto [r, th] = map.sample(x, t);
      (void)r;
      err = std::max(err, std::abs(th - Tfun(x, t)));
    }
    errs.push_back(err);
    prev_err = err;
  }
  (void)prev_err;
  CHECK(errs[1] < errs[0] / 8.0);  // ~16x from h^4
  CHECK(errs[1] < 1e-6);
}
