#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cfluid/charges.hpp"
#include "cfluid/dynamics.hpp"
#include "oracles.hpp"

using namespace cfluid;

TEST_CASE("charges on the uniform zero-phase state") {
  Grid1D g(64, 10.0);
  FieldPair s(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
  const Potential pot = Potential::free();
  CHECK(std::abs(charge(Generator::H, s, pot)) < 1e-14);
  CHECK(std::abs(charge(Generator::P, s, pot)) < 1e-14);
  CHECK(std::abs(charge(Generator::B, s, pot)) < 1e-14);  // x-odd integrand
  CHECK(charge(Generator::N, s, pot) == doctest::Approx(10.0));
  CHECK(std::abs(charge(Generator::D, s, pot)) < 1e-14);
}

TEST_CASE("momentum of a windowed wave equals beta times the particle number") {
  Grid1D g(512, 40.0);
  const double beta = 0.25;
  // R compactly supported well inside the region where Theta = beta*x.
  Field1D R = Field1D::from_function(
      g, [](double x) { return 0.8 * std::exp(-x * x); });
  Field1D Theta = Field1D::from_function(g, [&](double x) {
    return beta * x * smooth_window(x, 6.0, 14.0);
  });
  FieldPair s(R, Theta, 0.0);
  const Potential pot = Potential::free();
  const double P = charge(Generator::P, s, pot);
  const double N = charge(Generator::N, s, pot);
  CHECK(P == doctest::Approx(beta * N).epsilon(1e-10));
}

TEST_CASE("charges match a refined-grid quadrature oracle") {
  // Same analytic datum sampled on n=512 and n=2048; the coarse value must
  // match the refined one to 1e-8 relative.
  auto datum = [](const Grid1D& g) {
    Field1D R = Field1D::from_function(
        g, [](double x) { return 0.5 * std::exp(-0.5 * x * x); });
    Field1D Theta = Field1D::from_function(g, [](double x) {
      return 0.3 * std::exp(-0.5 * (x - 1.0) * (x - 1.0));
    });
    return FieldPair(R, Theta, 0.7);
  };
  const Potential pot = Potential::free();
  FieldPair coarse = datum(Grid1D(512, 40.0));
  FieldPair fine = datum(Grid1D(2048, 40.0));
  for (Generator g : kGenerators) {
    const double qc = charge(g, coarse, pot);
    const double qf = charge(g, fine, pot);
    CHECK(std::abs(qc - qf) <= 1e-8 * std::max(1.0, std::abs(qf)));
  }
}

TEST_CASE("K and D identities hold to quadrature round-off") {
  FieldPair s = standard_datum();
  s.t = 0.37;
  const Potential pot = Potential::conformal(0.5);
  const double H = charge(Generator::H, s, pot);
  const double Delta = charge(Generator::Delta, s, pot);
  const double x2R = integrate(charge_coordinate(s.R.grid()) *
                               charge_coordinate(s.R.grid()) * s.R);
  const double K = charge(Generator::K, s, pot);
  CHECK(std::abs(K - (-s.t * s.t * H + 2.0 * s.t * Delta + 0.5 * x2R)) <
        1e-12 * std::max(1.0, std::abs(K)));

  const double D = charge(Generator::D, s, pot);
  const double RTheta = integrate(s.R * s.Theta);
  CHECK(std::abs(D - (s.t * H - RTheta)) < 1e-12 * std::max(1.0, std::abs(D)));
}

TEST_CASE("functional gradients: closed forms") {
  Grid1D g(128, 20.0);
  FieldPair s = oracles::random_state(g, 11, 0.4);
  const Potential pot = Potential::free();

  SUBCASE("N is linear") {
    auto grad = functional_gradient(Generator::N, s, pot);
    CHECK((grad.dR - Field1D::constant(g, 1.0)).max_abs() < 1e-14);
    CHECK(grad.dTheta.max_abs() < 1e-14);
  }

  SUBCASE("P gradient") {
    auto grad = functional_gradient(Generator::P, s, pot);
    CHECK((grad.dR - derivative(s.Theta, 1)).max_abs() < 1e-13);
    CHECK((grad.dTheta + derivative(s.R, 1)).max_abs() < 1e-13);
  }

  SUBCASE("H gradient vanishes at the trivial critical point") {
    FieldPair flat(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
    auto grad = functional_gradient(Generator::H, flat, pot);
    CHECK(grad.dR.max_abs() < 1e-14);
    CHECK(grad.dTheta.max_abs() < 1e-14);
  }
}

TEST_CASE("functional gradients match the Gateaux oracle for all generators") {
  Grid1D g(256, 20.0);
  const Potential pot = Potential::free();
  Field1D bump = Field1D::from_function(g, [](double x) {
    return std::exp(-0.5 * (x - 0.7) * (x - 0.7));
  });
  for (std::uint64_t seed : {3u, 4u}) {
    FieldPair s = oracles::random_state(g, seed, seed == 3 ? 0.0 : 1.1);
    for (Generator gen : kGenerators) {
      auto r = oracles::gateaux_check(gen, s, pot, bump);
      const double scale_R =
          std::max({1.0, std::abs(r.numeric_R), std::abs(r.analytic_R)});
      const double scale_T =
          std::max({1.0, std::abs(r.numeric_Theta), std::abs(r.analytic_Theta)});
      CHECK(std::abs(r.numeric_R - r.analytic_R) / scale_R < 1e-6);
      CHECK(std::abs(r.numeric_Theta - r.analytic_Theta) / scale_T < 1e-6);
    }
  }
}

TEST_CASE("gradients with potentials match the Gateaux oracle") {
  Grid1D g(256, 20.0);
  Field1D bump = Field1D::from_function(
      g, [](double x) { return std::exp(-0.5 * x * x); });
  FieldPair s = oracles::random_state(g, 5, 0.3, /*pedestal=*/0.05);
  for (const Potential& pot :
       {Potential::membrane(0.2), Potential::conformal(0.7)}) {
    for (Generator gen : {Generator::H, Generator::Delta, Generator::G,
                          Generator::C1, Generator::C2}) {
      auto r = oracles::gateaux_check(gen, s, pot, bump);
      const double scale_R =
          std::max({1.0, std::abs(r.numeric_R), std::abs(r.analytic_R)});
      CHECK(std::abs(r.numeric_R - r.analytic_R) / scale_R < 1e-6);
    }
  }
}

TEST_CASE("gradient dTheta components are compactly supported with R") {
  // dTheta always carries an R weight; with exactly compact R it must vanish
  // outside the support up to spectral round-off.
  Grid1D g(512, 30.0);
  Field1D R = Field1D::from_function(g, [](double x) {
    return 0.7 * smooth_window(x, 3.0, 8.0);
  });
  Field1D Theta = Field1D::from_function(g, [](double x) {
    return 0.4 * std::sin(2.0 * M_PI * x / 30.0) +
           0.2 * std::cos(4.0 * M_PI * x / 30.0);
  });
  FieldPair s(R, Theta, 0.8);
  for (Generator gen : kGenerators) {
    auto grad = functional_gradient(gen, s, Potential::free());
    double edge = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
      if (std::abs(g.x(i)) > 10.0) edge = std::max(edge, std::abs(grad.dTheta[i]));
    CHECK(edge < 1e-7);
  }
}
