#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cfluid/charges.hpp"
#include "cfluid/dynamics.hpp"
#include "oracles.hpp"

using namespace cfluid;

namespace {

// Windowed plane wave: exact free solution inside the flat part of the
// window (exactly 1 for |x|<=5, exactly 0 for |x|>=12).
struct WindowedWave {
  double beta = 0.3;
  double window(double x) const { return smooth_window(x, 5.0, 12.0); }
  double theta(double x, double t) const {
    return window(x) * (beta * x - 0.5 * beta * beta * t);
  }
  FieldPair state(const Grid1D& g, double t) const {
    return FieldPair(
        Field1D::constant(g, 0.7),
        Field1D::from_function(g, [&](double x) { return theta(x, t); }), t);
  }
};

}  // namespace

TEST_CASE("rhs of the trivial static solution vanishes") {
  Grid1D g(64, 10.0);
  FieldPair s(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
  auto [dR, dTheta] = rhs(s, Potential::free());
  CHECK(dR.max_abs() < 1e-14);
  CHECK(dTheta.max_abs() < 1e-14);
}

TEST_CASE("rhs of the windowed plane wave inside the window") {
  Grid1D g(1024, 40.0);
  WindowedWave w;
  FieldPair s = w.state(g, 0.0);
  auto [dR, dTheta] = rhs(s, Potential::free());
  // Inside |x| <= 3 the window is 1 to ~1e-10 and R is not constant, so only
  // dTheta has a clean prediction there; use constant R to pin dR too.
  FieldPair flat(Field1D::constant(g, 0.7),
                 Field1D::from_function(g, [&](double x) { return w.theta(x, 0.0); }),
                 0.0);
  auto [dRf, dThetaf] = rhs(flat, Potential::free());
  for (std::size_t i = 0; i < g.n; ++i) {
    if (std::abs(g.x(i)) > 3.0) continue;
    CHECK(std::abs(dRf[i]) < 1e-9);
    CHECK(std::abs(dThetaf[i] + 0.5 * w.beta * w.beta) < 1e-9);
  }
}

TEST_CASE("rhs with the membrane potential on uniform density") {
  Grid1D g(64, 10.0);
  FieldPair s(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
  auto [dR, dTheta] = rhs(s, Potential::membrane(1.0));
  CHECK(dR.max_abs() < 1e-14);
  for (std::size_t i = 0; i < g.n; ++i)
    CHECK(dTheta[i] == doctest::Approx(1.0));  // -dV/dR = +c/R^2
}

TEST_CASE("density floor violation raises") {
  Grid1D g(64, 10.0);
  FieldPair s(Field1D::constant(g, 1e-9), Field1D::zeros(g), 0.0);
  CHECK_THROWS_WITH_AS(rhs(s, Potential::membrane(1.0)),
                       doctest::Contains("density floor violated"), Error);
}

TEST_CASE("evolve keeps the fixed point fixed") {
  Grid1D g(64, 10.0);
  FieldPair s(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
  EvolveOptions opts;
  opts.dt = 1e-2;
  opts.t_final = 0.1;
  FieldMap2D traj = evolve(s, Potential::free(), opts);
  FieldPair last = traj.slice(traj.slice_count() - 1);
  CHECK((last.R - s.R).max_abs() < 1e-14);
  CHECK((last.Theta - s.Theta).max_abs() < 1e-14);
}

TEST_CASE("windowed plane wave evolves exactly inside the window") {
  Grid1D g(1024, 40.0);
  WindowedWave w;
  FieldPair s = w.state(g, 0.0);
  EvolveOptions opts;
  opts.dt = 1e-3;
  opts.t_final = 0.25;
  FieldMap2D traj = evolve(s, Potential::free(), opts);
  FieldPair last = traj.slice(traj.slice_count() - 1);
  double err_theta = 0.0, err_R = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (std::abs(g.x(i)) > 3.0) continue;
    err_theta = std::max(err_theta,
                         std::abs(last.Theta[i] - w.theta(g.x(i), opts.t_final)));
    err_R = std::max(err_R, std::abs(last.R[i] - s.R[i]));
  }
  CHECK(err_theta < 1e-8);
  CHECK(err_R < 1e-8);
}

TEST_CASE("fourth-order convergence of charge drift under dt halving") {
  FieldPair s = standard_datum();
  const Potential pot = Potential::conformal(1.0);  // strong smooth dynamics
  EvolveOptions coarse{0.02, 0.2, 1, true};
  EvolveOptions fine{0.01, 0.2, 1, true};
  FieldMap2D tc = evolve(s, pot, coarse);
  FieldMap2D tf = evolve(s, pot, fine);
  const double q0 = charge(Generator::H, tc.slice(0), pot);
  const double qc = charge(Generator::H, tc.slice(tc.slice_count() - 1), pot);
  const double qf = charge(Generator::H, tf.slice(tf.slice_count() - 1), pot);
  const double dc = std::abs(qc - q0), df = std::abs(qf - q0);
  CHECK(dc > 1e-13);  // above rounding floor so the ratio is meaningful
  CHECK(dc / df > 8.0);
}

TEST_CASE("caustic monitor") {
  SUBCASE("flat phase never trips") {
    Grid1D g(64, 10.0);
    FieldPair s(Field1D::constant(g, 1.0), Field1D::zeros(g), 0.0);
    auto diag = caustic_monitor(s);
    CHECK_FALSE(diag.tripped);
    CHECK(diag.max_grad == 0.0);
  }

  SUBCASE("cosine phase trips strictly before the characteristic crossing") {
    // Theta0 = -cos(2 pi x / L): u = Theta_x crosses at
    // t_c = 1 / max(-d u0/dx) = (L / 2 pi)^2 by the method of
    // characteristics.
    Grid1D g(256, 2.0 * M_PI);
    const double t_caustic = 1.0;
    FieldPair s(Field1D::constant(g, 1.0),
                Field1D::from_function(g, [](double x) { return -std::cos(x); }),
                0.0);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_final = 2.0;
    bool tripped = false;
    double t_trip = -1.0;
    try {
      evolve(s, Potential::free(), opts);
    } catch (const SimulationAbort& abort) {
      tripped = true;
      t_trip = abort.t_last_good();
    }
    CHECK(tripped);
    CHECK(t_trip < t_caustic);
    CHECK(t_trip > 0.1);  // and not spuriously at once
  }

  SUBCASE("windowed plane wave never trips over the test horizon") {
    Grid1D g(1024, 40.0);
    WindowedWave w;
    FieldPair s = w.state(g, 0.0);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_final = 0.25;
    CHECK_NOTHROW(evolve(s, Potential::free(), opts));
  }
}

TEST_CASE("conservation patterns across potentials") {
  auto conserved = [](const std::vector<DriftRow>& rows, Generator g) {
    for (const auto& r : rows)
      if (r.g == g) return r.max_drift;
    return -1.0;
  };

  SUBCASE("free run conserves all ten charges") {
    FieldPair s = standard_datum();
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_final = 1.0;
    opts.stride = 100;
    FieldMap2D traj = evolve(s, Potential::free(), opts);
    auto rows = conservation_report(traj, Potential::free());
    for (const auto& r : rows) CHECK(r.max_drift < 1e-6);
  }

  SUBCASE("membrane potential keeps exactly the Poincare set") {
    FieldPair s = unit_background_datum();
    const Potential pot = Potential::membrane(0.1);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_final = 1.0;
    opts.stride = 100;
    FieldMap2D traj = evolve(s, pot, opts);
    auto rows = conservation_report(traj, pot);
    for (Generator g : {Generator::H, Generator::P, Generator::B, Generator::N,
                        Generator::G, Generator::D})
      CHECK(conserved(rows, g) < 1e-6);
    double broken = 0.0;
    for (Generator g :
         {Generator::Delta, Generator::K, Generator::C1, Generator::C2})
      broken = std::max(broken, conserved(rows, g));
    CHECK(broken > 1e-3);
  }

  SUBCASE("conformal potential keeps exactly the Schrodinger set") {
    FieldPair s = standard_datum();
    const Potential pot = Potential::conformal(1.0);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_final = 0.5;  // pedestal data stay clear of zero on this horizon
    opts.stride = 100;
    FieldMap2D traj = evolve(s, pot, opts);
    auto rows = conservation_report(traj, pot);
    for (Generator g : {Generator::H, Generator::P, Generator::B, Generator::N,
                        Generator::Delta, Generator::K})
      CHECK(conserved(rows, g) < 1e-6);
    double broken = 0.0;
    for (Generator g :
         {Generator::G, Generator::D, Generator::C1, Generator::C2})
      broken = std::max(broken, conserved(rows, g));
    CHECK(broken > 1e-3);
  }
}
