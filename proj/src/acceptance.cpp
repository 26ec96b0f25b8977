#include "cfluid/acceptance.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "cfluid/bargmann.hpp"
#include "cfluid/conformal_matrix.hpp"
#include "cfluid/dynamics.hpp"
#include "cfluid/emtensor.hpp"
#include "cfluid/liealg.hpp"
#include "cfluid/poisson.hpp"
#include "cfluid/schrodinger.hpp"

namespace cfluid {
namespace acceptance {

namespace {

void add(CriterionResult& c, const std::string& name, double value,
         double bound, bool exceed = false) {
  Item item{name, value, bound, exceed, exceed ? value > bound : value <= bound};
  c.pass = c.pass && item.pass;
  c.items.push_back(item);
}

FieldPair random_compact_state(const Grid1D& grid, std::mt19937_64& rng,
                               double t) {
  std::uniform_real_distribution<double> center(-0.1 * grid.length,
                                                0.1 * grid.length);
  std::uniform_real_distribution<double> width(0.7, 1.2);
  std::uniform_real_distribution<double> amp(0.2, 0.6);
  std::uniform_real_distribution<double> sign01(0.0, 1.0);
  struct Bump {
    double a, c, w;
  };
  std::vector<Bump> rb, tb;
  for (int i = 0; i < 3; ++i) rb.push_back({amp(rng), center(rng), width(rng)});
  for (int i = 0; i < 3; ++i)
    tb.push_back({amp(rng) * (sign01(rng) < 0.5 ? -1.0 : 1.0), center(rng),
                  width(rng)});
  auto gsum = [](const std::vector<Bump>& bs, double x) {
    double v = 0.0;
    for (const auto& b : bs)
      v += b.a * std::exp(-0.5 * (x - b.c) * (x - b.c) / (b.w * b.w));
    return v;
  };
  return FieldPair(
      Field1D::from_function(grid, [&](double x) { return gsum(rb, x); }),
      Field1D::from_function(grid, [&](double x) { return gsum(tb, x); }), t);
}

double conservation_drift(const std::vector<DriftRow>& rows,
                          const std::vector<Generator>& set) {
  double worst = 0.0;
  for (const auto& r : rows)
    for (Generator g : set)
      if (r.g == g) worst = std::max(worst, r.max_drift);
  return worst;
}

const std::vector<Generator> kSchrodingerSet = {
    Generator::H, Generator::P, Generator::B,
    Generator::N, Generator::Delta, Generator::K};
const std::vector<Generator> kPoincareExtra = {Generator::G, Generator::D};
const std::vector<Generator> kBreakingOfMembrane = {
    Generator::Delta, Generator::K, Generator::C1, Generator::C2};
const std::vector<Generator> kBreakingOfConformal = {
    Generator::G, Generator::D, Generator::C1, Generator::C2};

CriterionResult criterion_poisson_table(unsigned seed) {
  CriterionResult c;
  c.name = "1 Poisson table closes (45 pairs, V=0)";
  const Potential pot = Potential::free();

  double worst_standard = 0.0;
  for (double t : {0.0, 0.3, 1.7}) {
    FieldPair s = standard_datum();
    s.t = t;
    for (const auto& chk : poisson::verify_table(s, pot))
      worst_standard = std::max(worst_standard, chk.residual);
  }
  add(c, "max residual, standard datum, t in {0,0.3,1.7}", worst_standard,
      1e-7);

  std::mt19937_64 rng(seed);
  Grid1D grid(512, 40.0);
  double worst_random = 0.0;
  for (int k = 0; k < 5; ++k) {
    FieldPair s = random_compact_state(grid, rng, 0.2 * k);
    for (const auto& chk : poisson::verify_table(s, pot))
      worst_random = std::max(worst_random, chk.residual);
  }
  add(c, "max residual, 5 seeded random smooth states", worst_random, 1e-7);

  double worst_anti = 0.0;
  {
    FieldPair s = standard_datum();
    s.t = 0.3;
    for (Generator a : kGenerators)
      for (Generator b : kGenerators) {
        const double ab = poisson::bracket(a, b, s, pot);
        const double ba = poisson::bracket(b, a, s, pot);
        worst_anti = std::max(
            worst_anti, std::abs(ab + ba) / std::max(1.0, std::abs(ab)));
      }
  }
  add(c, "antisymmetry residual", worst_anti, 1e-10);
  return c;
}

CriterionResult criterion_conservation() {
  CriterionResult c;
  c.name = "2 conservation pattern across potentials";

  {
    EvolveOptions opts{1e-3, 1.0, 100, true};
    FieldMap2D traj = evolve(standard_datum(), Potential::free(), opts);
    auto rows = conservation_report(traj, Potential::free());
    add(c, "free run: all ten charges", conservation_drift(rows, {kGenerators.begin(), kGenerators.end()}), 1e-6);
  }
  {
    const Potential pot = Potential::membrane(0.1);
    EvolveOptions opts{1e-3, 1.0, 100, true};
    FieldMap2D traj = evolve(unit_background_datum(), pot, opts);
    auto rows = conservation_report(traj, pot);
    std::vector<Generator> conserved = {Generator::H, Generator::P,
                                        Generator::B, Generator::N,
                                        Generator::G, Generator::D};
    add(c, "membrane run: {H,P,B,N,G,D}", conservation_drift(rows, conserved),
        1e-6);
    add(c, "membrane run: breaking of {Delta,K,C1,C2}",
        conservation_drift(rows, kBreakingOfMembrane), 1e-3, /*exceed=*/true);
  }
  {
    const Potential pot = Potential::conformal(1.0);
    EvolveOptions opts{1e-3, 0.5, 100, true};
    FieldMap2D traj = evolve(standard_datum(), pot, opts);
    auto rows = conservation_report(traj, pot);
    add(c, "conformal run: {H,P,B,N,Delta,K}",
        conservation_drift(rows, kSchrodingerSet), 1e-6);
    add(c, "conformal run: breaking of {G,D,C1,C2}",
        conservation_drift(rows, kBreakingOfConformal), 1e-3, /*exceed=*/true);
  }
  {
    // Discretization-limited: drift shrinks at least 8x under dt halving.
    const Potential pot = Potential::conformal(1.0);
    auto drift_H = [&](double dt) {
      EvolveOptions opts{dt, 0.2, 3, true};
      FieldMap2D traj = evolve(standard_datum(), pot, opts);
      const double q0 = charge(Generator::H, traj.slice(0), pot);
      const double q1 =
          charge(Generator::H, traj.slice(traj.slice_count() - 1), pot);
      return std::abs(q1 - q0);
    };
    const double coarse = drift_H(0.02), fine = drift_H(0.01);
    add(c, "dt-halving drift ratio (coarse/fine)",
        fine > 0.0 ? coarse / fine : 16.0, 8.0, /*exceed=*/true);
  }
  return c;
}

CriterionResult criterion_lie_algebra() {
  CriterionResult c;
  c.name = "3 exact Lie algebra, sign, dictionary, conformal factors";
  auto table = liealg::structure_table();
  add(c, "closure of [X_i,X_j] in span{X0..X9}", table.closed ? 0.0 : 1.0, 0.5);
  add(c, "uniform sign sigma exists and is unique",
      (table.sigma != 0 && table.sigma_unique) ? 0.0 : 1.0, 0.5);
  add(c, "sigma equals +1", std::abs(table.sigma - 1), 0.5);

  auto dict = liealg::dictionary_check();
  add(c, "dictionary identities exact over Q(sqrt2)",
      dict.all_exact ? 0.0 : 1.0, 0.5);

  bool factors_ok = true;
  const auto& gens = liealg::generators();
  for (int i : {0, 1, 2, 3, 6, 7}) {
    auto lam = liealg::conformal_factor(gens[static_cast<std::size_t>(i)]);
    factors_ok = factors_ok && lam.has_value() && lam->is_zero();
  }
  {
    auto lam8 = liealg::conformal_factor(gens[8]);
    liealg::RPoly expected;
    expected.add_term({0, 0, 1}, Rational(-2));
    factors_ok = factors_ok && lam8.has_value() && (*lam8 == expected);
  }
  add(c, "lambda_i = 0 for the six isometries and lambda_8 = -2s",
      factors_ok ? 0.0 : 1.0, 0.5);
  return c;
}

CriterionResult criterion_matrix(unsigned seed) {
  CriterionResult c;
  c.name = "4 matrix realization of O(3,2)";
  std::mt19937_64 rng(seed + 17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto random_point = [&]() {
    return conformal::Vec3{u(rng), u(rng), u(rng)};
  };

  double worst_quadric = 0.0;
  for (Generator g : kGenerators) {
    const conformal::Mat5 M = conformal::expm(conformal::generator_matrix(g, 0.3));
    for (int k = 0; k < 100; ++k) {
      const conformal::Vec5 Y = conformal::embed(random_point());
      worst_quadric =
          std::max(worst_quadric, std::abs(conformal::quadratic_form(M * Y)));
    }
  }
  add(c, "quadric preservation", worst_quadric, 1e-12);

  double worst_group = 0.0;
  for (Generator g :
       {Generator::D, Generator::G, Generator::C1, Generator::C2}) {
    const auto lhs = conformal::expm(conformal::generator_matrix(g, 0.23)) *
                     conformal::expm(conformal::generator_matrix(g, -0.41));
    const auto rhs = conformal::expm(conformal::generator_matrix(g, -0.18));
    worst_group = std::max(worst_group, (lhs + (-1.0) * rhs).max_abs());
  }
  add(c, "one-parameter group law", worst_group, 1e-12);

  double worst_closed = 0.0;
  for (Generator g :
       {Generator::D, Generator::G, Generator::C1, Generator::C2}) {
    const double p = 0.2;
    const conformal::Mat5 Z = conformal::generator_matrix(g, p);
    int accepted = 0;
    while (accepted < 100) {
      const conformal::Vec3 y = random_point();
      conformal::Vec3 closed;
      try {
        closed = conformal::closed_form_action(g, p, y);
      } catch (const Error&) {
        continue;
      }
      const conformal::Vec3 out = conformal::group_action(Z, y);
      worst_closed = std::max({worst_closed, std::abs(out.x - closed.x),
                               std::abs(out.t - closed.t),
                               std::abs(out.s - closed.s)});
      ++accepted;
    }
  }
  add(c, "exp-action matches the closed forms (100 points each)", worst_closed,
      1e-10);

  bool split_ok = true;
  for (Generator g : kSchrodingerSet)
    split_ok =
        split_ok && conformal::schrodinger_condition(conformal::generator_matrix(g, 0.7));
  for (Generator g : kBreakingOfConformal)
    split_ok = split_ok &&
               !conformal::schrodinger_condition(conformal::generator_matrix(g, 0.7));
  add(c, "Schroedinger condition classifies the xi-preserving split",
      split_ok ? 0.0 : 1.0, 0.5);
  return c;
}

CriterionResult criterion_projection() {
  CriterionResult c;
  c.name = "5 projection machinery (section solver vs closed forms)";
  const Grid1D grid(256, 20.0);
  auto src = std::make_shared<PlaneWaveSource>(0.1, 1.0);

  double worst_theta = 0.0, worst_R = 0.0;
  for (auto [flow, param] :
       {std::pair{Generator::G, 0.4}, std::pair{Generator::D, 0.3},
        std::pair{Generator::C1, 0.1}, std::pair{Generator::C2, 0.05}}) {
    bargmann::SectionSolution named =
        bargmann::named_transform(flow, param, *src, grid, 0.3);
    bargmann::SectionSolution generic = bargmann::project_transform(
        bargmann::ExtendedMap(flow, param), *src, grid, 0.3);
    for (std::size_t i = 0; i < grid.n; ++i) {
      worst_theta = std::max(
          worst_theta, std::abs(named.theta_star[i] - generic.theta_star[i]));
      worst_R =
          std::max(worst_R, std::abs(named.R_star[i] - generic.R_star[i]));
    }
  }
  add(c, "generic vs closed-form Theta*", worst_theta, 1e-10);
  add(c, "generic vs closed-form R*", worst_R, 1e-8);

  {
    const double beta = 0.1, alpha = 0.4;
    const double beta_p = beta / (1.0 - 0.5 * alpha * beta);
    bargmann::SectionSolution named =
        bargmann::named_transform(Generator::G, alpha, *src, grid, 0.3);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double expected =
          beta_p * grid.x(i) - 0.5 * beta_p * beta_p * 0.3;
      worst = std::max(worst, std::abs(named.theta_star[i] - expected));
    }
    add(c, "antiboost slope law beta' = beta/(1-alpha beta/2)", worst, 1e-12);
  }

  {
    // Transformed free solutions satisfy the free equations; the residual
    // converges under step refinement.
    auto eom_residual = [](const FieldSource& f, double t, double half,
                           double h) {
      double worst = 0.0;
      const int n = static_cast<int>(2.0 * half / h);
      auto d_dx = [&](auto&& fn, double x, double tt) {
        return (-fn(x + 2 * h, tt) + 8 * fn(x + h, tt) - 8 * fn(x - h, tt) +
                fn(x - 2 * h, tt)) /
               (12 * h);
      };
      auto d_dt = [&](auto&& fn, double x, double tt) {
        return (-fn(x, tt + 2 * h) + 8 * fn(x, tt + h) - 8 * fn(x, tt - h) +
                fn(x, tt - 2 * h)) /
               (12 * h);
      };
      auto R = [&](double x, double tt) { return f.R(x, tt); };
      auto Th = [&](double x, double tt) { return f.Theta(x, tt); };
      auto flux = [&](double x, double tt) {
        return f.R(x, tt) * d_dx(Th, x, tt);
      };
      for (int i = 0; i <= n; ++i) {
        const double x = -half + 2.0 * half * i / n;
        const double thx = d_dx(Th, x, t);
        worst = std::max(
            {worst, std::abs(d_dt(R, x, t) + d_dx(flux, x, t)),
             std::abs(d_dt(Th, x, t) + 0.5 * thx * thx)});
      }
      return worst;
    };

    double worst_res = 0.0;
    for (auto [flow, param] :
         {std::pair{Generator::G, 0.4}, std::pair{Generator::C1, 0.1}}) {
      auto moved = bargmann::transformed_source(flow, param, src);
      worst_res = std::max(worst_res, eom_residual(*moved, 0.3, 2.0, 0.05));
    }
    add(c, "transformed plane waves satisfy the free equations", worst_res,
        1e-6);

    auto self_similar = std::make_shared<SelfSimilarSource>(-2.0, 1.0, 2.0);
    auto moved = bargmann::transformed_source(Generator::C1, 0.05, self_similar);
    const double coarse = eom_residual(*moved, 0.3, 1.5, 0.1);
    const double fine = eom_residual(*moved, 0.3, 1.5, 0.05);
    add(c, "transformed self-similar solution residual", fine, 1e-6);
    add(c, "residual convergence under refinement (coarse/fine)",
        fine > 0.0 ? coarse / fine : 2.0, 1.5, /*exceed=*/true);
  }
  return c;
}

CriterionResult criterion_emtensor(unsigned seed) {
  CriterionResult c;
  c.name = "6 energy-momentum tensors and Noether currents";
  std::mt19937_64 rng(seed + 5);
  Grid1D grid(512, 40.0);

  {
    FieldPair s = random_compact_state(grid, rng, 0.2);
    add(c, "trace identity T_xx - 2 T_tt, omega = 3",
        emtensor::trace_check(s, Potential::conformal(0.8)).max_abs(), 1e-13);
    add(c, "trace violation for omega = 2",
        emtensor::trace_check(s, Potential::power_law(1.0, 2.0)).max_abs(),
        0.01, /*exceed=*/true);
  }
  {
    auto run = [&](double dt) {
      EvolveOptions opts{dt, 0.2, 1, true};
      FieldMap2D traj = evolve(standard_datum(), Potential::free(), opts);
      return emtensor::continuity_residual(traj, Potential::free()).max_abs;
    };
    const double coarse = run(0.02), fine = run(0.01);
    add(c, "continuity residual on the free run", fine, 1e-6);
    add(c, "continuity dt-halving ratio", fine > 0.0 ? coarse / fine : 16.0,
        8.0, /*exceed=*/true);
  }
  {
    FieldPair s = standard_datum();
    s.t = 0.25;
    auto check = emtensor::emtensors_check(s, Potential::free());
    add(c, "extended/base tensor relation, uniform sign", check.max_residual,
        1e-10);
  }
  {
    FieldPair s = standard_datum();
    s.t = 0.4;
    double worst = 0.0;
    for (Generator g : kGenerators) {
      const double from_current =
          emtensor::current(g, s, Potential::free()).Q_value;
      const double direct = charge(g, s, Potential::free());
      worst = std::max(worst, std::abs(from_current - direct) /
                                  std::max(1.0, std::abs(direct)));
    }
    add(c, "current-based charges match direct charges (all ten)", worst,
        1e-8);
  }
  return c;
}

CriterionResult criterion_schrodinger() {
  CriterionResult c;
  c.name = "7 Schroedinger sector";
  Grid1D grid(512, 40.0);

  {
    const double k = 2.0 * M_PI * 3.0 / grid.length;
    std::vector<std::complex<double>> psi(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
      psi[i] = std::exp(std::complex<double>(0.0, k * grid.x(i)));
    nls::NlsOptions opts{1e-3, 0.5, 500, 0.0};
    nls::WaveTrajectory traj = nls::evolve_nls(nls::WaveField(grid, psi, 0.0), opts);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
      const std::complex<double> expected = std::exp(
          std::complex<double>(0.0, k * grid.x(i) - 0.5 * k * k * 0.5));
      err = std::max(err, std::abs(traj.psi.back()[i] - expected));
    }
    add(c, "linear plane-wave exactness", err, 1e-10);
  }

  std::vector<FieldPair> slices;
  {
    const double k = 2.0 * M_PI * 3.0 / grid.length;
    std::vector<std::complex<double>> psi(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      psi[i] = 0.1 + 0.05 * std::exp(-0.5 * (x - 1.0) * (x - 1.0)) *
                         std::exp(std::complex<double>(0.0, k * x));
    }
    nls::NlsOptions opts{2e-4, 0.5, 250, 0.0};
    nls::WaveTrajectory traj =
        nls::evolve_nls(nls::WaveField(grid, psi, 0.0), opts);
    double norm_drift = 0.0;
    const double n0 = traj.slice(0).norm();
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      norm_drift = std::max(norm_drift, std::abs(traj.slice(i).norm() - n0));
    add(c, "norm drift of the split step", norm_drift, 1e-12);

    for (std::size_t i = 0; i < traj.times.size(); ++i)
      slices.push_back(nls::hydro_decompose(traj.slice(i)));
  }
  {
    const Potential pot = Potential::quantum_effective(0.0);
    auto drift = [&](Generator gen) {
      const double q0 = charge(gen, slices.front(), pot);
      double worst = 0.0;
      for (const auto& s : slices)
        worst = std::max(worst, std::abs(charge(gen, s, pot) - q0) /
                                    std::max(std::abs(q0), 1e-3));
      return worst;
    };
    double conserved = 0.0;
    for (Generator g : kSchrodingerSet) conserved = std::max(conserved, drift(g));
    add(c, "hydrodynamic conservation of {H,P,B,N,Delta,K}", conserved, 1e-6);
    double breaking = 0.0;
    for (Generator g : kBreakingOfConformal)
      breaking = std::max(breaking, drift(g));
    add(c, "breaking of {G,D,C1,C2} on the Schroedinger flow", breaking, 1e-3,
        /*exceed=*/true);
  }
  {
    const FieldPair& s = slices[slices.size() / 2];
    Field1D theta_x = derivative(s.Theta, 1);
    Field1D Rx = derivative(s.R, 1);
    Field1D Rxx = derivative(s.R, 2);
    std::vector<double> tht(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double g = Rx[i] / s.R[i];
      tht[i] = -0.5 * theta_x[i] * theta_x[i] - 0.125 * g * g +
               0.25 * Rxx[i] / s.R[i];
    }
    auto report = nls::jevicki_check(s, Field1D(grid, tht));
    add(c, "Jevicki check (a): theta vanishes on the section", report.check_a,
        0.0);
    add(c, "Jevicki check (b): rho d_s theta = R", report.check_b, 1e-13);
    add(c, "Jevicki check (c): s-average reproduces the reduced density",
        report.check_c, 1e-10);
  }
  {
    auto packet_slice = [&](double t) {
      const std::complex<double> one_it(1.0, t);
      std::vector<std::complex<double>> psi(grid.n);
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        psi[i] = 0.1 + 0.05 / std::sqrt(one_it) *
                           std::exp(-(x - 1.0) * (x - 1.0) / (2.0 * one_it));
      }
      return nls::hydro_decompose(nls::WaveField(grid, psi, t));
    };
    auto run = [&](double dt, bool with_term) {
      std::vector<FieldPair> sl;
      for (int i = -3; i <= 3; ++i) sl.push_back(packet_slice(0.3 + dt * i));
      return emtensor::schrodinger_continuity(sl, dt, with_term).max_abs;
    };
    const double coarse = run(0.02, true), fine = run(0.01, true);
    add(c, "Schroedinger tensor continuity convergence (coarse/fine)",
        fine > 0.0 ? coarse / fine : 16.0, 8.0, /*exceed=*/true);
    const double ablated = run(0.01, false);
    add(c, "grad grad rho ablation breaks conservation (ratio to baseline)",
        fine > 0.0 ? ablated / fine : 1e9, 1e3, /*exceed=*/true);
  }
  return c;
}

CriterionResult criterion_interchange() {
  CriterionResult c;
  c.name = "8 t <-> s interchange";
  Grid1D grid(64, 10.0);
  {
    const double k = 0.7;
    AnalyticSource src([](double x, double) { return 1.0 + 0.5 * std::exp(-x * x); },
                       [k](double, double t) { return k * t; },
                       [](double, double) { return 0.0; },
                       [k](double, double) { return k; });
    const double t = 0.31;
    bargmann::SectionSolution out =
        bargmann::interchange_transform(src, grid, t, -10.0, 10.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
      worst = std::max({worst, std::abs(out.theta_star[i] - t / k),
                        std::abs(out.t_star[i] + t / k),
                        std::abs(out.R_star[i] - k * src.R(grid.x(i), -t / k))});
    }
    add(c, "linear-phase closed form", worst, 1e-12);
  }
  {
    auto src = std::make_shared<AnalyticSource>(
        [](double x, double t) {
          return 1.0 + 0.3 * std::exp(-0.2 * x * x) + 0.05 * t;
        },
        [](double x, double t) {
          return (1.2 + 0.2 * std::tanh(x)) * t + 0.1 * std::sin(x);
        },
        [](double x, double t) {
          const double ch = std::cosh(x);
          return 0.2 * t / (ch * ch) + 0.1 * std::cos(x);
        },
        [](double x, double) { return 1.2 + 0.2 * std::tanh(x); });
    auto once = bargmann::interchange_source(src, -12.0, 12.0);
    auto twice = bargmann::interchange_source(once, -8.0, 8.0);
    double worst = 0.0;
    for (double x : {-2.0, 0.0, 1.0, 3.0})
      for (double t : {-0.4, 0.2, 0.5})
        worst = std::max({worst, std::abs(twice->Theta(x, t) - src->Theta(x, t)),
                          std::abs(twice->R(x, t) - src->R(x, t))});
    add(c, "double application returns the fields", worst, 1e-8);
  }
  return c;
}

}  // namespace

std::vector<CriterionResult> run_all(unsigned seed) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_poisson_table(seed));
  results.push_back(criterion_conservation());
  results.push_back(criterion_lie_algebra());
  results.push_back(criterion_matrix(seed));
  results.push_back(criterion_projection());
  results.push_back(criterion_emtensor(seed));
  results.push_back(criterion_schrodinger());
  results.push_back(criterion_interchange());
  return results;
}

}  // namespace acceptance
}  // namespace cfluid
