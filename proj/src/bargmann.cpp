#include "cfluid/bargmann.hpp"

#include <cmath>

#include "cfluid/field_source.hpp"

namespace cfluid {

FieldPair FieldSource::slice(const Grid1D& grid, double t) const {
  return FieldPair(
      Field1D::from_function(grid, [&](double x) { return R(x, t); }),
      Field1D::from_function(grid, [&](double x) { return Theta(x, t); }), t);
}

namespace bargmann {

using conformal::Vec3;

ExtendedMap::ExtendedMap(Generator flow, double parameter)
    : flow_(flow), parameter_(parameter) {
  // Resolve the orientation sign in Jtilde = sign * Omega^3 from the exact
  // Jacobian determinant at a reference point.
  const Vec3 ref{0.11, 0.23, 0.37};
  const double eps = 1e-6;
  double J[3][3];
  for (int j = 0; j < 3; ++j) {
    Vec3 plus = ref, minus = ref;
    double* pp = (j == 0 ? &plus.x : j == 1 ? &plus.t : &plus.s);
    double* pm = (j == 0 ? &minus.x : j == 1 ? &minus.t : &minus.s);
    *pp += eps;
    *pm -= eps;
    const Vec3 fp = apply(plus), fm = apply(minus);
    J[0][j] = (fp.x - fm.x) / (2.0 * eps);
    J[1][j] = (fp.t - fm.t) / (2.0 * eps);
    J[2][j] = (fp.s - fm.s) / (2.0 * eps);
  }
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  const double om = omega(ref);
  orientation_ = (det / (om * om * om) >= 0.0) ? 1.0 : -1.0;
}

Vec3 ExtendedMap::apply(const Vec3& y) const {
  return conformal::closed_form_action(flow_, parameter_, y);
}

double ExtendedMap::omega(const Vec3& y) const {
  switch (flow_) {
    case Generator::H:
    case Generator::P:
    case Generator::N:
    case Generator::B:
    case Generator::G:
    case Generator::D:
      return 1.0;  // isometries
    case Generator::Delta:
      return std::exp(0.5 * parameter_);
    case Generator::K:
      return 1.0 / (1.0 - parameter_ * y.t);
    case Generator::C1:
      return 1.0 / (1.0 + parameter_ * y.s);
    case Generator::C2: {
      const double a = 1.0 - 0.5 * parameter_ * y.x;
      return 1.0 / (a * a + 0.5 * parameter_ * parameter_ * y.t * y.s);
    }
  }
  throw Error("unknown generator");
}

double ExtendedMap::jtilde(const Vec3& y) const {
  const double om = omega(y);
  return orientation_ * om * om * om;
}

Vec3 ExtendedMap::s_derivative(const Vec3& y) const {
  const double h = 1e-6 * (1.0 + std::abs(y.s));
  Vec3 plus = y, minus = y;
  plus.s += h;
  minus.s -= h;
  const Vec3 fp = apply(plus), fm = apply(minus);
  return {(fp.x - fm.x) / (2.0 * h), (fp.t - fm.t) / (2.0 * h),
          (fp.s - fm.s) / (2.0 * h)};
}

LiftedFields equivariant_lift(const FieldSource& source) {
  LiftedFields lift;
  lift.rho = [&source](double x, double t, double) { return source.R(x, t); };
  lift.theta = [&source](double x, double t, double s) {
    return source.Theta(x, t) + s;
  };
  return lift;
}

namespace {

struct ScalarSolve {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Safeguarded Newton on F; keeps a bracket once a sign change is seen.
ScalarSolve newton_solve(const std::function<double(double)>& F, double u0,
                         double scale) {
  ScalarSolve out;
  double u = u0;
  double lo = 0.0, hi = 0.0;
  bool have_bracket = false;
  double f_lo = 0.0;
  const double tol = 1e-13 * std::max(1.0, scale);

  double f = F(u);
  for (int it = 0; it < 50; ++it) {
    out.iterations = it;
    if (std::abs(f) <= tol) {
      out.root = u;
      out.residual = std::abs(f);
      out.converged = true;
      return out;
    }
    const double h = 1e-7 * (1.0 + std::abs(u));
    const double fp = (F(u + h) - F(u - h)) / (2.0 * h);
    if (std::abs(fp) < 1e-10)
      throw Error("degenerate section (caustic of the transformation)");
    double next = u - f / fp;
    if (have_bracket) {
      // Fall back to bisection when Newton leaves the bracket.
      if (next <= std::min(lo, hi) || next >= std::max(lo, hi))
        next = 0.5 * (lo + hi);
    }
    const double f_next = F(next);
    if (!have_bracket && f * f_next < 0.0) {
      lo = u;
      f_lo = f;
      hi = next;
      have_bracket = true;
    } else if (have_bracket) {
      if (f_lo * f_next < 0.0) {
        hi = next;
      } else {
        lo = next;
        f_lo = f_next;
      }
    }
    u = next;
    f = f_next;
  }
  out.root = u;
  out.residual = std::abs(f);
  out.converged = false;
  return out;
}

}  // namespace

SectionPoint solve_section(const ExtendedMap& map, const FieldSource& source,
                           double x, double t) {
  auto condition = [&](const ExtendedMap& m) {
    return [&m, &source, x, t](double u) {
      const Vec3 image = m.apply({x, t, -u});
      try {
        return source.Theta(image.x, image.t) + image.s;
      } catch (const Error&) {
        throw Error("image out of range");
      }
    };
  };

  const double guess = source.Theta(x, t);
  ScalarSolve solve;
  try {
    solve = newton_solve(condition(map), guess, std::abs(guess));
  } catch (const Error& e) {
    if (std::string(e.what()).find("image out of range") != std::string::npos)
      throw;
    solve.converged = false;
  }

  if (!solve.converged) {
    // Parameter continuation from the identity.
    const int steps = 8;
    double u = guess;
    for (int k = 1; k <= steps; ++k) {
      const ExtendedMap partial(map.flow(),
                                map.parameter() * double(k) / double(steps));
      solve = newton_solve(condition(partial), u, std::abs(guess));
      if (!solve.converged)
        throw Error("section solve failed (worst residual " +
                    std::to_string(solve.residual) + ")");
      u = solve.root;
    }
  }

  SectionPoint point;
  point.theta_star = solve.root;
  point.residual = solve.residual;
  point.iterations = solve.iterations;
  const Vec3 image = map.apply({x, t, -solve.root});
  point.x_star = image.x;
  point.t_star = image.t;
  return point;
}

namespace {

// 4th-order first derivative of a non-periodic grid function (one-sided at
// the edges).
std::vector<double> fd_derivative_open(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  auto central = [&](std::size_t i) {
    return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
  };
  for (std::size_t i = 2; i + 2 < n; ++i) out[i] = central(i);
  auto one_sided = [&](std::size_t i, int dir) {
    const double d = dir;
    return d *
           (-25.0 * f[i] + 48.0 * f[i + dir] - 36.0 * f[i + 2 * dir] +
            16.0 * f[i + 3 * dir] - 3.0 * f[i + 4 * dir]) /
           (12.0 * h);
  };
  out[0] = one_sided(0, 1);
  out[1] = one_sided(1, 1);
  out[n - 1] = one_sided(n - 1, -1);
  out[n - 2] = one_sided(n - 2, -1);
  return out;
}

struct SliceSolve {
  std::vector<double> theta, xs, ts;
  double max_residual = 0.0;
  int max_iterations = 0;
};

SliceSolve solve_slice(const ExtendedMap& map, const FieldSource& source,
                       const Grid1D& grid, double t) {
  SliceSolve out;
  out.theta.resize(grid.n);
  out.xs.resize(grid.n);
  out.ts.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const SectionPoint p = solve_section(map, source, grid.x(i), t);
    out.theta[i] = p.theta_star;
    out.xs[i] = p.x_star;
    out.ts[i] = p.t_star;
    out.max_residual = std::max(out.max_residual, p.residual);
    out.max_iterations = std::max(out.max_iterations, p.iterations);
  }
  return out;
}

}  // namespace

SectionSolution project_transform(const ExtendedMap& map,
                                  const FieldSource& source,
                                  const Grid1D& grid, double query_t,
                                  double dt_fd) {
  // Five time levels for the 4th-order time derivative of (x*, t*).
  const double dt = 2.0 * dt_fd;
  std::array<SliceSolve, 5> slices;
  for (int k = -2; k <= 2; ++k)
    slices[static_cast<std::size_t>(k + 2)] =
        solve_slice(map, source, grid, query_t + dt * k);
  const SliceSolve& center = slices[2];

  const double h = grid.spacing();
  auto dx = [&](const std::vector<double>& f) { return fd_derivative_open(f, h); };
  auto dt_central = [&](auto field_of) {
    std::vector<double> out(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      out[i] = (-field_of(4)[i] + 8.0 * field_of(3)[i] - 8.0 * field_of(1)[i] +
                field_of(0)[i]) /
               (12.0 * dt);
    }
    return out;
  };

  std::vector<double> xs_x = dx(center.xs);
  std::vector<double> ts_x = dx(center.ts);
  std::vector<double> xs_t =
      dt_central([&](int k) -> const std::vector<double>& { return slices[static_cast<std::size_t>(k)].xs; });
  std::vector<double> ts_t =
      dt_central([&](int k) -> const std::vector<double>& { return slices[static_cast<std::size_t>(k)].ts; });

  std::vector<double> rstar(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double jac = xs_x[i] * ts_t[i] - ts_x[i] * xs_t[i];
    if (std::abs(jac) < 1e-12)
      throw Error("degenerate section (caustic of the transformation)");
    const Vec3 at{grid.x(i), query_t, -center.theta[i]};
    rstar[i] = map.omega(at) * map.jtilde(at) / jac *
               source.R(center.xs[i], center.ts[i]);
  }

  SectionSolution sol{Field1D(grid, center.xs), Field1D(grid, center.ts),
                      Field1D(grid, center.theta), Field1D(grid, rstar),
                      query_t, center.max_residual, center.max_iterations};
  return sol;
}

namespace {

SectionSolution explicit_solution(const Grid1D& grid, double query_t,
                                  const std::function<double(double)>& xs,
                                  const std::function<double(double)>& ts,
                                  const std::function<double(double)>& theta,
                                  const std::function<double(double)>& rstar) {
  std::vector<double> vx(grid.n), vt(grid.n), vth(grid.n), vr(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    vx[i] = xs(x);
    vt[i] = ts(x);
    vth[i] = theta(x);
    vr[i] = rstar(x);
  }
  return SectionSolution{Field1D(grid, vx), Field1D(grid, vt),
                         Field1D(grid, vth), Field1D(grid, vr), query_t, 0.0,
                         0};
}

double checked_div(double num, double den) {
  if (std::abs(den) < 1e-10)
    throw Error("transformation singular at this point");
  return num / den;
}

}  // namespace

SectionSolution named_transform(Generator flow, double parameter,
                                const FieldSource& source, const Grid1D& grid,
                                double query_t) {
  const double p = parameter;
  const double t = query_t;
  const FieldSource& f = source;

  switch (flow) {
    case Generator::H:
      // Time translation t* = t + p.
      return explicit_solution(
          grid, t, [&](double x) { return x; }, [&](double) { return t + p; },
          [&](double x) { return f.Theta(x, t + p); },
          [&](double x) { return f.R(x, t + p); });
    case Generator::P:
      // Space translation x* = x - p.
      return explicit_solution(
          grid, t, [&](double x) { return x - p; }, [&](double) { return t; },
          [&](double x) { return f.Theta(x - p, t); },
          [&](double x) { return f.R(x - p, t); });
    case Generator::N:
      // Phase shift.
      return explicit_solution(
          grid, t, [&](double x) { return x; }, [&](double) { return t; },
          [&](double x) { return f.Theta(x, t) - p; },
          [&](double x) { return f.R(x, t); });
    case Generator::B:
      // Galilei boost: Theta*(x,t) = Theta(x + p t, t) - p x - p^2 t / 2.
      return explicit_solution(
          grid, t, [&](double x) { return x + p * t; },
          [&](double) { return t; },
          [&](double x) { return f.Theta(x + p * t, t) - p * x - 0.5 * p * p * t; },
          [&](double x) { return f.R(x + p * t, t); });
    case Generator::Delta:
      // Non-relativistic dilatation: R* = e^{p/2} R(x*, t*).
      return explicit_solution(
          grid, t, [&](double x) { return std::exp(0.5 * p) * x; },
          [&](double) { return std::exp(p) * t; },
          [&](double x) { return f.Theta(std::exp(0.5 * p) * x, std::exp(p) * t); },
          [&](double x) { return std::exp(0.5 * p) * f.R(std::exp(0.5 * p) * x, std::exp(p) * t); });
    case Generator::K: {
      // Expansion: R* = R(x*,t*)/(1 - p t), Theta* = Theta(x*,t*) - p x^2/(2(1 - p t)).
      const double den = 1.0 - p * t;
      if (std::abs(den) < 1e-10)
        throw Error("transformation singular at this point");
      return explicit_solution(
          grid, t, [&](double x) { return x / den; },
          [&](double) { return t / den; },
          [&](double x) {
            return f.Theta(x / den, t / den) - 0.5 * p * x * x / den;
          },
          [&](double x) { return f.R(x / den, t / den) / den; });
    }
    case Generator::D: {
      // Time dilatation: R*(x,t) = e^{-p} R(x, e^p t), Theta* = e^p Theta.
      const double ep = std::exp(p);
      return explicit_solution(
          grid, t, [&](double x) { return x; }, [&](double) { return ep * t; },
          [&](double x) { return ep * f.Theta(x, ep * t); },
          [&](double x) { return std::exp(-p) * f.R(x, ep * t); });
    }
    case Generator::G: {
      // Antiboost: x* = x + p Theta*(x,t), t* = t + p x + p^2 Theta*/2,
      // Theta* = Theta(x*, t*); R* = R / J* with
      // J* = 1 / (1 - p Theta_x - p^2 Theta_t / 2) at (x*, t*).
      std::vector<double> vx(grid.n), vt(grid.n), vth(grid.n), vr(grid.n);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        auto F = [&](double u) {
          return f.Theta(x + p * u, t + p * x + 0.5 * p * p * u) - u;
        };
        auto solve = newton_solve(F, f.Theta(x, t), std::abs(f.Theta(x, t)));
        if (!solve.converged)
          throw Error("section solve failed (worst residual " +
                      std::to_string(solve.residual) + ")");
        const double u = solve.root;
        vth[i] = u;
        vx[i] = x + p * u;
        vt[i] = t + p * x + 0.5 * p * p * u;
        const double inv_jac = 1.0 - p * f.Theta_x(vx[i], vt[i]) -
                               0.5 * p * p * f.Theta_t(vx[i], vt[i]);
        vr[i] = f.R(vx[i], vt[i]) * inv_jac;
        worst = std::max(worst, solve.residual);
      }
      return SectionSolution{Field1D(grid, vx), Field1D(grid, vt),
                             Field1D(grid, vth), Field1D(grid, vr), t, worst,
                             0};
    }
    case Generator::C1: {
      // x* = x (1 + p w), t* = t + p x^2 (1 + p w)/2, w = Theta(x*,t*);
      // Theta* = w / (1 + p w); R* = (1 + p w)^4 R / J1* with
      // J1* = (1 + p w) / (1 - p x Theta_x - p^2 x^2 Theta_t / 2).
      std::vector<double> vx(grid.n), vt(grid.n), vth(grid.n), vr(grid.n);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        auto F = [&](double w) {
          return f.Theta(x * (1.0 + p * w), t + 0.5 * p * x * x * (1.0 + p * w)) -
                 w;
        };
        auto solve = newton_solve(F, f.Theta(x, t), std::abs(f.Theta(x, t)));
        if (!solve.converged)
          throw Error("section solve failed (worst residual " +
                      std::to_string(solve.residual) + ")");
        const double w = solve.root;
        const double opw = 1.0 + p * w;
        if (std::abs(opw) < 1e-10)
          throw Error("transformation singular at this point");
        vx[i] = x * opw;
        vt[i] = t + 0.5 * p * x * x * opw;
        vth[i] = w / opw;
        const double denom = 1.0 - p * x * f.Theta_x(vx[i], vt[i]) -
                             0.5 * p * p * x * x * f.Theta_t(vx[i], vt[i]);
        const double j1 = checked_div(opw, denom);
        vr[i] = std::pow(opw, 4) * f.R(vx[i], vt[i]) / j1;
        worst = std::max(worst, solve.residual);
      }
      return SectionSolution{Field1D(grid, vx), Field1D(grid, vt),
                             Field1D(grid, vth), Field1D(grid, vr), t, worst,
                             0};
    }
    case Generator::C2: {
      // x* = (x + p t w)/A, t* = (t + p^2 t^2 w / 2)/A^2, A = 1 - p x / 2,
      // w = Theta(x*,t*); Theta* = A^2 w / (1 + p^2 t w / 2);
      // R* = (1 + p^2 t w/2)^4 / A^8 * R / J2* with
      // J2* = (1 + p^2 t w/2) / ((A^2 - p t A Theta_x - p^2 t^2 Theta_t/2) A^2).
      std::vector<double> vx(grid.n), vt(grid.n), vth(grid.n), vr(grid.n);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double A = 1.0 - 0.5 * p * x;
        if (std::abs(A) < 1e-10)
          throw Error("transformation singular at this point");
        auto F = [&](double w) {
          return f.Theta((x + p * t * w) / A,
                         (t + 0.5 * p * p * t * t * w) / (A * A)) -
                 w;
        };
        auto solve = newton_solve(F, f.Theta(x, t), std::abs(f.Theta(x, t)));
        if (!solve.converged)
          throw Error("section solve failed (worst residual " +
                      std::to_string(solve.residual) + ")");
        const double w = solve.root;
        const double b = 1.0 + 0.5 * p * p * t * w;
        if (std::abs(b) < 1e-10)
          throw Error("transformation singular at this point");
        vx[i] = (x + p * t * w) / A;
        vt[i] = (t + 0.5 * p * p * t * t * w) / (A * A);
        vth[i] = A * A * w / b;
        const double den = A * A - p * t * A * f.Theta_x(vx[i], vt[i]) -
                           0.5 * p * p * t * t * f.Theta_t(vx[i], vt[i]);
        const double j2 = checked_div(b, den * A * A);
        vr[i] = std::pow(b, 4) / std::pow(A, 8) * f.R(vx[i], vt[i]) / j2;
        worst = std::max(worst, solve.residual);
      }
      return SectionSolution{Field1D(grid, vx), Field1D(grid, vt),
                             Field1D(grid, vth), Field1D(grid, vr), t, worst,
                             0};
    }
  }
  throw Error("unknown generator");
}

SectionSolution interchange_transform(const FieldSource& source,
                                      const Grid1D& grid, double query_t,
                                      double tau_lo, double tau_hi) {
  std::vector<double> vx(grid.n), vt(grid.n), vth(grid.n), vr(grid.n);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    // Monotonicity of Theta(x, .) over the window.
    const int probes = 17;
    double prev = source.Theta(x, tau_lo);
    double direction = 0.0;
    for (int k = 1; k < probes; ++k) {
      const double tau = tau_lo + (tau_hi - tau_lo) * k / (probes - 1);
      const double val = source.Theta(x, tau);
      const double step = val - prev;
      if (step == 0.0 || (direction != 0.0 && step * direction < 0.0))
        throw Error("interchange undefined: phase not invertible in time");
      direction = step;
      prev = val;
    }
    auto F = [&](double tau) { return source.Theta(x, tau) + query_t; };
    if (F(tau_lo) * F(tau_hi) > 0.0)
      throw Error("interchange undefined: phase not invertible in time");
    // Bisection start, Newton polish.
    double lo = tau_lo, hi = tau_hi;
    double flo = F(lo);
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      const double fm = F(mid);
      if (flo * fm <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    double tau = 0.5 * (lo + hi);
    for (int k = 0; k < 5; ++k) {
      const double ft = source.Theta_t(x, tau);
      if (std::abs(ft) < 1e-10)
        throw Error("interchange undefined: phase not invertible in time");
      tau -= F(tau) / ft;
    }
    worst = std::max(worst, std::abs(F(tau)));
    vx[i] = x;
    vt[i] = tau;        // t* = -Theta* = tau
    vth[i] = -tau;      // Theta*(x,t) = -tau
    vr[i] = source.R(x, tau) * source.Theta_t(x, tau);
  }
  return SectionSolution{Field1D(grid, vx), Field1D(grid, vt),
                         Field1D(grid, vth), Field1D(grid, vr), query_t, worst,
                         0};
}

namespace {

class TransformedSource final : public FieldSource {
 public:
  TransformedSource(Generator flow, double parameter,
                    std::shared_ptr<const FieldSource> base)
      : flow_(flow), parameter_(parameter), base_(std::move(base)) {}

  double R(double x, double t) const override { return eval(x, t).second; }
  double Theta(double x, double t) const override { return eval(x, t).first; }
  double Theta_x(double x, double t) const override {
    const double h = 1e-4;
    return (-Theta(x + 2 * h, t) + 8 * Theta(x + h, t) - 8 * Theta(x - h, t) +
            Theta(x - 2 * h, t)) /
           (12 * h);
  }
  double Theta_t(double x, double t) const override {
    const double h = 1e-4;
    return (-Theta(x, t + 2 * h) + 8 * Theta(x, t + h) - 8 * Theta(x, t - h) +
            Theta(x, t - 2 * h)) /
           (12 * h);
  }

 private:
  std::pair<double, double> eval(double x, double t) const {
    const ExtendedMap map(flow_, parameter_);
    const SectionPoint p = solve_section(map, *base_, x, t);
    return {p.theta_star, density_from_closed_form(p, x, t)};
  }

  double density_from_closed_form(const SectionPoint& p, double x,
                                  double t) const {
    const FieldSource& f = *base_;
    const double par = parameter_;
    switch (flow_) {
      case Generator::H:
      case Generator::P:
      case Generator::N:
        return f.R(p.x_star, p.t_star);
      case Generator::B:
        return f.R(p.x_star, p.t_star);
      case Generator::Delta:
        return std::exp(0.5 * par) * f.R(p.x_star, p.t_star);
      case Generator::K:
        return f.R(p.x_star, p.t_star) / (1.0 - par * t);
      case Generator::D:
        return std::exp(-par) * f.R(p.x_star, p.t_star);
      case Generator::G: {
        const double inv_jac = 1.0 - par * f.Theta_x(p.x_star, p.t_star) -
                               0.5 * par * par * f.Theta_t(p.x_star, p.t_star);
        return f.R(p.x_star, p.t_star) * inv_jac;
      }
      case Generator::C1: {
        const double w = f.Theta(p.x_star, p.t_star);
        const double opw = 1.0 + par * w;
        const double denom = 1.0 - par * x * f.Theta_x(p.x_star, p.t_star) -
                             0.5 * par * par * x * x *
                                 f.Theta_t(p.x_star, p.t_star);
        const double j1 = checked_div(opw, denom);
        return std::pow(opw, 4) * f.R(p.x_star, p.t_star) / j1;
      }
      case Generator::C2: {
        const double w = f.Theta(p.x_star, p.t_star);
        const double A = 1.0 - 0.5 * par * x;
        const double b = 1.0 + 0.5 * par * par * t * w;
        const double den = A * A - par * t * A * f.Theta_x(p.x_star, p.t_star) -
                           0.5 * par * par * t * t *
                               f.Theta_t(p.x_star, p.t_star);
        const double j2 = checked_div(b, den * A * A);
        return std::pow(b, 4) / std::pow(A, 8) * f.R(p.x_star, p.t_star) / j2;
      }
    }
    throw Error("unknown generator");
  }

  Generator flow_;
  double parameter_;
  std::shared_ptr<const FieldSource> base_;
};

class InterchangeSource final : public FieldSource {
 public:
  InterchangeSource(std::shared_ptr<const FieldSource> base, double lo,
                    double hi)
      : base_(std::move(base)), lo_(lo), hi_(hi) {}

  double R(double x, double t) const override {
    const double tau = solve_tau(x, t);
    return base_->R(x, tau) * base_->Theta_t(x, tau);
  }
  double Theta(double x, double t) const override { return -solve_tau(x, t); }
  double Theta_x(double x, double t) const override {
    const double tau = solve_tau(x, t);
    // Implicit differentiation of Theta(x,tau) + t = 0.
    return base_->Theta_x(x, tau) / base_->Theta_t(x, tau);
  }
  double Theta_t(double x, double t) const override {
    const double tau = solve_tau(x, t);
    return 1.0 / base_->Theta_t(x, tau);
  }

 private:
  double solve_tau(double x, double t) const {
    auto F = [&](double tau) { return base_->Theta(x, tau) + t; };
    double lo = lo_, hi = hi_;
    if (F(lo) * F(hi) > 0.0)
      throw Error("interchange undefined: phase not invertible in time");
    double flo = F(lo);
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      const double fm = F(mid);
      if (flo * fm <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    double tau = 0.5 * (lo + hi);
    for (int k = 0; k < 5; ++k) {
      const double ft = base_->Theta_t(x, tau);
      if (std::abs(ft) < 1e-10)
        throw Error("interchange undefined: phase not invertible in time");
      tau -= F(tau) / ft;
    }
    return tau;
  }

  std::shared_ptr<const FieldSource> base_;
  double lo_, hi_;
};

}  // namespace

std::shared_ptr<FieldSource> transformed_source(
    Generator flow, double parameter,
    std::shared_ptr<const FieldSource> base) {
  return std::make_shared<TransformedSource>(flow, parameter, std::move(base));
}

std::shared_ptr<FieldSource> interchange_source(
    std::shared_ptr<const FieldSource> base, double tau_lo, double tau_hi) {
  return std::make_shared<InterchangeSource>(std::move(base), tau_lo, tau_hi);
}

}  // namespace bargmann
}  // namespace cfluid
