#include "cfluid/schrodinger.hpp"

#include <fftw3.h>

#include <cmath>

namespace cfluid {
namespace nls {

namespace {

constexpr double kAmplitudeFloor = 1e-6;

void fft_inplace(const Grid1D& grid, std::vector<std::complex<double>>& v,
                 int sign) {
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(grid.n), reinterpret_cast<fftw_complex*>(v.data()),
      reinterpret_cast<fftw_complex*>(v.data()),
      sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  if (sign > 0) {
    const double norm = 1.0 / static_cast<double>(grid.n);
    for (auto& c : v) c *= norm;
  }
}

}  // namespace

WaveField::WaveField(Grid1D g, std::vector<std::complex<double>> values,
                     double time)
    : grid(g), psi(std::move(values)), t(time) {
  if (psi.size() != grid.n) throw Error("wave field length mismatch");
  double n2 = 0.0;
  for (const auto& c : psi) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error("non-finite field: psi");
    n2 += std::norm(c);
  }
  if (!(n2 > 0.0)) throw Error("wave field must have positive norm");
}

double WaveField::norm() const {
  double n2 = 0.0;
  for (const auto& c : psi) n2 += std::norm(c);
  return n2 * grid.spacing();
}

WaveTrajectory evolve_nls(const WaveField& initial, const NlsOptions& opts) {
  const Grid1D grid = initial.grid;
  if (!(opts.dt > 0.0)) throw Error("dt must be positive");
  {
    // The time step must resolve the phase of the highest retained mode.
    const double kmax = M_PI * static_cast<double>(grid.n) / grid.length;
    if (0.5 * kmax * kmax * opts.dt >= 1.0)
      throw Error("time step too large for the spectral bandwidth");
  }
  const auto nsteps_real = (opts.t_final - initial.t) / opts.dt;
  const std::size_t nsteps =
      static_cast<std::size_t>(std::llround(nsteps_real));
  if (nsteps == 0 || std::abs(nsteps_real - double(nsteps)) > 1e-9)
    throw Error("t_final must be an integer number of steps from t0");

  // Half-step kinetic phases exp(-i k^2 dt / 4).
  std::vector<std::complex<double>> half_kick(grid.n);
  const double k0 = 2.0 * M_PI / grid.length;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double jj = (j <= grid.n / 2) ? static_cast<double>(j)
                                        : static_cast<double>(j) -
                                              static_cast<double>(grid.n);
    const double k = k0 * jj;
    half_kick[j] = std::exp(std::complex<double>(0.0, -0.25 * k * k * opts.dt));
  }

  WaveTrajectory traj;
  traj.grid = grid;
  std::vector<std::complex<double>> psi = initial.psi;
  double t = initial.t;
  traj.times.push_back(t);
  traj.psi.push_back(psi);

  for (std::size_t step = 0; step < nsteps; ++step) {
    fft_inplace(grid, psi, -1);
    for (std::size_t j = 0; j < grid.n; ++j) psi[j] *= half_kick[j];
    fft_inplace(grid, psi, +1);
    if (opts.quintic_c != 0.0) {
      for (auto& c : psi) {
        const double rho = std::norm(c);
        // Potential sub-step i d_t psi = 3 c rho^2 psi, the variational sign
        // that maps onto the fluid potential V = c R^3 + quantum term; |psi|
        // is invariant, so the sub-step is exact.
        c *= std::exp(std::complex<double>(0.0,
                                           -3.0 * opts.quintic_c * rho * rho *
                                               opts.dt));
      }
    }
    fft_inplace(grid, psi, -1);
    for (std::size_t j = 0; j < grid.n; ++j) psi[j] *= half_kick[j];
    fft_inplace(grid, psi, +1);

    t = initial.t + opts.dt * static_cast<double>(step + 1);
    const bool last = (step + 1 == nsteps);
    if (last || ((step + 1) % opts.stride == 0)) {
      traj.times.push_back(t);
      traj.psi.push_back(psi);
    }
  }
  return traj;
}

FieldPair hydro_decompose(const WaveField& w) {
  const Grid1D& grid = w.grid;
  std::vector<double> R(grid.n), Theta(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double amp = std::abs(w.psi[i]);
    if (amp < kAmplitudeFloor)
      throw Error("phase singularity: Madelung map undefined");
    R[i] = amp * amp;
  }
  // Cumulative unwrapping anchored at the left domain edge.
  Theta[0] = std::arg(w.psi[0]);
  for (std::size_t i = 1; i < grid.n; ++i) {
    const double jump = std::arg(w.psi[i] / w.psi[i - 1]);
    Theta[i] = Theta[i - 1] + jump;
  }
  return FieldPair(Field1D(grid, R), Field1D(grid, Theta), w.t);
}

SchrodDecResiduals effective_potential_check(
    const std::vector<FieldPair>& slices, double dt) {
  if (slices.size() < 5) throw Error("insufficient trajectory resolution");
  SchrodDecResiduals out;
  auto ddt = [&](auto pick, std::size_t i) {
    return (1.0 / (12.0 * dt)) *
           (-1.0 * pick(i + 2) + 8.0 * pick(i + 1) - 8.0 * pick(i - 1) +
            pick(i - 2));
  };
  for (std::size_t i = 2; i + 2 < slices.size(); ++i) {
    const FieldPair& s = slices[i];
    Field1D theta_x = derivative(s.Theta, 1);
    Field1D Rx = derivative(s.R, 1);
    Field1D Rxx = derivative(s.R, 2);
    Field1D dR_dt = ddt([&](std::size_t k) { return slices[k].R; }, i);
    Field1D dTheta_dt = ddt([&](std::size_t k) { return slices[k].Theta; }, i);

    Field1D cont = dR_dt + derivative(s.R * theta_x, 1);
    const Grid1D& g = s.R.grid();
    std::vector<double> phase(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
      const double grad = Rx[j] / s.R[j];
      phase[j] = dTheta_dt[j] + 0.5 * theta_x[j] * theta_x[j] +
                 0.125 * grad * grad - 0.25 * Rxx[j] / s.R[j];
    }
    out.continuity = std::max(out.continuity, cont.max_abs());
    out.phase = std::max(out.phase, Field1D(g, phase).max_abs());
  }
  return out;
}

JevickiReport jevicki_check(const FieldPair& state, const Field1D& theta_t) {
  const Grid1D& grid = state.R.grid();
  Field1D theta_x = derivative(state.Theta, 1);
  Field1D Rx = derivative(state.R, 1);
  Field1D Rt = -1.0 * derivative(state.R * theta_x, 1);  // continuity

  JevickiReport report;
  const int ns = 64;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double R = state.R[i];
    if (R <= 0.0) continue;  // amplitude zero: checks (b),(c) undefined
    const double Th = state.Theta[i];
    const double sq = std::sqrt(R);

    // (a) theta on the section s = -Theta.
    report.check_a =
        std::max(report.check_a, std::abs(sq * std::sin(Th + (-Th))));
    // (b) rho d_s theta on the section: sqrt(R) * sqrt(R) cos(0) = R.
    report.check_b =
        std::max(report.check_b, std::abs(sq * (sq * std::cos(0.0)) - R));

    // (c) s-average of the scalar Lagrange density for
    // psi = sqrt(2R) cos(Theta + s) over one vertical period.
    const double amp = std::sqrt(2.0 * R);
    const double damp_dx = (std::sqrt(2.0) * 0.5 / sq) * Rx[i];
    const double damp_dt = (std::sqrt(2.0) * 0.5 / sq) * Rt[i];
    double average = 0.0;
    for (int k = 0; k < ns; ++k) {
      const double s = 2.0 * M_PI * k / ns;
      const double c = std::cos(Th + s), sn = std::sin(Th + s);
      const double psi_x = damp_dx * c - amp * theta_x[i] * sn;
      const double psi_t = damp_dt * c - amp * theta_t[i] * sn;
      const double psi_s = -amp * sn;
      average += 0.5 * (psi_x * psi_x + 2.0 * psi_t * psi_s);
    }
    average /= ns;
    const double reduced = R * theta_t[i] + 0.5 * R * theta_x[i] * theta_x[i] +
                           0.125 * Rx[i] * Rx[i] / R;
    report.check_c = std::max(report.check_c, std::abs(average - reduced));
  }
  return report;
}

}  // namespace nls
}  // namespace cfluid
