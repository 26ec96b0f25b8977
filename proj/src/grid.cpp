#include "cfluid/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace cfluid {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW plans are cached per grid size.  Plan creation is not thread-safe,
// execution on caller-owned buffers is.
struct PlanSet {
  fftw_plan forward = nullptr;   // r2c, n real -> n/2+1 complex
  fftw_plan backward = nullptr;  // c2r, unnormalized
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanSet get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    PlanSet set;
    set.forward = fftw_plan_dft_r2c_1d(
        static_cast<int>(n), real.data(),
        reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
    set.backward = fftw_plan_dft_c2r_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(spec.data()),
        real.data(), FFTW_ESTIMATE);
    plans_[n] = set;
    return set;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanSet> plans_;
};

std::vector<std::complex<double>> forward_fft(const Field1D& f) {
  const std::size_t n = f.size();
  PlanSet plans = PlanCache::instance().get(n);
  std::vector<double> real(f.values());
  std::vector<std::complex<double>> spec(n / 2 + 1);
  fftw_execute_dft_r2c(plans.forward, real.data(),
                       reinterpret_cast<fftw_complex*>(spec.data()));
  return spec;
}

Field1D backward_fft(const Grid1D& grid, std::vector<std::complex<double>> spec,
                     const char* context) {
  const std::size_t n = grid.n;
  PlanSet plans = PlanCache::instance().get(n);
  std::vector<double> real(n);
  fftw_execute_dft_c2r(plans.backward,
                       reinterpret_cast<fftw_complex*>(spec.data()),
                       real.data());
  const double norm = 1.0 / static_cast<double>(n);
  for (double& v : real) v *= norm;
  Field1D out(grid, std::move(real));
  out.check_finite(context);
  return out;
}

}  // namespace

Grid1D::Grid1D(std::size_t n_points, double domain_length)
    : n(n_points), length(domain_length) {
  if (!is_power_of_two(n) || n < 16)
    throw Error("grid size must be a power of two and at least 16");
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error("grid length must be positive and finite");
}

Field1D::Field1D(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n)
    throw Error("field length does not match grid");
  check_finite();
}

Field1D Field1D::zeros(const Grid1D& grid) {
  return Field1D(grid, std::vector<double>(grid.n, 0.0));
}

Field1D Field1D::constant(const Grid1D& grid, double value) {
  return Field1D(grid, std::vector<double>(grid.n, value));
}

Field1D Field1D::from_function(const Grid1D& grid,
                               const std::function<double(double)>& f) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
  return Field1D(grid, std::move(v));
}

double Field1D::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Field1D::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Field1D::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void Field1D::check_finite(const char* context) const {
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(std::string("non-finite field: ") + context);
}

namespace {
Field1D binary_op(const Field1D& a, const Field1D& b, char op) {
  if (!(a.grid() == b.grid())) throw Error("grid mismatch in field arithmetic");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case '+': v[i] = a[i] + b[i]; break;
      case '-': v[i] = a[i] - b[i]; break;
      default: v[i] = a[i] * b[i]; break;
    }
  }
  return Field1D(a.grid(), std::move(v));
}
}  // namespace

Field1D operator+(const Field1D& a, const Field1D& b) { return binary_op(a, b, '+'); }
Field1D operator-(const Field1D& a, const Field1D& b) { return binary_op(a, b, '-'); }
Field1D operator*(const Field1D& a, const Field1D& b) { return binary_op(a, b, '*'); }

Field1D operator*(double a, const Field1D& b) {
  std::vector<double> v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v[i] = a * b[i];
  return Field1D(b.grid(), std::move(v));
}

Field1D operator*(const Field1D& a, double b) { return b * a; }

Field1D operator-(const Field1D& a) { return -1.0 * a; }

Field1D coordinate_field(const Grid1D& grid) {
  return Field1D::from_function(grid, [](double x) { return x; });
}

double smooth_window(double x, double flat, double edge) {
  const double ax = std::abs(x);
  if (ax <= flat) return 1.0;
  if (ax >= edge) return 0.0;
  auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double u = (edge - ax) / (edge - flat);
  return f(u) / (f(u) + f(1.0 - u));
}

Field1D charge_coordinate(const Grid1D& grid) {
  const double half = 0.5 * grid.length;
  return Field1D::from_function(grid, [&](double x) {
    return x * smooth_window(x, 0.7 * half, 0.95 * half);
  });
}

Field1D derivative(const Field1D& f, int order) {
  if (order != 1 && order != 2) throw Error("derivative order must be 1 or 2");
  f.check_finite("derivative input");
  const std::size_t n = f.grid().n;
  const double k0 = 2.0 * M_PI / f.grid().length;
  auto spec = forward_fft(f);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = k0 * static_cast<double>(j);
    if (order == 1) {
      spec[j] *= std::complex<double>(0.0, k);
    } else {
      spec[j] *= -k * k;
    }
  }
  // The Nyquist mode has no well-defined odd derivative on the real grid.
  if (order == 1) spec[n / 2] = 0.0;
  return backward_fft(f.grid(), std::move(spec), "derivative output");
}

double integrate(const Field1D& f) {
  f.check_finite("integrate input");
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().spacing();
}

Field1D dealias(const Field1D& f) {
  const std::size_t n = f.grid().n;
  auto spec = forward_fft(f);
  const std::size_t cut = n / 3;
  for (std::size_t j = 0; j < spec.size(); ++j)
    if (j > cut) spec[j] = 0.0;
  return backward_fft(f.grid(), std::move(spec), "dealias output");
}

double spectral_tail_fraction(const Field1D& f) {
  auto spec = forward_fft(f);
  const std::size_t cut = f.grid().n / 3;
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 1; j < spec.size(); ++j) {
    const double e = std::norm(spec[j]);
    total += e;
    if (j > cut) tail += e;
  }
  if (total <= 0.0) return 0.0;
  return tail / total;
}

}  // namespace cfluid
