#pragma once

#include <cmath>
#include <functional>
#include <memory>

#include "cfluid/fields.hpp"

namespace cfluid {

/// Fields (R, Theta) on space-time with first derivatives of the phase,
/// queryable at arbitrary points.  Implementations: closed-form solutions
/// (exact partials) and sampled trajectories (interpolated partials).
class FieldSource {
 public:
  virtual ~FieldSource() = default;
  virtual double R(double x, double t) const = 0;
  virtual double Theta(double x, double t) const = 0;
  virtual double Theta_x(double x, double t) const = 0;
  virtual double Theta_t(double x, double t) const = 0;

  FieldPair slice(const Grid1D& grid, double t) const;
};

/// Plane wave Theta = beta x - beta^2 t / 2 with uniform density; an exact
/// free solution.
class PlaneWaveSource final : public FieldSource {
 public:
  PlaneWaveSource(double beta, double R0) : beta_(beta), R0_(R0) {}
  double R(double, double) const override { return R0_; }
  double Theta(double x, double t) const override {
    return beta_ * x - 0.5 * beta_ * beta_ * t;
  }
  double Theta_x(double, double) const override { return beta_; }
  double Theta_t(double, double) const override {
    return -0.5 * beta_ * beta_;
  }

 private:
  double beta_, R0_;
};

/// Self-similar free solution Theta = x^2 / (2 (t - t0)),
/// R = f(x/(t-t0)) / (t - t0) with a Gaussian profile f; valid for t > t0.
class SelfSimilarSource final : public FieldSource {
 public:
  SelfSimilarSource(double t0, double amplitude, double width)
      : t0_(t0), amp_(amplitude), width_(width) {}
  double R(double x, double t) const override {
    const double tau = t - t0_;
    const double u = x / (tau * width_);
    return amp_ * std::exp(-0.5 * u * u) / tau;
  }
  double Theta(double x, double t) const override {
    return 0.5 * x * x / (t - t0_);
  }
  double Theta_x(double x, double t) const override { return x / (t - t0_); }
  double Theta_t(double x, double t) const override {
    const double tau = t - t0_;
    return -0.5 * x * x / (tau * tau);
  }

 private:
  double t0_, amp_, width_;
};

/// Analytic fields given as closures (exact partials supplied by caller).
class AnalyticSource final : public FieldSource {
 public:
  using Fn = std::function<double(double, double)>;
  AnalyticSource(Fn R, Fn Theta, Fn Theta_x, Fn Theta_t)
      : R_(std::move(R)),
        Theta_(std::move(Theta)),
        Theta_x_(std::move(Theta_x)),
        Theta_t_(std::move(Theta_t)) {}
  double R(double x, double t) const override { return R_(x, t); }
  double Theta(double x, double t) const override { return Theta_(x, t); }
  double Theta_x(double x, double t) const override { return Theta_x_(x, t); }
  double Theta_t(double x, double t) const override { return Theta_t_(x, t); }

 private:
  Fn R_, Theta_, Theta_x_, Theta_t_;
};

/// Interpolating view of a stored trajectory.
class SampledSource final : public FieldSource {
 public:
  explicit SampledSource(const FieldMap2D& map) : map_(&map) {}
  double R(double x, double t) const override { return map_->sample(x, t).first; }
  double Theta(double x, double t) const override {
    return map_->sample(x, t).second;
  }
  double Theta_x(double x, double t) const override {
    return map_->sample_theta_dx(x, t);
  }
  double Theta_t(double x, double t) const override {
    return map_->sample_theta_dt(x, t);
  }

 private:
  const FieldMap2D* map_;
};

}  // namespace cfluid
