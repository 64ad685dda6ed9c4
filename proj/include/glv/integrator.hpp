#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "glv/core.hpp"

namespace glv {

/// f(x, dxdt): writes the time derivative of x into dxdt (same length).
using VectorField = std::function<void(std::span<const double>, std::span<double>)>;

/// Components beyond this magnitude are treated as a blow-up.
inline constexpr double kDivergenceThreshold = 1e12;

struct IntegrationConfig {
  double step = 0.005;
  double t_end = 1000.0;
  std::size_t record_every = 1;
  double transient = 0.0;  // time discarded before recording starts

  /// step > 0, t_end > transient >= 0, record_every >= 1.
  void validate() const;

  /// Number of RK4 steps needed to reach t_end.
  [[nodiscard]] std::size_t step_count() const;
  /// Index of the first recorded step (the first step at or after transient).
  [[nodiscard]] std::size_t first_record_step() const;
  [[nodiscard]] bool is_record_step(std::size_t k) const;
};

/// Time-stamped states of uniform dimension, stored row-major.
struct Trajectory {
  std::size_t dim = 0;
  std::vector<double> times;
  std::vector<double> values;

  std::string model;
  std::vector<double> params;
  IntegrationConfig config;

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  [[nodiscard]] bool empty() const noexcept { return times.empty(); }
  [[nodiscard]] std::span<const double> state(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  [[nodiscard]] double at(std::size_t i, std::size_t component) const {
    return values[i * dim + component];
  }
  void push(double t, std::span<const double> x);
};

/// Stage buffers for one RK4 step of a fixed dimension.
class Rk4Workspace {
public:
  explicit Rk4Workspace(std::size_t dim)
      : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  [[nodiscard]] std::size_t dim() const noexcept { return k1_.size(); }

  /// Classical RK4 update of x in place:
  /// x += h/6 (k1 + 2 k2 + 2 k3 + k4).
  template <class Field>
  void advance(Field&& f, std::span<double> x, double h) {
    const std::size_t n = x.size();
    f(std::span<const double>(x), std::span<double>(k1_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
    f(std::span<const double>(tmp_), std::span<double>(k2_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
    f(std::span<const double>(tmp_), std::span<double>(k3_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + h * k3_[i];
    f(std::span<const double>(tmp_), std::span<double>(k4_));
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/// One RK4 step. Throws DivergenceError (time 0) if the result is not finite.
[[nodiscard]] std::vector<double> rk4_step(const VectorField& f,
                                           std::span<const double> x, double h);

/// Throws DivergenceError if any component is non-finite or above the
/// divergence threshold.
void check_bounded(std::span<const double> x, double t);

/// Steps x from t = 0 to config.t_end, calling on_step(k, t, x) for every
/// step index k = 0..step_count() (k = 0 is the initial state). The divergence
/// guard runs after each step.
template <class Field, class Observer>
void integrate_observed(Field&& f, std::span<double> x, const IntegrationConfig& config,
                        Observer&& on_step) {
  config.validate();
  check_bounded(x, 0.0);
  Rk4Workspace ws(x.size());
  const std::size_t n = config.step_count();
  const double h = config.step;
  on_step(std::size_t{0}, 0.0, std::span<const double>(x));
  for (std::size_t k = 1; k <= n; ++k) {
    ws.advance(f, x, h);
    const double t = static_cast<double>(k) * h;
    check_bounded(x, t);
    on_step(k, t, std::span<const double>(x));
  }
}

/// Integrates and records from the first step at or after `transient` to
/// t_end, every `record_every` steps.
template <class Field>
[[nodiscard]] Trajectory integrate(Field&& f, std::span<const double> x0,
                                   const IntegrationConfig& config) {
  Trajectory traj;
  traj.dim = x0.size();
  traj.config = config;
  std::vector<double> x(x0.begin(), x0.end());
  integrate_observed(std::forward<Field>(f), std::span<double>(x), config,
                     [&](std::size_t k, double t, std::span<const double> s) {
                       if (config.is_record_step(k)) traj.push(t, s);
                     });
  return traj;
}

}  // namespace glv
