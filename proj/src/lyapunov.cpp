#include "glv/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace glv {

namespace {

constexpr double kTangentUnderflow = 1e-300;
// A column that loses all but this fraction of its length to projection is
// treated as linearly dependent on the earlier ones.
constexpr double kCollapseRatio = 1e-12;

}  // namespace

void LyapunovConfig::validate() const {
  if (!std::isfinite(step) || step <= 0.0) throw ConfigError("lyapunov step must be positive");
  if (!std::isfinite(t_total) || t_total <= 0.0) throw ConfigError("t_total must be positive");
  if (!std::isfinite(transient) || transient < 0.0) throw ConfigError("transient must be nonnegative");
  if (!std::isfinite(renorm_interval) || renorm_interval < step) {
    throw ConfigError("renorm_interval must be at least one step");
  }
  if (renorm_interval > t_total) throw ConfigError("renorm_interval exceeds t_total");
}

std::size_t LyapunovConfig::steps_per_renorm() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(renorm_interval / step)));
}

std::vector<double> LyapunovSpectrum::trailing_spread(double fraction) const {
  std::vector<double> spread(exponents.size(), 0.0);
  if (history.empty()) return spread;
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(history.size())));
  const std::size_t start = history.size() - std::max<std::size_t>(1, count);
  for (std::size_t i = 0; i < spread.size(); ++i) {
    double lo = history[start][i], hi = lo;
    for (std::size_t k = start; k < history.size(); ++k) {
      lo = std::min(lo, history[k][i]);
      hi = std::max(hi, history[k][i]);
    }
    spread[i] = hi - lo;
  }
  return spread;
}

double LyapunovSpectrum::sum() const {
  double s = 0.0;
  for (double e : exponents) s += e;
  return s;
}

void orthonormalize_columns(std::span<double> frame, std::size_t n, std::span<double> norms) {
  auto at = [&](std::size_t row, std::size_t col) -> double& { return frame[row * n + col]; };
  for (std::size_t j = 0; j < n; ++j) {
    double before2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) before2 += at(r, j) * at(r, j);
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += at(r, i) * at(r, j);
      for (std::size_t r = 0; r < n; ++r) at(r, j) -= dot * at(r, i);
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm2 += at(r, j) * at(r, j);
    const double norm = std::sqrt(norm2);
    if (!(norm >= kTangentUnderflow) || !(norm >= kCollapseRatio * std::sqrt(before2))) {
      throw DegenerateQrError("tangent vector collapsed during re-orthonormalization");
    }
    norms[j] = norm;
    for (std::size_t r = 0; r < n; ++r) at(r, j) /= norm;
  }
}

LyapunovSpectrum benettin_spectrum(const TangentSystem& system, std::span<const double> x0,
                                   const LyapunovConfig& config,
                                   std::span<const double> initial_frame) {
  config.validate();
  const std::size_t n = system.dim;
  if (x0.size() != n) throw ConfigError("initial state has the wrong dimension");
  if (!initial_frame.empty() && initial_frame.size() != n * n) {
    throw ConfigError("initial tangent frame must be n x n");
  }

  LyapunovSpectrum out;
  out.config = config;

  std::vector<double> state(x0.begin(), x0.end());
  if (config.transient > 0.0) {
    IntegrationConfig warmup;
    warmup.step = config.step;
    warmup.t_end = config.transient;
    integrate_observed(system.field, std::span<double>(state), warmup,
                       [](std::size_t, double, std::span<const double>) {});
  }

  // Augmented state: x (n) followed by the tangent frame V (n x n, row-major,
  // tangent vectors in columns).
  std::vector<double> aug(n + n * n, 0.0);
  std::copy(state.begin(), state.end(), aug.begin());
  std::span<double> frame(aug.data() + n, n * n);
  if (initial_frame.empty()) {
    for (std::size_t i = 0; i < n; ++i) frame[i * n + i] = 1.0;
  } else {
    std::copy(initial_frame.begin(), initial_frame.end(), frame.begin());
  }
  std::vector<double> norms(n);
  orthonormalize_columns(frame, n, norms);

  std::vector<double> jac(n * n);
  auto augmented = [&](std::span<const double> y, std::span<double> dy) {
    auto x = y.first(n);
    system.field(x, dy.first(n));
    system.jacobian(x, jac);
    const double* v = y.data() + n;
    double* dv = dy.data() + n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += jac[i * n + k] * v[k * n + j];
        dv[i * n + j] = acc;
      }
    }
  };
  auto jac_trace = [&](std::span<const double> x) {
    system.jacobian(x, jac);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += jac[i * n + i];
    return tr;
  };

  const double h = config.step;
  const auto total_steps = static_cast<std::size_t>(std::floor(config.t_total / h + 1e-9));
  const std::size_t renorm_every = config.steps_per_renorm();
  Rk4Workspace ws(aug.size());
  std::vector<double> log_sums(n, 0.0);

  double trace_integral = 0.0;
  double prev_trace = jac_trace(std::span<const double>(aug.data(), n));

  auto renormalize = [&](std::size_t k) {
    orthonormalize_columns(frame, n, norms);
    for (std::size_t i = 0; i < n; ++i) log_sums[i] += std::log(norms[i]);
    const double elapsed = static_cast<double>(k) * h;
    std::vector<double> running(n);
    for (std::size_t i = 0; i < n; ++i) running[i] = log_sums[i] / elapsed;
    out.history_times.push_back(elapsed);
    out.history.push_back(std::move(running));
  };

  for (std::size_t k = 1; k <= total_steps; ++k) {
    ws.advance(augmented, std::span<double>(aug), h);
    const double t = config.transient + static_cast<double>(k) * h;
    check_bounded(std::span<const double>(aug.data(), n), t);
    for (double v : frame) {
      if (!std::isfinite(v)) throw DivergenceError("tangent frame became non-finite", t);
    }
    const double tr = jac_trace(std::span<const double>(aug.data(), n));
    trace_integral += 0.5 * h * (prev_trace + tr);
    prev_trace = tr;
    if (k % renorm_every == 0 || k == total_steps) renormalize(k);
  }

  const double measured = static_cast<double>(total_steps) * h;
  out.exponents.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.exponents[i] = log_sums[i] / measured;
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  out.mean_divergence = trace_integral / measured;
  out.final_state.assign(aug.begin(), aug.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

}  // namespace glv
