#include "glv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glv/models.hpp"

namespace glv {

std::array<State3, 5> equilibria(const SystemParams& params) {
  params.validate();
  const auto [p, q, r, d] = params;
  (void)d;
  const double s = std::sqrt(q / p);
  const double spq = std::sqrt(p * q);
  return {State3{0.0, 0.0, 0.0},
          State3{1.0, 1.0 + r, 0.0},
          State3{s, 0.0, (1.0 + r * s) / spq},
          State3{-1.0 / r, 0.0, 0.0},
          State3{-s, 0.0, (-1.0 + r * s) / spq}};
}

bool in_closed_positive_octant(const State3& x) noexcept {
  return x.x1 >= 0.0 && x.x2 >= 0.0 && x.x3 >= 0.0;
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::StableNode: return "stable-node";
    case Stability::StableFocusNode: return "stable-focus-node";
    case Stability::Saddle: return "saddle";
    case Stability::UnstableFocus: return "unstable-focus";
    case Stability::UnstableNode: return "unstable-node";
    case Stability::Marginal: return "marginal";
  }
  return "marginal";
}

Stability classify_eigenvalues(const std::array<std::complex<double>, 3>& eig) noexcept {
  bool any_complex = false, all_negative = true, all_positive = true;
  for (const auto& z : eig) {
    if (std::abs(z.real()) < kMarginalTolerance) return Stability::Marginal;
    if (z.imag() != 0.0) any_complex = true;
    if (z.real() > 0.0) all_negative = false;
    if (z.real() < 0.0) all_positive = false;
  }
  if (all_negative) return any_complex ? Stability::StableFocusNode : Stability::StableNode;
  if (all_positive) return any_complex ? Stability::UnstableFocus : Stability::UnstableNode;
  return Stability::Saddle;
}

StabilityReport classify(const SystemParams& params, const State3& point, ModelKind kind) {
  StabilityReport report;
  report.point = point;
  report.char_poly = characteristic_polynomial(jacobian(kind, params, point));
  report.eigenvalues = cubic_roots(report.char_poly);
  report.classification = classify_eigenvalues(report.eigenvalues);
  return report;
}

TangentSystem tangent_system(ModelKind kind, const SystemParams& params) {
  TangentSystem sys;
  sys.dim = 3;
  sys.field = [kind, params](std::span<const double> x, std::span<double> dx) {
    const State3 v = vector_field(kind, params, State3::from(x.data()));
    dx[0] = v.x1;
    dx[1] = v.x2;
    dx[2] = v.x3;
  };
  sys.jacobian = [kind, params](std::span<const double> x, std::span<double> jac) {
    const Matrix3 m = jacobian(kind, params, State3::from(x.data()));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) jac[i * 3 + j] = m[i][j];
    }
  };
  return sys;
}

LyapunovSpectrum lyapunov_spectrum(ModelKind kind, const SystemParams& params, const State3& x0,
                                   const LyapunovConfig& config,
                                   std::span<const double> initial_frame) {
  params.validate(kind);
  const auto start = x0.to_array();
  return benettin_spectrum(tangent_system(kind, params), start, config, initial_frame);
}

State3 fast_left_eigenvector(const SystemParams& params, const State3& x, double lambda) noexcept {
  const double b = -1.0 + x.x1;
  const double c = -params.q + params.p * x.x1 * x.x1;
  return {(b - lambda) * (c - lambda), x.x1 * (c - lambda),
          params.p * x.x1 * x.x1 * (b - lambda)};
}

SlowManifoldSample slow_manifold_residual(const SystemParams& params, const State3& point) {
  const StabilityReport lin = classify(params, point);
  double fast = std::numeric_limits<double>::infinity();
  for (const auto& z : lin.eigenvalues) {
    if (z.imag() == 0.0 && z.real() < fast) fast = z.real();
  }
  if (!std::isfinite(fast)) {
    throw Error("no real eigenvalue found for the slow-manifold projection");
  }
  const State3 flow = vector_field(ModelKind::Linear, params, point);
  const State3 z = fast_left_eigenvector(params, point, fast);
  return {point, fast, flow.x1 * z.x1 + flow.x2 * z.x2 + flow.x3 * z.x3};
}

double slow_manifold_polynomial(const SystemParams& params, const State3& x, double lambda) noexcept {
  const auto [p, q, r, d] = params;
  (void)d;
  const double x1 = x.x1, x2 = x.x2, x3 = x.x3;
  const double x1_2 = x1 * x1, x1_3 = x1_2 * x1, x1_4 = x1_3 * x1, x1_5 = x1_4 * x1;
  const double quad = x1_2 * (r - p * x3) + x1 * (1.0 - x2);
  const double lin = -p * r * x1_4 + x1_3 * (p * x2 + p * x3 - p - r) +
                     x1_2 * (-p * x3 + q * r + r - 1.0) + x1 * (-q * x2 + q + 1.0);
  const double constant = p * r * x1_5 + x1_4 * (p - p * r) + x1_3 * (-p - q * r) +
                          x1_2 * (q * r - q) + q * x1;
  return (quad * lambda + lin) * lambda + constant;
}

double legacy_slow_manifold_polynomial(const State3& x, double lambda) noexcept {
  const double x1 = x.x1, x2 = x.x2, x3 = x.x3;
  const double x1_2 = x1 * x1, x1_3 = x1_2 * x1, x1_4 = x1_3 * x1, x1_5 = x1_4 * x1;
  const double quad = x1 - x1 * x2 + 2.0 * x1_2 - 2.9851 * x1_2 * x3;
  const double lin = -4.0 * x1 + 7.0 * x1_2 - 4.9851 * x1_3 - 3.0 * x1 * x2 +
                     2.9851 * x1_3 * x2 - 5.97020 * x1_4 - 2.985100 * x1_2 * x3 +
                     2.9851 * x1_3 * x3;
  const double constant = 3.0 * x1 + x1_2 - 8.985100 * x1_3 - 2.9851 * x1_4 + 5.970200 * x1_5 +
                          8.95530 * x1 * x3 - 17.910600 * x1_2 * x3 - 0.044478 * x1_3 * x3 +
                          17.821644 * x1_4 * x3 - 8.91082 * x1_3 * x3;
  return lambda * lambda * quad + lambda * lin + constant;
}

double contraction_constant(const SystemParams& params, double bound_m, double horizon_t) {
  if (!(bound_m > 0.0) || !(horizon_t > 0.0) || !std::isfinite(bound_m) || !std::isfinite(horizon_t)) {
    throw ConfigError("contraction constant needs M > 0 and T > 0");
  }
  const auto [p, q, r, d] = params;
  (void)d;
  const double m = bound_m;
  const double prey = 1.0 + 2.0 * m + 2.0 * r * m + 4.0 * p * m * m;
  const double middle = 1.0 + 2.0 * m;
  const double top = q + 2.0 * p * m * m;
  return horizon_t * std::max({prey, middle, top});
}

}  // namespace glv
