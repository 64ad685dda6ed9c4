#include "glv/models.hpp"

#include <cmath>
#include <string>

namespace glv {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::HollingII: return "ht2";
    case ModelKind::HollingIII: return "ht3";
  }
  return "linear";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linear") return ModelKind::Linear;
  if (name == "ht2") return ModelKind::HollingII;
  if (name == "ht3") return ModelKind::HollingIII;
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected linear, ht2 or ht3)");
}

void SystemParams::validate(ModelKind kind) const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(p) || !positive(q) || !positive(r)) {
    throw ConfigError("parameters p, q, r must be positive and finite");
  }
  if (kind != ModelKind::Linear && !positive(d)) {
    throw ConfigError("Holling variants need a positive half-saturation d");
  }
  if (!std::isfinite(d) || d < 0.0) {
    throw ConfigError("half-saturation d must be finite and nonnegative");
  }
}

bool is_finite(const State3& x) noexcept {
  return std::isfinite(x.x1) && std::isfinite(x.x2) && std::isfinite(x.x3);
}

double trace(const Matrix3& m) noexcept { return m[0][0] + m[1][1] + m[2][2]; }

double determinant(const Matrix3& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace {

double checked_denominator(double v, const char* what) {
  if (v == 0.0) {
    throw DomainError(std::string("zero denominator in ") + what);
  }
  return v;
}

}  // namespace

State3 vector_field(ModelKind kind, const SystemParams& params, const State3& x) {
  const auto [p, q, r, d] = params;
  const double x1 = x.x1, x2 = x.x2, x3 = x.x3;
  switch (kind) {
    case ModelKind::Linear:
      return {x1 * (1.0 - x2 + r * x1 - p * x3 * x1),
              x2 * (-1.0 + x1),
              x3 * (-q + p * x1 * x1)};
    case ModelKind::HollingII: {
      const double den = checked_denominator(x1 + d, "x1 + d");
      const double predation = x1 * x2 / den;
      return {x1 - predation + r * x1 * x1 - p * x1 * x1 * x3,
              -x2 + predation,
              -q * x3 + p * x3 * x1 * x1};
    }
    case ModelKind::HollingIII: {
      const double den = checked_denominator(x1 * x1 + d, "x1^2 + d");
      const double predation = p * x1 * x1 * x3 / den;
      return {x1 - x1 * x2 + r * x1 * x1 - predation,
              -x2 + x1 * x2,
              -q * x3 + predation};
    }
  }
  return {};
}

Matrix3 jacobian(ModelKind kind, const SystemParams& params, const State3& x) {
  const auto [p, q, r, d] = params;
  const double x1 = x.x1, x2 = x.x2, x3 = x.x3;
  switch (kind) {
    case ModelKind::Linear:
      return {{{1.0 - x2 + 2.0 * r * x1 - 2.0 * p * x1 * x3, -x1, -p * x1 * x1},
               {x2, -1.0 + x1, 0.0},
               {2.0 * p * x1 * x3, 0.0, -q + p * x1 * x1}}};
    case ModelKind::HollingII: {
      const double den = checked_denominator(x1 + d, "x1 + d");
      const double sat = x1 / den;         // x1 / (x1 + d)
      const double dsat = d / (den * den); // d/dx1 of sat
      return {{{1.0 - x2 * dsat + 2.0 * r * x1 - 2.0 * p * x1 * x3, -sat, -p * x1 * x1},
               {x2 * dsat, -1.0 + sat, 0.0},
               {2.0 * p * x1 * x3, 0.0, -q + p * x1 * x1}}};
    }
    case ModelKind::HollingIII: {
      const double den = checked_denominator(x1 * x1 + d, "x1^2 + d");
      const double sat = x1 * x1 / den;
      const double dsat = 2.0 * x1 * d / (den * den);
      return {{{1.0 - x2 + 2.0 * r * x1 - p * x3 * dsat, -x1, -p * sat},
               {x2, -1.0 + x1, 0.0},
               {p * x3 * dsat, 0.0, -q + p * sat}}};
    }
  }
  return {};
}

double divergence(const SystemParams& params, const State3& x) noexcept {
  const auto [p, q, r, d] = params;
  (void)d;
  return -q - x.x2 + (2.0 * r + 1.0 + p * x.x1 - 2.0 * p * x.x3) * x.x1;
}

bool is_dissipative_at(const SystemParams& params, const State3& x) noexcept {
  const auto [p, q, r, d] = params;
  (void)d;
  return (2.0 * r + 1.0 + p * x.x1 - 2.0 * p * x.x3) * x.x1 < q + x.x2;
}

Trajectory simulate(ModelKind kind, const SystemParams& params, const State3& x0,
                    const IntegrationConfig& config) {
  params.validate(kind);
  const auto start = x0.to_array();
  Trajectory traj = integrate(ModelField{kind, params}, start, config);
  traj.model = std::string(to_string(kind));
  traj.params = {params.p, params.q, params.r, params.d};
  return traj;
}

}  // namespace glv
