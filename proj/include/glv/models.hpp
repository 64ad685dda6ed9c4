#pragma once

#include <span>

#include "glv/core.hpp"
#include "glv/integrator.hpp"

namespace glv {

/// Right-hand side of the three-species food chain.
///
/// Linear:     x1' = x1 (1 - x2 + r x1 - p x3 x1)
///             x2' = x2 (-1 + x1)
///             x3' = x3 (-q + p x1^2)
/// HollingII:  prey/middle-predator coupling x1 x2 -> x1 x2 / (x1 + d)
/// HollingIII: prey/top-predator coupling p x1^2 x3 -> p x1^2 x3 / (x1^2 + d)
///
/// Negative components are accepted. Throws DomainError when a Holling
/// denominator is exactly zero.
[[nodiscard]] State3 vector_field(ModelKind kind, const SystemParams& params,
                                  const State3& x);

/// Analytic Jacobian of vector_field.
[[nodiscard]] Matrix3 jacobian(ModelKind kind, const SystemParams& params,
                               const State3& x);

/// Divergence of the linear field:
/// -q - x2 + (2r + 1 + p x1 - 2p x3) x1, identical to trace(jacobian).
[[nodiscard]] double divergence(const SystemParams& params, const State3& x) noexcept;

/// Pointwise volume-contraction test, (2r + 1 + p x1 - 2p x3) x1 < q + x2.
[[nodiscard]] bool is_dissipative_at(const SystemParams& params, const State3& x) noexcept;

/// Integrator adapter over 3-component spans.
struct ModelField {
  ModelKind kind = ModelKind::Linear;
  SystemParams params;

  void operator()(std::span<const double> x, std::span<double> dxdt) const {
    const State3 v = vector_field(kind, params, State3::from(x.data()));
    dxdt[0] = v.x1;
    dxdt[1] = v.x2;
    dxdt[2] = v.x3;
  }
};

/// Validates params and integrates the model, tagging the trajectory with the
/// model id and (p, q, r, d).
[[nodiscard]] Trajectory simulate(ModelKind kind, const SystemParams& params, const State3& x0,
                                  const IntegrationConfig& config);

}  // namespace glv
