#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glv/core.hpp"
#include "glv/integrator.hpp"
#include "glv/lyapunov.hpp"

namespace glv {

/// Serial is the reference path; Parallel distributes independent items over
/// OpenMP threads. Each item is computed by the same sequential code either
/// way, so results are bitwise identical.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). Exceptions thrown by body are rethrown
/// after the loop (the first one by index).
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

struct OrbitSummary {
  State3 initial;
  State3 final_state;
  State3 min;
  State3 max;
  bool diverged = false;
  double divergence_time = -1.0;
  std::string error;  // non-divergence failures (e.g. a domain error)
};

/// Integrates each initial condition to config.t_end and tracks componentwise
/// extrema over the recorded window. Divergence is reported, not thrown.
[[nodiscard]] std::vector<OrbitSummary> summarize_orbits(ModelKind kind, const SystemParams& params,
                                                         std::span<const State3> initial,
                                                         const IntegrationConfig& config,
                                                         Execution exec = Execution::Parallel);

struct LyapunovOutcome {
  std::optional<LyapunovSpectrum> spectrum;
  std::string error;
};

/// One Benettin run per initial condition. `frames`, if non-empty, supplies a
/// row-major 3x3 starting tangent frame per item (same length as `initial`).
[[nodiscard]] std::vector<LyapunovOutcome> lyapunov_ensemble(
    ModelKind kind, const SystemParams& params, std::span<const State3> initial,
    const LyapunovConfig& config, std::span<const std::vector<double>> frames = {},
    Execution exec = Execution::Parallel);

}  // namespace glv
