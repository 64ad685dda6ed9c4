#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glv/core.hpp"
#include "glv/integrator.hpp"
#include "glv/lyapunov.hpp"

namespace glv {

/// Drive (x1d, x2d, x3d) and response (x2r, x3r). The response receives the
/// drive prey x1d in place of its own.
struct CoupledState {
  double x1d = 0.0;
  double x2d = 0.0;
  double x3d = 0.0;
  double x2r = 0.0;
  double x3r = 0.0;

  [[nodiscard]] constexpr std::array<double, 5> to_array() const noexcept {
    return {x1d, x2d, x3d, x2r, x3r};
  }
  [[nodiscard]] static constexpr CoupledState from(const double* v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
  [[nodiscard]] constexpr State3 drive() const noexcept { return {x1d, x2d, x3d}; }

  friend bool operator==(const CoupledState&, const CoupledState&) = default;
};

struct SyncGains {
  double mu1 = 0.000024;
  double mu2 = 1.345;

  /// Throws ConfigError unless both gains are positive and finite.
  void validate() const;
};

/// Coupled state plus the estimates P of p and Q of q.
struct AdaptiveState {
  CoupledState s;
  double P = 3.9;
  double Q = 4.0;

  [[nodiscard]] constexpr std::array<double, 7> to_array() const noexcept {
    return {s.x1d, s.x2d, s.x3d, s.x2r, s.x3r, P, Q};
  }
  [[nodiscard]] static constexpr AdaptiveState from(const double* v) noexcept {
    return {CoupledState::from(v), v[5], v[6]};
  }
};

struct SyncErrors {
  double e2 = 0.0;
  double e3 = 0.0;
  double norm = 0.0;
};

[[nodiscard]] SyncErrors sync_errors(const CoupledState& s) noexcept;

// -----------------------------------------------------------------------------
// Active control
// -----------------------------------------------------------------------------

/// Drive: the linear model. Response:
///   x2r' = x2r (-1 + x1d) - mu1 (x2r - x2d)
///   x3r' = x3r (-q + p x1d^2) - mu2 (x3r - x3d)
/// so that e2' = (-1 - mu1 + x1d) e2 and e3' = (-q - mu2 + p x1d^2) e3.
[[nodiscard]] CoupledState active_coupled_field(const SystemParams& params, const SyncGains& gains,
                                                const CoupledState& s);

/// Row-major 5x5 Jacobian of active_coupled_field.
[[nodiscard]] std::array<double, 25> active_coupled_jacobian(const SystemParams& params,
                                                             const SyncGains& gains,
                                                             const CoupledState& s) noexcept;

/// Integrator adapter for the 5-D active system.
struct ActiveField {
  SystemParams params;
  SyncGains gains;
  void operator()(std::span<const double> x, std::span<double> dxdt) const;
};

struct SyncConditionReport {
  bool holds = false;
  double margin1 = 0.0;  // min over the orbit of mu1 + 1 - x1d
  double margin2 = 0.0;  // min over the orbit of mu2 + q - p x1d^2
  double max_x1d = 0.0;
};

/// Checks mu1 + 1 > x1d and mu2 + q > p x1d^2 at every recorded state of a
/// drive trajectory (column 0 is x1d).
[[nodiscard]] SyncConditionReport sync_condition_check(const SystemParams& params,
                                                       const SyncGains& gains,
                                                       const Trajectory& drive);

struct ConditionalSpectrum {
  /// Benettin spectrum of the full 5-D coupled system. It contains the drive
  /// exponents as well as the two transverse ones.
  LyapunovSpectrum full;
  /// Time averages of (-1 - mu1 + x1d) and (-q - mu2 + p x1d^2) over the
  /// measured window (trapezoid rule).
  std::array<double, 2> transverse{};
  /// Time averages of the real parts of the five eigenvalues of the 5x5
  /// Jacobian along the drive orbit, sorted descending. A local-linearization
  /// estimate, not a Lyapunov spectrum.
  std::array<double, 5> eigenvalue_average{};
};

[[nodiscard]] ConditionalSpectrum conditional_lyapunov_spectrum(const SystemParams& params,
                                                                const SyncGains& gains,
                                                                const CoupledState& x0,
                                                                const LyapunovConfig& config);

struct ActiveSyncReport {
  Trajectory trajectory;  // 5-D
  std::vector<SyncErrors> errors;
  SyncConditionReport condition;  // over the recorded drive samples
  /// |e_i(t)| <= |e_i(t0)| exp(-m_i (t - t0)) (1 + envelope_slack) + envelope_floor
  /// on every recorded sample. Only meaningful when the condition holds. The
  /// slack covers RK4 truncation when the margin is attained along the orbit.
  bool envelope_holds = false;
  double envelope_slack = 1e-4;
  double envelope_floor = 1e-13;
  double final_e2 = 0.0;
  double final_e3 = 0.0;
  double time_below_tolerance = -1.0;  // first time with max(|e2|, |e3|) < tol
  bool converged = false;
  /// -log(|e2/x2d|(T) / |e2/x2d|(t0)) / (T - t0). Equals mu1 exactly in
  /// exact arithmetic, since e2 / x2d = const * exp(-mu1 t).
  double e2_relative_rate = 0.0;
  std::vector<std::string> warnings;
};

[[nodiscard]] ActiveSyncReport active_experiment(const SystemParams& params, const SyncGains& gains,
                                                 const CoupledState& s0,
                                                 const IntegrationConfig& config,
                                                 double tolerance = 1e-6);

// -----------------------------------------------------------------------------
// Adaptive control
// -----------------------------------------------------------------------------

/// Estimate dynamics. Lyapunov: P' = x1d^2 e3^2, Q' = -e3^2, which cancels
/// the parameter-error terms in dL/dt. LinearInError: P' = x1d^2 e3, Q' = -e3^2.
enum class UpdateLaw { Lyapunov, LinearInError };

[[nodiscard]] std::string_view to_string(UpdateLaw law) noexcept;
/// Accepts "lyapunov" and "linear-in-error".
[[nodiscard]] UpdateLaw parse_update_law(std::string_view name);

/// 7-D field. The controller only sees the states and (P, Q):
///   u1 = e2 - x1d e2 - mu1 e2
///   u2 = Q e3 - P x1d^2 e3 - mu2 e3
/// The true (p, q) enter only the drive and response physics.
[[nodiscard]] AdaptiveState adaptive_coupled_field(const SystemParams& params,
                                                   const SyncGains& gains, UpdateLaw law,
                                                   const AdaptiveState& s);

struct AdaptiveField {
  SystemParams params;
  SyncGains gains;
  UpdateLaw law = UpdateLaw::Lyapunov;
  void operator()(std::span<const double> x, std::span<double> dxdt) const;
};

/// L = 0.5 (e2^2 + e3^2 + (p - P)^2 + (q - Q)^2). Needs the true parameters,
/// so it is a diagnostic only.
[[nodiscard]] double adaptive_lyapunov_function(const SystemParams& params,
                                                const AdaptiveState& s) noexcept;

struct AdaptiveSyncReport {
  Trajectory trajectory;  // 7-D
  std::vector<SyncErrors> errors;
  std::vector<double> lyapunov;  // L per recorded sample
  double initial_lyapunov = 0.0;
  /// Largest single-step increase of L over every integration step.
  double max_lyapunov_increase = 0.0;
  /// Largest L seen over every integration step.
  double max_lyapunov = 0.0;
  /// max L <= 10 * L(0).
  bool bounded = false;
  /// First time at which max(|e2|, |e3|) < freeze_threshold, -1 if never.
  double freeze_time = -1.0;
  double freeze_threshold = 1e-8;
  /// Largest |dP|/dt and |dQ|/dt (finite differences per step) after freeze_time.
  double max_estimate_rate_after_freeze = 0.0;
  double final_e2 = 0.0;
  double final_e3 = 0.0;
  double final_P = 0.0;
  double final_Q = 0.0;
  bool converged = false;  // max(|e2|, |e3|) < tolerance at t_end
};

[[nodiscard]] AdaptiveSyncReport adaptive_experiment(const SystemParams& params,
                                                     const SyncGains& gains, UpdateLaw law,
                                                     const AdaptiveState& s0,
                                                     const IntegrationConfig& config,
                                                     double tolerance = 1e-4);

/// Default response start for active runs driven from kReferenceInitial.
inline constexpr CoupledState kActiveReferenceInitial{1.0023, 1.0589, 0.6503, 1.0, 1.414};

/// Initial data of the adaptive demonstration run.
inline constexpr AdaptiveState kAdaptiveReferenceInitial{{4.0, 1.4, 1.41, 1.0, 1.414}, 3.9, 4.0};
inline constexpr SyncGains kAdaptiveReferenceGains{0.0038, 2.0};

}  // namespace glv
