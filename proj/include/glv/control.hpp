#pragma once

#include <array>
#include <string>
#include <vector>

#include "glv/core.hpp"
#include "glv/integrator.hpp"

namespace glv {

/// Diagonal linear feedback gains, one per species.
struct FeedbackGains {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;

  friend bool operator==(const FeedbackGains&, const FeedbackGains&) = default;
};

/// Largest |f(target)| accepted for a feedback target.
inline constexpr double kEquilibriumTolerance = 1e-9;

/// Throws NotAnEquilibriumError if any component of the uncontrolled linear
/// field at `target` exceeds kEquilibriumTolerance in magnitude.
void require_equilibrium(const SystemParams& params, const State3& target);

/// Uncontrolled linear field plus u = -gains * (x - target), componentwise.
[[nodiscard]] State3 controlled_field(const SystemParams& params, const FeedbackGains& gains,
                                      const State3& target, const State3& x);

/// Analytic Jacobian of controlled_field: J(x) - diag(gains).
[[nodiscard]] Matrix3 controlled_jacobian(const SystemParams& params, const FeedbackGains& gains,
                                          const State3& x);

/// Integrator adapter with the target already checked.
class FeedbackController {
public:
  FeedbackController(const SystemParams& params, const FeedbackGains& gains, const State3& target);

  void operator()(std::span<const double> x, std::span<double> dxdt) const;

  [[nodiscard]] const State3& target() const noexcept { return target_; }

private:
  SystemParams params_;
  FeedbackGains gains_;
  State3 target_;
};

struct GainInequality {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  [[nodiscard]] double margin() const noexcept { return lhs - rhs; }
  [[nodiscard]] bool holds() const noexcept { return lhs > rhs; }
};

/// Constants of the sufficient stability conditions at X1* = (1, 1 + r, 0):
///   mu1 > a
///   mu1 mu2 > b + a mu2
///   mu1 mu2 (mu3 + c) > mu2 (a mu3 + k) + b (mu3 + c)
struct GainConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double k = 0.0;
};

/// Printed constants for (p, q, r) = (2.9851, 3, 2).
inline constexpr GainConstants kReferenceGainConstants{2.0, 1.0, 0.0149, 2.2528};

/// Constants recomputed from the Jacobian at X1*: a = r, b = r^2/4,
/// c = q - p, k = r c + p^2/4. For the reference set this gives k = 2.257481
/// rather than the printed 2.2528.
[[nodiscard]] GainConstants derived_gain_constants(const SystemParams& params) noexcept;

struct GainReport {
  std::array<GainInequality, 3> inequalities;
  GainConstants constants;
  bool reference_constants = false;  // printed constants used (reference params)

  [[nodiscard]] bool valid() const noexcept;
  /// 1-based index of the first failing inequality, 0 if all hold.
  [[nodiscard]] int first_failure() const noexcept;
};

/// Evaluates the three gain inequalities. The reference parameter set uses
/// the printed constants, anything else the derived ones.
[[nodiscard]] GainReport validate_gains(const SystemParams& params, const FeedbackGains& gains);

/// Same inequalities with explicit constants.
[[nodiscard]] GainReport evaluate_gain_inequalities(const GainConstants& constants,
                                                    const FeedbackGains& gains);

struct StabilizationReport {
  Trajectory trajectory;
  std::vector<double> error_norms;  // |x - target| per recorded sample
  double final_error = 0.0;
  double time_below_tolerance = -1.0;  // first recorded time with error < tol, -1 if never
  bool converged = false;              // final_error < tolerance
  GainReport gains;
  std::vector<std::string> warnings;
  /// 0.5 |e|^2 never increases by more than `monotone_slack` between
  /// consecutive recorded samples over the second half of the run.
  bool monotone_final_half = false;
};

struct StabilizationOptions {
  double tolerance = 1e-6;
  double monotone_slack = 0.5e-24;  // 0.5 * (1e-12)^2, a roundoff floor
};

/// Integrates the controlled system from x0. Gains failing validate_gains
/// produce a warning, not an error.
[[nodiscard]] StabilizationReport stabilize_experiment(const SystemParams& params,
                                                       const FeedbackGains& gains,
                                                       const State3& target, const State3& x0,
                                                       const IntegrationConfig& config,
                                                       const StabilizationOptions& options = {});

}  // namespace glv
