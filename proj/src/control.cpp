#include "glv/control.hpp"

#include <cmath>
#include <sstream>

#include "glv/models.hpp"

namespace glv {

void require_equilibrium(const SystemParams& params, const State3& target) {
  const State3 f = vector_field(ModelKind::Linear, params, target);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(std::abs(f[i]) <= kEquilibriumTolerance)) {
      std::ostringstream msg;
      msg << "target (" << target.x1 << ", " << target.x2 << ", " << target.x3
          << ") is not an equilibrium: |f_" << (i + 1) << "| = " << std::abs(f[i]);
      throw NotAnEquilibriumError(msg.str());
    }
  }
}

namespace {

State3 feedback_field(const SystemParams& params, const FeedbackGains& g, const State3& target,
                      const State3& x) {
  const State3 f = vector_field(ModelKind::Linear, params, x);
  return {f.x1 - g.mu1 * (x.x1 - target.x1), f.x2 - g.mu2 * (x.x2 - target.x2),
          f.x3 - g.mu3 * (x.x3 - target.x3)};
}

}  // namespace

State3 controlled_field(const SystemParams& params, const FeedbackGains& gains,
                        const State3& target, const State3& x) {
  require_equilibrium(params, target);
  return feedback_field(params, gains, target, x);
}

Matrix3 controlled_jacobian(const SystemParams& params, const FeedbackGains& gains,
                            const State3& x) {
  Matrix3 j = jacobian(ModelKind::Linear, params, x);
  j[0][0] -= gains.mu1;
  j[1][1] -= gains.mu2;
  j[2][2] -= gains.mu3;
  return j;
}

FeedbackController::FeedbackController(const SystemParams& params, const FeedbackGains& gains,
                                       const State3& target)
    : params_(params), gains_(gains), target_(target) {
  params_.validate();
  require_equilibrium(params_, target_);
}

void FeedbackController::operator()(std::span<const double> x, std::span<double> dxdt) const {
  const State3 v = feedback_field(params_, gains_, target_, State3::from(x.data()));
  dxdt[0] = v.x1;
  dxdt[1] = v.x2;
  dxdt[2] = v.x3;
}

GainConstants derived_gain_constants(const SystemParams& params) noexcept {
  const double c = params.q - params.p;
  return {params.r, 0.25 * params.r * params.r, c, params.r * c + 0.25 * params.p * params.p};
}

bool GainReport::valid() const noexcept { return first_failure() == 0; }

int GainReport::first_failure() const noexcept {
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    if (!inequalities[i].holds()) return static_cast<int>(i) + 1;
  }
  return 0;
}

GainReport evaluate_gain_inequalities(const GainConstants& k, const FeedbackGains& g) {
  GainReport report;
  report.constants = k;
  report.inequalities[0] = {"mu1 > a", g.mu1, k.a};
  report.inequalities[1] = {"mu1 mu2 > b + a mu2", g.mu1 * g.mu2, k.b + k.a * g.mu2};
  report.inequalities[2] = {"mu1 mu2 (mu3 + c) > mu2 (a mu3 + k) + b (mu3 + c)",
                            g.mu1 * g.mu2 * (g.mu3 + k.c),
                            g.mu2 * (k.a * g.mu3 + k.k) + k.b * (g.mu3 + k.c)};
  return report;
}

GainReport validate_gains(const SystemParams& params, const FeedbackGains& gains) {
  const bool reference = params.p == kReferenceParams.p && params.q == kReferenceParams.q &&
                         params.r == kReferenceParams.r;
  GainReport report = evaluate_gain_inequalities(
      reference ? kReferenceGainConstants : derived_gain_constants(params), gains);
  report.reference_constants = reference;
  return report;
}

StabilizationReport stabilize_experiment(const SystemParams& params, const FeedbackGains& gains,
                                         const State3& target, const State3& x0,
                                         const IntegrationConfig& config,
                                         const StabilizationOptions& options) {
  const FeedbackController controller(params, gains, target);
  StabilizationReport report;
  report.gains = validate_gains(params, gains);
  if (!report.gains.valid()) {
    report.warnings.push_back("gains fail sufficient condition " +
                              std::to_string(report.gains.first_failure()) +
                              "; convergence is not guaranteed");
  }
  if (gains.mu1 < 0.0 || gains.mu2 < 0.0 || gains.mu3 < 0.0) {
    report.warnings.push_back("negative feedback gain");
  }

  const auto start = x0.to_array();
  report.trajectory = integrate(controller, start, config);
  report.trajectory.model = "linear-feedback";
  report.trajectory.params = {params.p, params.q, params.r, params.d};

  const Trajectory& traj = report.trajectory;
  report.error_norms.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double e1 = traj.at(i, 0) - target.x1;
    const double e2 = traj.at(i, 1) - target.x2;
    const double e3 = traj.at(i, 2) - target.x3;
    const double norm = std::sqrt(e1 * e1 + e2 * e2 + e3 * e3);
    report.error_norms.push_back(norm);
    if (report.time_below_tolerance < 0.0 && norm < options.tolerance) {
      report.time_below_tolerance = traj.times[i];
    }
  }
  report.final_error = report.error_norms.empty() ? 0.0 : report.error_norms.back();
  report.converged = report.final_error < options.tolerance;

  const double half = 0.5 * (config.transient + config.t_end);
  bool monotone = true;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (traj.times[i - 1] < half) continue;
    const double prev = 0.5 * report.error_norms[i - 1] * report.error_norms[i - 1];
    const double cur = 0.5 * report.error_norms[i] * report.error_norms[i];
    if (cur > prev + options.monotone_slack) {
      monotone = false;
      break;
    }
  }
  report.monotone_final_half = monotone;
  return report;
}

}  // namespace glv
