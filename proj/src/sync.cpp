#include "glv/sync.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "glv/cubic.hpp"
#include "glv/models.hpp"

namespace glv {

void SyncGains::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(mu1) || !positive(mu2)) {
    throw ConfigError("synchronization gains must be positive and finite");
  }
}

SyncErrors sync_errors(const CoupledState& s) noexcept {
  const double e2 = s.x2r - s.x2d;
  const double e3 = s.x3r - s.x3d;
  return {e2, e3, std::sqrt(e2 * e2 + e3 * e3)};
}

CoupledState active_coupled_field(const SystemParams& params, const SyncGains& gains,
                                  const CoupledState& s) {
  const State3 drive = vector_field(ModelKind::Linear, params, s.drive());
  const double x1d = s.x1d;
  return {drive.x1,
          drive.x2,
          drive.x3,
          s.x2r * (-1.0 + x1d) - gains.mu1 * (s.x2r - s.x2d),
          s.x3r * (-params.q + params.p * x1d * x1d) - gains.mu2 * (s.x3r - s.x3d)};
}

std::array<double, 25> active_coupled_jacobian(const SystemParams& params, const SyncGains& gains,
                                               const CoupledState& s) noexcept {
  std::array<double, 25> a{};
  const Matrix3 jd = jacobian(ModelKind::Linear, params, s.drive());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) a[i * 5 + j] = jd[i][j];
  }
  const double x1d = s.x1d;
  a[3 * 5 + 0] = s.x2r;
  a[3 * 5 + 1] = gains.mu1;
  a[3 * 5 + 3] = -1.0 + x1d - gains.mu1;
  a[4 * 5 + 0] = 2.0 * params.p * x1d * s.x3r;
  a[4 * 5 + 2] = gains.mu2;
  a[4 * 5 + 4] = -params.q + params.p * x1d * x1d - gains.mu2;
  return a;
}

void ActiveField::operator()(std::span<const double> x, std::span<double> dxdt) const {
  const auto v = active_coupled_field(params, gains, CoupledState::from(x.data())).to_array();
  std::copy(v.begin(), v.end(), dxdt.begin());
}

SyncConditionReport sync_condition_check(const SystemParams& params, const SyncGains& gains,
                                         const Trajectory& drive) {
  SyncConditionReport report;
  if (drive.empty() || drive.dim < 1) return report;
  double max_x1 = drive.at(0, 0);
  double max_x1_sq = max_x1 * max_x1;
  for (std::size_t i = 0; i < drive.size(); ++i) {
    const double x1 = drive.at(i, 0);
    max_x1 = std::max(max_x1, x1);
    max_x1_sq = std::max(max_x1_sq, x1 * x1);
  }
  report.max_x1d = max_x1;
  report.margin1 = gains.mu1 + 1.0 - max_x1;
  report.margin2 = gains.mu2 + params.q - params.p * max_x1_sq;
  report.holds = report.margin1 > 0.0 && report.margin2 > 0.0;
  return report;
}

namespace {

struct OrbitAverages {
  std::array<double, 2> transverse{};
  std::array<double, 5> eigen{};
};

std::array<double, 5> jacobian_real_parts(const SystemParams& params, const SyncGains& gains,
                                          const State3& d) {
  const auto roots = cubic_roots(characteristic_polynomial(jacobian(ModelKind::Linear, params, d)));
  std::array<double, 5> re{roots[0].real(), roots[1].real(), roots[2].real(),
                           -1.0 + d.x1 - gains.mu1,
                           -params.q + params.p * d.x1 * d.x1 - gains.mu2};
  std::sort(re.begin(), re.end(), std::greater<>());
  return re;
}

// Replays the drive with the same stepping as the Benettin run and averages
// the diagonal error rates and the Jacobian eigenvalue real parts.
OrbitAverages drive_averages(const SystemParams& params, const SyncGains& gains,
                             const State3& x0, const LyapunovConfig& config) {
  const ModelField field{ModelKind::Linear, params};
  std::array<double, 3> x = x0.to_array();
  if (config.transient > 0.0) {
    IntegrationConfig warmup;
    warmup.step = config.step;
    warmup.t_end = config.transient;
    integrate_observed(field, std::span<double>(x), warmup,
                       [](std::size_t, double, std::span<const double>) {});
  }
  IntegrationConfig measured;
  measured.step = config.step;
  measured.t_end = config.t_total;

  OrbitAverages sums;
  std::array<double, 2> prev_rates{};
  std::array<double, 5> prev_eig{};
  const double h = config.step;
  integrate_observed(field, std::span<double>(x), measured,
                     [&](std::size_t k, double, std::span<const double> s) {
                       const State3 d = State3::from(s.data());
                       const std::array<double, 2> rates{
                           -1.0 - gains.mu1 + d.x1,
                           -params.q - gains.mu2 + params.p * d.x1 * d.x1};
                       const auto eig = jacobian_real_parts(params, gains, d);
                       if (k > 0) {
                         for (std::size_t i = 0; i < 2; ++i) {
                           sums.transverse[i] += 0.5 * h * (prev_rates[i] + rates[i]);
                         }
                         for (std::size_t i = 0; i < 5; ++i) {
                           sums.eigen[i] += 0.5 * h * (prev_eig[i] + eig[i]);
                         }
                       }
                       prev_rates = rates;
                       prev_eig = eig;
                     });
  const double span_t = static_cast<double>(measured.step_count()) * h;
  for (double& v : sums.transverse) v /= span_t;
  for (double& v : sums.eigen) v /= span_t;
  return sums;
}

}  // namespace

ConditionalSpectrum conditional_lyapunov_spectrum(const SystemParams& params,
                                                  const SyncGains& gains, const CoupledState& x0,
                                                  const LyapunovConfig& config) {
  params.validate();
  gains.validate();
  TangentSystem sys;
  sys.dim = 5;
  sys.field = ActiveField{params, gains};
  sys.jacobian = [params, gains](std::span<const double> x, std::span<double> jac) {
    const auto a = active_coupled_jacobian(params, gains, CoupledState::from(x.data()));
    std::copy(a.begin(), a.end(), jac.begin());
  };
  const auto start = x0.to_array();
  ConditionalSpectrum out;
  out.full = benettin_spectrum(sys, start, config);
  const OrbitAverages avg = drive_averages(params, gains, x0.drive(), config);
  out.transverse = avg.transverse;
  out.eigenvalue_average = avg.eigen;
  return out;
}

ActiveSyncReport active_experiment(const SystemParams& params, const SyncGains& gains,
                                   const CoupledState& s0, const IntegrationConfig& config,
                                   double tolerance) {
  params.validate();
  gains.validate();
  ActiveSyncReport report;
  const auto start = s0.to_array();
  report.trajectory = integrate(ActiveField{params, gains}, start, config);
  report.trajectory.model = "linear-active-sync";
  report.trajectory.params = {params.p, params.q, params.r, params.d};

  const Trajectory& traj = report.trajectory;
  report.condition = sync_condition_check(params, gains, traj);
  if (!report.condition.holds) {
    report.warnings.push_back("gains violate the sufficient synchronization condition on this orbit "
                              "(margins " + std::to_string(report.condition.margin1) + ", " +
                              std::to_string(report.condition.margin2) + ")");
  }

  report.errors.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const SyncErrors e = sync_errors(CoupledState::from(traj.values.data() + i * traj.dim));
    report.errors.push_back(e);
    if (report.time_below_tolerance < 0.0 && std::max(std::abs(e.e2), std::abs(e.e3)) < tolerance) {
      report.time_below_tolerance = traj.times[i];
    }
  }
  if (traj.empty()) return report;

  const SyncErrors& first = report.errors.front();
  const SyncErrors& last = report.errors.back();
  report.final_e2 = last.e2;
  report.final_e3 = last.e3;
  report.converged = std::max(std::abs(last.e2), std::abs(last.e3)) < tolerance;

  const double t0 = traj.times.front();
  bool envelope = report.condition.holds;
  for (std::size_t i = 0; envelope && i < traj.size(); ++i) {
    const double dt = traj.times[i] - t0;
    const double bound2 = std::abs(first.e2) * std::exp(-report.condition.margin1 * dt) * (1.0 + report.envelope_slack) +
                          report.envelope_floor;
    const double bound3 = std::abs(first.e3) * std::exp(-report.condition.margin2 * dt) * (1.0 + report.envelope_slack) +
                          report.envelope_floor;
    if (std::abs(report.errors[i].e2) > bound2 || std::abs(report.errors[i].e3) > bound3) {
      envelope = false;
    }
  }
  report.envelope_holds = envelope;

  const double span_t = traj.times.back() - t0;
  const double rel0 = std::abs(first.e2 / traj.at(0, 1));
  const double rel1 = std::abs(last.e2 / traj.at(traj.size() - 1, 1));
  if (span_t > 0.0 && rel0 > 0.0 && rel1 > 0.0) {
    report.e2_relative_rate = -std::log(rel1 / rel0) / span_t;
  }
  return report;
}

std::string_view to_string(UpdateLaw law) noexcept {
  return law == UpdateLaw::Lyapunov ? "lyapunov" : "linear-in-error";
}

UpdateLaw parse_update_law(std::string_view name) {
  if (name == "lyapunov") return UpdateLaw::Lyapunov;
  if (name == "linear-in-error") return UpdateLaw::LinearInError;
  throw ConfigError("unknown update law '" + std::string(name) +
                    "' (expected lyapunov or linear-in-error)");
}

AdaptiveState adaptive_coupled_field(const SystemParams& params, const SyncGains& gains,
                                     UpdateLaw law, const AdaptiveState& st) {
  const CoupledState& s = st.s;
  const State3 drive = vector_field(ModelKind::Linear, params, s.drive());
  const double x1d = s.x1d;
  const double x1d_sq = x1d * x1d;
  const double e2 = s.x2r - s.x2d;
  const double e3 = s.x3r - s.x3d;
  const double u1 = e2 - x1d * e2 - gains.mu1 * e2;
  const double u2 = st.Q * e3 - st.P * x1d_sq * e3 - gains.mu2 * e3;
  const double p_rate = law == UpdateLaw::Lyapunov ? x1d_sq * e3 * e3 : x1d_sq * e3;
  return {{drive.x1, drive.x2, drive.x3, s.x2r * (-1.0 + x1d) + u1,
           s.x3r * (-params.q + params.p * x1d_sq) + u2},
          p_rate,
          -e3 * e3};
}

void AdaptiveField::operator()(std::span<const double> x, std::span<double> dxdt) const {
  const auto v = adaptive_coupled_field(params, gains, law, AdaptiveState::from(x.data())).to_array();
  std::copy(v.begin(), v.end(), dxdt.begin());
}

double adaptive_lyapunov_function(const SystemParams& params, const AdaptiveState& s) noexcept {
  const SyncErrors e = sync_errors(s.s);
  const double ep = params.p - s.P;
  const double eq = params.q - s.Q;
  return 0.5 * (e.e2 * e.e2 + e.e3 * e.e3 + ep * ep + eq * eq);
}

AdaptiveSyncReport adaptive_experiment(const SystemParams& params, const SyncGains& gains,
                                       UpdateLaw law, const AdaptiveState& s0,
                                       const IntegrationConfig& config, double tolerance) {
  params.validate();
  gains.validate();
  AdaptiveSyncReport report;
  Trajectory& traj = report.trajectory;
  traj.dim = 7;
  traj.config = config;
  traj.model = std::string("linear-adaptive-sync-") + std::string(to_string(law));
  traj.params = {params.p, params.q, params.r, params.d};

  report.initial_lyapunov = adaptive_lyapunov_function(params, s0);
  report.max_lyapunov = report.initial_lyapunov;
  double prev_l = report.initial_lyapunov;
  double prev_p = s0.P, prev_q = s0.Q;
  const double h = config.step;

  auto x = s0.to_array();
  integrate_observed(AdaptiveField{params, gains, law}, std::span<double>(x), config,
                     [&](std::size_t k, double t, std::span<const double> v) {
                       const AdaptiveState st = AdaptiveState::from(v.data());
                       const double l = adaptive_lyapunov_function(params, st);
                       const SyncErrors e = sync_errors(st.s);
                       if (k > 0) {
                         report.max_lyapunov_increase =
                             std::max(report.max_lyapunov_increase, l - prev_l);
                         report.max_lyapunov = std::max(report.max_lyapunov, l);
                         if (report.freeze_time >= 0.0) {
                           const double rate =
                               std::max(std::abs(st.P - prev_p), std::abs(st.Q - prev_q)) / h;
                           report.max_estimate_rate_after_freeze =
                               std::max(report.max_estimate_rate_after_freeze, rate);
                         }
                       }
                       if (report.freeze_time < 0.0 &&
                           std::max(std::abs(e.e2), std::abs(e.e3)) < report.freeze_threshold) {
                         report.freeze_time = t;
                       }
                       prev_l = l;
                       prev_p = st.P;
                       prev_q = st.Q;
                       if (config.is_record_step(k)) {
                         traj.push(t, v);
                         report.errors.push_back(e);
                         report.lyapunov.push_back(l);
                       }
                     });

  report.bounded = report.max_lyapunov <= 10.0 * report.initial_lyapunov;
  const AdaptiveState last = AdaptiveState::from(x.data());
  const SyncErrors e = sync_errors(last.s);
  report.final_e2 = e.e2;
  report.final_e3 = e.e3;
  report.final_P = last.P;
  report.final_Q = last.Q;
  report.converged = std::max(std::abs(e.e2), std::abs(e.e3)) < tolerance;
  return report;
}

}  // namespace glv
