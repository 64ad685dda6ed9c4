#include "glv/ensemble.hpp"

#include <algorithm>
#include <exception>

#include "glv/analysis.hpp"
#include "glv/models.hpp"

namespace glv {

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

namespace {

OrbitSummary summarize_one(ModelKind kind, const SystemParams& params, const State3& x0,
                           const IntegrationConfig& config) {
  OrbitSummary out;
  out.initial = x0;
  std::array<double, 3> x = x0.to_array();
  bool seen = false;
  try {
    integrate_observed(ModelField{kind, params}, std::span<double>(x), config,
                       [&](std::size_t k, double, std::span<const double> s) {
                         if (!config.is_record_step(k)) return;
                         const State3 v = State3::from(s.data());
                         if (!seen) {
                           out.min = out.max = v;
                           seen = true;
                           return;
                         }
                         for (std::size_t i = 0; i < 3; ++i) {
                           out.min[i] = std::min(out.min[i], v[i]);
                           out.max[i] = std::max(out.max[i], v[i]);
                         }
                       });
  } catch (const DivergenceError& e) {
    out.diverged = true;
    out.divergence_time = e.time();
  } catch (const Error& e) {
    out.error = e.what();
  }
  out.final_state = State3::from(x.data());
  return out;
}

}  // namespace

std::vector<OrbitSummary> summarize_orbits(ModelKind kind, const SystemParams& params,
                                           std::span<const State3> initial,
                                           const IntegrationConfig& config, Execution exec) {
  params.validate(kind);
  config.validate();
  std::vector<OrbitSummary> out(initial.size());
  for_each_index(initial.size(), exec, [&](std::size_t i) {
    out[i] = summarize_one(kind, params, initial[i], config);
  });
  return out;
}

std::vector<LyapunovOutcome> lyapunov_ensemble(ModelKind kind, const SystemParams& params,
                                               std::span<const State3> initial,
                                               const LyapunovConfig& config,
                                               std::span<const std::vector<double>> frames,
                                               Execution exec) {
  params.validate(kind);
  config.validate();
  if (!frames.empty() && frames.size() != initial.size()) {
    throw ConfigError("one tangent frame per initial condition is required");
  }
  std::vector<LyapunovOutcome> out(initial.size());
  for_each_index(initial.size(), exec, [&](std::size_t i) {
    try {
      const std::span<const double> frame =
          frames.empty() ? std::span<const double>{} : std::span<const double>(frames[i]);
      out[i].spectrum = lyapunov_spectrum(kind, params, initial[i], config, frame);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace glv
