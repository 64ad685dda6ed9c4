#include "glv/integrator.hpp"

#include <sstream>

namespace glv {

void IntegrationConfig::validate() const {
  if (!std::isfinite(step) || step <= 0.0) {
    throw ConfigError("integration step must be positive");
  }
  if (!std::isfinite(transient) || transient < 0.0) {
    throw ConfigError("transient must be nonnegative");
  }
  if (!std::isfinite(t_end) || t_end <= transient) {
    throw ConfigError("t_end must exceed the transient");
  }
  if (record_every < 1) {
    throw ConfigError("record_every must be at least 1");
  }
  if (step_count() < 1) {
    throw ConfigError("t_end is shorter than one step");
  }
}

// The 1e-9 slack absorbs representation error in ratios such as 200 / 0.005.
std::size_t IntegrationConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
}

std::size_t IntegrationConfig::first_record_step() const {
  return static_cast<std::size_t>(std::ceil(transient / step - 1e-9));
}

bool IntegrationConfig::is_record_step(std::size_t k) const {
  const std::size_t first = first_record_step();
  return k >= first && (k - first) % record_every == 0;
}

void Trajectory::push(double t, std::span<const double> x) {
  times.push_back(t);
  values.insert(values.end(), x.begin(), x.end());
}

void check_bounded(std::span<const double> x, double t) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || std::abs(x[i]) > kDivergenceThreshold) {
      std::ostringstream msg;
      msg << "integration diverged at t = " << t << " (component " << i
          << " = " << x[i] << ")";
      throw DivergenceError(msg.str(), t);
    }
  }
}

std::vector<double> rk4_step(const VectorField& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw ConfigError("rk4 step must be positive");
  std::vector<double> out(x.begin(), x.end());
  Rk4Workspace ws(out.size());
  ws.advance(f, std::span<double>(out), h);
  for (double v : out) {
    if (!std::isfinite(v)) throw DivergenceError("rk4 step produced a non-finite state", 0.0);
  }
  return out;
}

}  // namespace glv
