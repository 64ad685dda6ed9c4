#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "glv/integrator.hpp"

namespace glv {

/// J(x, jac): writes the row-major n x n Jacobian at x.
using JacobianFn = std::function<void(std::span<const double>, std::span<double>)>;

/// An autonomous field together with its analytic Jacobian.
struct TangentSystem {
  std::size_t dim = 0;
  VectorField field;
  JacobianFn jacobian;
};

struct LyapunovConfig {
  double step = 0.005;
  double t_total = 5000.0;       // measured time, after the transient
  double transient = 200.0;
  double renorm_interval = 1.0;

  void validate() const;
  [[nodiscard]] std::size_t steps_per_renorm() const;
};

struct LyapunovSpectrum {
  /// Final estimates, sorted descending.
  std::vector<double> exponents;
  /// Elapsed measured time at each renormalization.
  std::vector<double> history_times;
  /// Running estimates at each renormalization, in orthonormalization order.
  std::vector<std::vector<double>> history;
  /// Time average of trace(J) over the measured window (trapezoid rule).
  double mean_divergence = 0.0;
  std::vector<double> final_state;
  LyapunovConfig config;

  /// Largest change of each running estimate over the trailing `fraction` of
  /// the history; used to judge convergence.
  [[nodiscard]] std::vector<double> trailing_spread(double fraction = 0.1) const;
  [[nodiscard]] double sum() const;
};

/// Benettin's method: the state is integrated together with n tangent vectors
/// under the variational equation dV/dt = J(x) V, and the tangent frame is
/// re-orthonormalized by modified Gram-Schmidt every renorm_interval. The
/// exponents are the accumulated log stretch factors over the measured time.
///
/// `initial_frame` is an optional row-major n x n matrix whose columns are the
/// starting tangent vectors (orthonormalized before use); identity otherwise.
///
/// Throws DivergenceError from the state integration, and DegenerateQrError
/// if a tangent vector norm drops below 1e-300.
[[nodiscard]] LyapunovSpectrum benettin_spectrum(const TangentSystem& system,
                                                 std::span<const double> x0,
                                                 const LyapunovConfig& config,
                                                 std::span<const double> initial_frame = {});

/// In-place modified Gram-Schmidt on the columns of a row-major n x n matrix.
/// Writes the column norms (before normalization) into `norms`.
void orthonormalize_columns(std::span<double> frame, std::size_t n, std::span<double> norms);

}  // namespace glv
