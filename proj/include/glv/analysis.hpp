#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>

#include "glv/core.hpp"
#include "glv/cubic.hpp"
#include "glv/lyapunov.hpp"

namespace glv {

// -----------------------------------------------------------------------------
// Equilibria and linear stability
// -----------------------------------------------------------------------------

/// The five closed-form fixed points of the linear model, in the order
/// X0 = (0,0,0), X1 = (1, 1+r, 0), X2 = (s, 0, (1 + r s)/sqrt(pq)),
/// X3 = (-1/r, 0, 0), X4 = (-s, 0, (-1 + r s)/sqrt(pq)), with s = sqrt(q/p).
[[nodiscard]] std::array<State3, 5> equilibria(const SystemParams& params);

/// True when every component is >= 0.
[[nodiscard]] bool in_closed_positive_octant(const State3& x) noexcept;

enum class Stability {
  StableNode,       // all eigenvalues real and negative
  StableFocusNode,  // all real parts negative, one complex pair
  Saddle,           // real parts of both signs
  UnstableFocus,    // all real parts positive, one complex pair
  UnstableNode,     // all eigenvalues real and positive
  Marginal,         // some |Re| below the marginal tolerance
};

[[nodiscard]] std::string_view to_string(Stability s) noexcept;

inline constexpr double kMarginalTolerance = 1e-9;

struct StabilityReport {
  State3 point;
  CharPoly char_poly;
  std::array<std::complex<double>, 3> eigenvalues;
  Stability classification = Stability::Marginal;

  [[nodiscard]] bool is_stable() const noexcept {
    return classification == Stability::StableNode ||
           classification == Stability::StableFocusNode;
  }
};

[[nodiscard]] Stability classify_eigenvalues(const std::array<std::complex<double>, 3>& eig) noexcept;

/// Linearization at `point` (any model kind; the linear model by default).
[[nodiscard]] StabilityReport classify(const SystemParams& params, const State3& point,
                                       ModelKind kind = ModelKind::Linear);

// -----------------------------------------------------------------------------
// Lyapunov spectrum
// -----------------------------------------------------------------------------

[[nodiscard]] TangentSystem tangent_system(ModelKind kind, const SystemParams& params);

/// Benettin spectrum of the 3-D model from x0. `initial_frame` as in
/// benettin_spectrum.
[[nodiscard]] LyapunovSpectrum lyapunov_spectrum(ModelKind kind, const SystemParams& params,
                                                 const State3& x0, const LyapunovConfig& config,
                                                 std::span<const double> initial_frame = {});

// -----------------------------------------------------------------------------
// Slow manifold
// -----------------------------------------------------------------------------

struct SlowManifoldSample {
  State3 point;
  double fast_eigenvalue = 0.0;
  double residual = 0.0;
};

/// Left eigenvector of J(x) for eigenvalue lambda of the linear model:
/// Z = [(b - l)(c - l), x1 (c - l), p x1^2 (b - l)] with b = -1 + x1,
/// c = -q + p x1^2.
[[nodiscard]] State3 fast_left_eigenvector(const SystemParams& params, const State3& x,
                                           double lambda) noexcept;

/// The flow projected on the fast left eigenvector, f(x) . Z(lambda1), where
/// lambda1 is the most negative real eigenvalue of J(x). Zero on the slow
/// manifold. Throws Error if no eigenvalue is real (numerical failure only).
[[nodiscard]] SlowManifoldSample slow_manifold_residual(const SystemParams& params,
                                                        const State3& point);

/// f(x) . Z(lambda) expanded as a quadratic in lambda with polynomial
/// coefficients in x, for arbitrary (p, q, r).
[[nodiscard]] double slow_manifold_polynomial(const SystemParams& params, const State3& x,
                                              double lambda) noexcept;

/// The expanded slow-manifold polynomial as it is commonly printed for
/// (p, q, r) = (2.9851, 3, 2). Kept for comparison only: it disagrees with the
/// eigenvector form (its constant part carries x3 terms that cancel exactly,
/// and the x1 and x1^2 terms differ).
[[nodiscard]] double legacy_slow_manifold_polynomial(const State3& x, double lambda) noexcept;

// -----------------------------------------------------------------------------
// Existence/uniqueness diagnostic
// -----------------------------------------------------------------------------

/// K = T * max(1 + 2M + 2rM + 4pM^2, 1 + 2M, q + 2pM^2) for the box
/// max|x_i| <= M over (0, T]. Throws ConfigError unless M, T > 0.
[[nodiscard]] double contraction_constant(const SystemParams& params, double bound_m, double horizon_t);

/// K < 1: the Picard map is a contraction and the solution is unique.
[[nodiscard]] constexpr bool is_contraction(double k) noexcept { return k < 1.0; }

}  // namespace glv
