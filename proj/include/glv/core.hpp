#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace glv {

// -----------------------------------------------------------------------------
// Errors
// -----------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a rational functional response hits a zero denominator.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Integration left the finite, |x| <= 1e12 region.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}
  [[nodiscard]] double time() const noexcept { return time_; }

private:
  double time_;
};

/// A tangent vector collapsed during re-orthonormalization.
class DegenerateQrError : public Error {
public:
  using Error::Error;
};

/// Feedback target is not a fixed point of the uncontrolled field.
class NotAnEquilibriumError : public Error {
public:
  using Error::Error;
};

/// Invalid parameters, configuration values, or CLI input.
class ConfigError : public Error {
public:
  using Error::Error;
};

// -----------------------------------------------------------------------------
// Domain types
// -----------------------------------------------------------------------------

enum class ModelKind { Linear, HollingII, HollingIII };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "linear", "ht2", "ht3".
[[nodiscard]] ModelKind parse_model_kind(std::string_view name);

/// Model constants. d is the half-saturation constant and only matters for
/// the Holling variants.
struct SystemParams {
  double p = 2.9851;
  double q = 3.0;
  double r = 2.0;
  double d = 0.0;

  /// Throws ConfigError unless p, q, r > 0 (and d > 0 for Holling kinds).
  void validate(ModelKind kind = ModelKind::Linear) const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Prey, middle predator, top predator.
struct State3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  [[nodiscard]] constexpr double& operator[](std::size_t i) noexcept {
    return i == 0 ? x1 : (i == 1 ? x2 : x3);
  }
  [[nodiscard]] constexpr double operator[](std::size_t i) const noexcept {
    return i == 0 ? x1 : (i == 1 ? x2 : x3);
  }
  [[nodiscard]] constexpr std::array<double, 3> to_array() const noexcept {
    return {x1, x2, x3};
  }
  [[nodiscard]] static constexpr State3 from(const double* v) noexcept {
    return {v[0], v[1], v[2]};
  }

  friend bool operator==(const State3&, const State3&) = default;
};

[[nodiscard]] bool is_finite(const State3& x) noexcept;

/// Row-major 3x3 matrix; m[i][j] is row i, column j.
using Matrix3 = std::array<std::array<double, 3>, 3>;

[[nodiscard]] double trace(const Matrix3& m) noexcept;
[[nodiscard]] double determinant(const Matrix3& m) noexcept;

/// Reference parameter set with a chaotic attractor, and the matching initial
/// condition used throughout the examples.
inline constexpr SystemParams kReferenceParams{2.9851, 3.0, 2.0, 0.0};
inline constexpr State3 kReferenceInitial{1.0023, 1.0589, 0.6503};

}  // namespace glv
