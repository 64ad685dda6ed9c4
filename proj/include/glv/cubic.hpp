#pragma once

#include <array>
#include <complex>

#include "glv/core.hpp"

namespace glv {

/// Monic cubic lambda^3 + c2 lambda^2 + c1 lambda + c0.
struct CharPoly {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  [[nodiscard]] std::complex<double> operator()(std::complex<double> z) const noexcept {
    return ((z + c2) * z + c1) * z + c0;
  }
};

/// (-trace, sum of principal 2x2 minors, -det).
[[nodiscard]] CharPoly characteristic_polynomial(const Matrix3& m) noexcept;

/// Roots of a monic cubic by the depressed-cubic closed form (Cardano when one
/// root is real, trigonometric when all three are), each followed by one
/// Newton polish step. Complex roots come back as an exact conjugate pair.
/// Sorted by descending real part, then descending imaginary part.
[[nodiscard]] std::array<std::complex<double>, 3> cubic_roots(const CharPoly& poly);

}  // namespace glv
