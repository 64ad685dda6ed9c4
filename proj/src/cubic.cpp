#include "glv/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glv {

CharPoly characteristic_polynomial(const Matrix3& m) noexcept {
  const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                        (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                        (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  return {-trace(m), minors, -determinant(m)};
}

namespace {

double polish_real(const CharPoly& poly, double x) {
  const double value = ((x + poly.c2) * x + poly.c1) * x + poly.c0;
  const double slope = (3.0 * x + 2.0 * poly.c2) * x + poly.c1;
  if (slope == 0.0 || !std::isfinite(slope)) return x;
  const double next = x - value / slope;
  // Keep the closed-form root if the step would make things worse (near a
  // double root the derivative vanishes).
  const double next_value = ((next + poly.c2) * next + poly.c1) * next + poly.c0;
  return std::abs(next_value) <= std::abs(value) ? next : x;
}

std::complex<double> polish_complex(const CharPoly& poly, std::complex<double> z) {
  const std::complex<double> value = poly(z);
  const std::complex<double> slope = (3.0 * z + 2.0 * poly.c2) * z + poly.c1;
  if (std::abs(slope) == 0.0) return z;
  const std::complex<double> next = z - value / slope;
  return std::abs(poly(next)) <= std::abs(value) ? next : z;
}

}  // namespace

std::array<std::complex<double>, 3> cubic_roots(const CharPoly& poly) {
  const double a = poly.c2, b = poly.c1, c = poly.c0;
  // lambda = t - a/3 gives t^3 + P t + Q = 0.
  const double shift = a / 3.0;
  const double P = b - a * a / 3.0;
  const double Q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 0.25 * Q * Q + P * P * P / 27.0;

  std::array<std::complex<double>, 3> roots;
  if (disc > 0.0 || P == 0.0) {
    // One real root. A = -sign(Q) cbrt(|Q|/2 + sqrt(disc)) avoids cancellation.
    const double A = -std::copysign(std::cbrt(0.5 * std::abs(Q) + std::sqrt(std::max(disc, 0.0))), Q);
    const double B = (A != 0.0) ? -P / (3.0 * A) : 0.0;
    const double real_root = polish_real(poly, A + B - shift);
    std::complex<double> z(-0.5 * (A + B) - shift, 0.5 * std::numbers::sqrt3 * (A - B));
    if (z.imag() != 0.0) {
      z = polish_complex(poly, z);
      z.imag(std::abs(z.imag()));
      roots = {real_root, z, std::conj(z)};
    } else {
      roots = {real_root, polish_real(poly, z.real()), polish_real(poly, z.real())};
    }
  } else {
    // Three real roots (P < 0).
    const double m = 2.0 * std::sqrt(-P / 3.0);
    const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      roots[static_cast<std::size_t>(k)] = polish_real(poly, t - shift);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
    return lhs.imag() > rhs.imag();
  });
  return roots;
}

}  // namespace glv
