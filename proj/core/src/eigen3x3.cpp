#include <algorithm>
#include <cmath>
#include <functional>

#include "quadyn/solvers.hpp"

namespace quadyn {

namespace {

// Monic characteristic polynomial x^3 + b x^2 + c x + d.
struct Cubic {
  double b, c, d;

  double value(double x) const noexcept { return ((x + b) * x + c) * x + d; }
  double slope(double x) const noexcept { return (3.0 * x + 2.0 * b) * x + c; }

  double polish(double x) const noexcept {
    for (int i = 0; i < 2; ++i) {
      const double s = slope(x);
      if (s == 0.0) {
        break;
      }
      const double next = x - value(x) / s;
      if (!std::isfinite(next) || std::abs(value(next)) >= std::abs(value(x))) {
        break;
      }
      x = next;
    }
    return x;
  }
};

}  // namespace

std::array<double, 3> eigenvalue_moduli_3x3(const Matrix3& m) {
  double scale = 0.0;
  for (const auto& row : m) {
    for (double v : row) {
      scale = std::max(scale, std::abs(v));
    }
  }
  if (scale == 0.0) {
    return {0.0, 0.0, 0.0};
  }
  Matrix3 a{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      a[r][c] = m[r][c] / scale;
    }
  }

  const double trace = a[0][0] + a[1][1] + a[2][2];
  const double minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                        a[1][1] * a[2][2] - a[1][2] * a[2][1];
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  const Cubic poly{-trace, minors, -det};

  // Depressed form t^3 + p t + q with x = t - b/3.
  const double shift = -poly.b / 3.0;
  const double p = poly.c - poly.b * poly.b / 3.0;
  const double q = 2.0 * poly.b * poly.b * poly.b / 27.0 - poly.b * poly.c / 3.0 + poly.d;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  std::array<double, 3> moduli{};
  if (disc > 0.0) {
    // One real root and a complex-conjugate pair (Cardano). The sign choice
    // keeps -q/2 -/+ sqrt(disc) free of cancellation.
    const double root = std::sqrt(disc);
    const double w = q > 0.0 ? -0.5 * q - root : -0.5 * q + root;
    const double u = std::cbrt(w);
    const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;
    const double real_root = poly.polish(u + v + shift);
    const double re = -0.5 * (u + v) + shift;
    const double im = 0.5 * std::sqrt(3.0) * std::abs(u - v);
    const double pair = std::hypot(re, im);
    moduli = {std::abs(real_root), pair, pair};
  } else if (p == 0.0) {
    moduli.fill(std::abs(shift));
  } else {
    // Three real roots (trigonometric form); p < 0 here.
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = r * std::cos(phi - 2.0 * kPi * k / 3.0);
      moduli[static_cast<std::size_t>(k)] = std::abs(poly.polish(t + shift));
    }
  }
  for (double& v : moduli) {
    v *= scale;
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

}  // namespace quadyn
