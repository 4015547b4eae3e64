#pragma once

// Reference values computed independently of the library code paths.

#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

/// Roots of lambda^2 + (1 + n^2) lambda + n^2 - 1/2 by the textbook formula in
/// long double, ordered (lower, upper).
inline std::pair<long double, long double> roots_ld(int n) {
  const long double nn = static_cast<long double>(n) * n;
  const long double b = 1.0L + nn;
  const long double c = nn - 0.5L;
  const long double sq = std::sqrt(b * b - 4.0L * c);
  return {(-b - sq) / 2.0L, (-b + sq) / 2.0L};
}

inline long double char_poly_ld(int n, long double lambda) {
  const long double nn = static_cast<long double>(n) * n;
  return lambda * lambda + (1.0L + nn) * lambda + nn - 0.5L;
}

/// Period-1 multipliers as eigenvalues of expm of the memory-variable
/// system matrix [[-n^2, s], [1, -1]], ordered (lower, upper).
inline std::pair<double, double> multipliers_expm(int n, double scale = 0.5) {
  Eigen::Matrix2d a;
  a << -static_cast<double>(n) * n, scale, 1.0, -1.0;
  const Eigen::Matrix2d e = a.exp();
  const double tr = e.trace();
  const double det = e.determinant();
  const double sq = std::sqrt(tr * tr - 4.0 * det);
  return {(tr - sq) / 2.0, (tr + sq) / 2.0};
}

/// Real root near lambda_+(n) of the equation with the memory kernel cut at
/// -theta_max: (lambda + n^2)(1 + lambda) = s (1 - e^{-(1 + lambda) theta_max}).
/// Newton in long double from the untruncated root.
inline long double truncated_root(int n, double theta_max, double scale = 0.5) {
  const long double nn = static_cast<long double>(n) * n;
  const long double th = theta_max;
  long double l = roots_ld(n).second;
  for (int it = 0; it < 100; ++it) {
    const long double e = std::exp(-(1.0L + l) * th);
    const long double g = (l + nn) * (1.0L + l) - scale * (1.0L - e);
    const long double dg = (2.0L * l + 1.0L + nn) - scale * th * e;
    const long double step = g / dg;
    l -= step;
    if (std::abs(step) < 1e-18L) break;
  }
  return l;
}

/// Exact solution of the mode-n memory system u' = -n^2 u + s y + c,
/// y' = u - y from (u0, y0) with constant forcing c, at time t.
inline Eigen::Vector2d memory_system(int n, double scale, Eigen::Vector2d z0, double c, double t) {
  Eigen::Matrix2d a;
  a << -static_cast<double>(n) * n, scale, 1.0, -1.0;
  const Eigen::Vector2d b(c, 0.0);
  const Eigen::Vector2d zstar = -a.inverse() * b;
  const Eigen::Matrix2d et = (a * t).exp();
  return zstar + et * (z0 - zstar);
}

}  // namespace oracle
