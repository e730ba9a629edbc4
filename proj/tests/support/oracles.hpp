#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pointint/params.hpp"

namespace pointint::testing {

inline Eigen::Matrix2d free_oracle(double length, double k) {
  Eigen::Matrix2d m;
  m << std::cos(k * length), std::sin(k * length) / k, -k * std::sin(k * length), std::cos(k * length);
  return m;
}

// Closed-form barrier: free over the outer strips, hyperbolic inside (V0 > k^2).
inline Eigen::Matrix2d barrier_oracle(double v0, double width, double half_width, double k) {
  const double q = std::sqrt(v0 - k * k);
  Eigen::Matrix2d inside;
  inside << std::cosh(q * width), std::sinh(q * width) / q, q * std::sinh(q * width),
      std::cosh(q * width);
  const double strip = half_width - width / 2.0;
  return free_oracle(strip, k) * inside * free_oracle(strip, k);
}

// Pair {(-eps, g), (+eps, -g)}, g = 1/2eps, composed by hand:
// [[c + g s/k, s/k], [-g^2 s/k - k s, c - g s/k]] with c = cos 2k eps, s = sin 2k eps.
// Amplitudes are referenced at the outer deltas.
inline std::pair<std::complex<long double>, std::complex<long double>> seba_oracle(long double eps,
                                                                                   long double k) {
  using CReal = std::complex<long double>;
  const long double g = 1.0L / (2.0L * eps);
  const long double c = std::cos(2.0L * k * eps);
  const long double s = std::sin(2.0L * k * eps);
  const long double a = c + g * s / k;
  const long double b = s / k;
  const long double cc = -g * g * s / k - k * s;
  const long double d = c - g * s / k;
  const CReal ik(0.0L, k);
  // A(1 + r) + B ik (1 - r) = t,  C(1 + r) + D ik (1 - r) = ik t
  const CReal r = -(cc - ik * a + ik * d + k * k * b) / (cc - ik * a - ik * d - k * k * b);
  const CReal t = a * (1.0L + r) + b * ik * (1.0L - r);
  return {r, t};
}

// Decaying-solution mismatch det[Lambda (1, kappa), (1, -kappa)] for a real-phase matrix M.
inline double bound_mismatch(const LambdaParams& p, double kappa) {
  const double left0 = p.a + p.b * kappa;
  const double left1 = p.c + p.d * kappa;
  return (-kappa * left0 - left1) / (1.0 + kappa * kappa);
}

// Sign-change scan on a log grid followed by bisection; independent of the quadratic.
// Returns decay rates kappa in descending order.
inline std::vector<double> bisection_roots(const LambdaParams& p) {
  const double bound = 1.0 + (std::abs(p.a + p.d) + std::abs(p.c)) / std::max(std::abs(p.b), 1e-300);
  const double lo = 1e-9;
  const double hi = std::min(bound * 2.0, 1e9);
  const int n = 200000;
  std::vector<double> roots;
  double x0 = lo;
  double f0 = bound_mismatch(p, x0);
  for (int i = 1; i <= n; ++i) {
    const double x1 = lo * std::pow(hi / lo, static_cast<double>(i) / n);
    const double f1 = bound_mismatch(p, x1);
    if (f0 == 0.0) roots.push_back(x0);
    if (f0 * f1 < 0.0) {
      double a = x0;
      double b = x1;
      double fa = f0;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = bound_mismatch(p, m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

}  // namespace pointint::testing
