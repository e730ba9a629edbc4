#include "matching.hpp"

#include <cmath>

#include <Eigen/LU>

#include "pointint/error.hpp"
#include "pointint/scattering.hpp"

namespace pointint {

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

namespace detail {

std::pair<Complex, Complex> solve_matching(const Matrix2c& lambda, const AffineBoundary& minus,
                                           const AffineBoundary& plus) {
  Matrix2c system;
  system.col(0) = lambda * minus.with_r - plus.with_r;
  system.col(1) = lambda * minus.with_t - plus.with_t;
  const Vector2c rhs = plus.fixed - lambda * minus.fixed;

  const Complex det = system.determinant();
  const double scale = system.col(0).norm() * system.col(1).norm();
  if (!(std::abs(det) > 1e-14 * scale)) {
    throw SingularSystem("plane-wave matching system is singular (|det| = " +
                         std::to_string(std::abs(det)) + ")");
  }
  // Cramer's rule on the 2x2 system.
  const Complex r = (rhs(0) * system(1, 1) - system(0, 1) * rhs(1)) / det;
  const Complex t = (system(0, 0) * rhs(1) - rhs(0) * system(1, 0)) / det;
  return {r, t};
}

}  // namespace detail
}  // namespace pointint
