#pragma once

// Shared plane-wave matching across a boundary matrix.

#include <utility>

#include "pointint/params.hpp"

namespace pointint::detail {

/// Boundary data on each side written as affine functions of the unknown
/// amplitudes: value = fixed + r * with_r + t * with_t.
struct AffineBoundary {
  Vector2c fixed = Vector2c::Zero();
  Vector2c with_r = Vector2c::Zero();
  Vector2c with_t = Vector2c::Zero();

  Vector2c at(Complex r, Complex t) const { return fixed + r * with_r + t * with_t; }
};

/// Solves plus = lambda * minus for (r, t). Throws SingularSystem when the
/// 2x2 system is numerically singular.
std::pair<Complex, Complex> solve_matching(const Matrix2c& lambda, const AffineBoundary& minus,
                                           const AffineBoundary& plus);

}  // namespace pointint::detail
