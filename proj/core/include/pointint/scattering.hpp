#pragma once

#include <cmath>

#include "pointint/params.hpp"

namespace pointint {

/// Incidence side. Left means a wave arriving from x = -inf moving right.
enum class Side { Left, Right };

const char* to_string(Side side);

/// Plane-wave scattering off a point interaction, unit incident amplitude.
///
/// `boundary_minus`/`boundary_plus` hold the two-component boundary data at
/// 0- and 0+: (psi, psi') for Schrodinger, (u, v) for Dirac.
struct ScatteringResult {
  Complex r;
  Complex t;
  double k = 0.0;
  Side side = Side::Left;
  double current_in = 0.0;
  double current_out = 0.0;
  Vector2c boundary_minus = Vector2c::Zero();
  Vector2c boundary_plus = Vector2c::Zero();

  double reflection() const { return std::norm(r); }
  double transmission() const { return std::norm(t); }
  /// | |r|^2 + |t|^2 - 1 |
  double unitarity_residual() const { return std::abs(reflection() + transmission() - 1.0); }
};

}  // namespace pointint
