#pragma once

// Non-relativistic solver for psi'' + k^2 psi = alpha0 delta + alpha1 delta'.
// Energies follow E = k^2 (scattering) and E = -kappa^2 (bound states).

#include <vector>

#include "pointint/params.hpp"
#include "pointint/scattering.hpp"

namespace pointint::schrodinger {

/// One-sided boundary data (psi(0+-), psi'(0+-)).
struct BoundaryState {
  Complex psi;
  Complex dpsi;
  Side side = Side::Left;
};

/// Coefficients of the interaction distribution alpha0 delta + alpha1 delta'.
struct InteractionCoefficients {
  Complex alpha0;
  Complex alpha1;
};

enum class BoundSide { Both, LeftOnly, RightOnly };

const char* to_string(BoundSide side);

struct BoundState {
  double energy = 0.0;
  double kappa = 0.0;
  BoundSide side = BoundSide::Both;
  /// 2 for a double root of the matching quadratic.
  int multiplicity = 1;
};

/// Which explicit form of the interaction distribution to evaluate.
enum class CoefficientForm { LeftData, RightData };

ScatteringResult scatter(const InteractionParams& params, double k, Side side, double l0 = 1.0);

/// Scattering off a raw boundary matrix; used for effective matrices of
/// finite-range potentials.
ScatteringResult scatter(const BoundaryMatrix& lambda, double k, Side side);

/// Roots of b kappa^2 + (a + d) kappa + c = 0 with kappa > 0 for lambda form;
/// half-line states kappa = -h+ (h+ < 0) and kappa = h- (h- > 0) for
/// separated form. Throws NoDiscreteSpectrum on the fully degenerate
/// b = a + d = c = 0 case.
std::vector<BoundState> bound_states(const InteractionParams& params, double l0 = 1.0);

/// Coefficients from one-sided data. The form follows state.side; separated
/// interactions need both sides and throw SideMismatch here.
InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& state, double l0 = 1.0);

/// As above with an explicit form; throws SideMismatch when the form and
/// the side of `state` disagree.
InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& state, CoefficientForm form,
                                                 double l0 = 1.0);

/// Coefficients from both one-sided states. Required for separated form.
InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& left,
                                                 const BoundaryState& right, double l0 = 1.0);

/// j = -i (psi* psi' - psi*' psi)
double current(const BoundaryState& state);

/// Boundary states at 0- and 0+ of a scattering solution.
BoundaryState left_state(const ScatteringResult& result);
BoundaryState right_state(const ScatteringResult& result);

}  // namespace pointint::schrodinger
