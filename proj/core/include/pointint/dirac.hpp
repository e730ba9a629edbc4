#pragma once

// Relativistic point interactions for the one-dimensional Dirac equation
//
//   (i alpha_x d/dx - beta m + E) psi = S[psi],   psi = (u, v)^T,
//
// in the fixed representation beta = sigma_3, alpha_x = sigma_1 (hbar = c = 1).
// Non-separated members: psi(0+) = Lambda_r psi(0-) with
//   Lambda_r = e^{i phi_r} [[a_r, i b_r], [-i c_r, d_r]],  a_r d_r - b_r c_r = 1.
// Separated members: v(0+-) = i h_r+- u(0+-).

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "pointint/params.hpp"
#include "pointint/parity.hpp"
#include "pointint/scattering.hpp"

namespace pointint::dirac {

struct DiracLambdaParams {
  double phi_r = 0.0;
  double a_r = 1.0;
  double b_r = 0.0;
  double c_r = 0.0;
  double d_r = 1.0;
};

struct DiracSeparatedParams {
  ExtendedReal h_r_plus;
  ExtendedReal h_r_minus;
};

using DiracParams = std::variant<DiracLambdaParams, DiracSeparatedParams>;

/// Equal mix of electrostatic and scalar potentials, S = gamma/2 (1 + beta) psi(0-) delta.
DiracLambdaParams mixed_interaction(double gamma);
/// Inverted mix, S = gamma/2 (1 - beta) psi(0-) delta.
DiracLambdaParams inverted_mixed_interaction(double gamma);

const DiracParams& validate(const DiracParams& params);

struct BoundaryState {
  Complex u;
  Complex v;
  Side side = Side::Left;
};

/// Omega_0 = (phi^0, phi^1) with S[psi] = Omega_0 delta(x).
struct SpinorCoefficient {
  Complex phi0;
  Complex phi1;
};

/// Throws WrongVariant for separated params.
BoundaryMatrix build_lambda_r(const DiracParams& params);

struct ScatterOptions {
  /// Permit E < -m. Off by default; hole-state conventions are not fixed.
  bool allow_negative_energy = false;
};

/// Spinor plane waves (1, +-lambda) e^{+-i k_r x}, lambda = k_r / (E + m),
/// matched across Lambda_r. Throws BelowGap for |E| <= m.
ScatteringResult dirac_scatter(const DiracParams& params, double energy, double mass, Side side,
                               ScatterOptions options = {});

struct DiracBoundState {
  double energy = 0.0;
  double kappa_r = 0.0;
};

/// Gap states E in (-m, m): sign changes of the matching determinant on a
/// 10^4-point scan, refined by bisection. A double root with no sign change
/// is not reported.
std::vector<DiracBoundState> dirac_bound_states(const DiracParams& params, double mass);

/// Real-valued matching determinant at energy E in the gap, normalised so its
/// zeros are the gap states.
double bound_state_determinant(const DiracLambdaParams& params, double energy, double mass);

/// Omega_0 from one-sided data: i alpha_x (Lambda_r - 1) psi(0-) for left
/// data, i alpha_x (1 - Lambda_r^{-1}) psi(0+) for right data.
SpinorCoefficient interaction_spinor(const DiracParams& params, const BoundaryState& state);

/// Omega_0 from both sides; required for separated params.
SpinorCoefficient interaction_spinor(const DiracParams& params, const BoundaryState& left,
                                     const BoundaryState& right);

/// psi(0+) - psi(0-) = -i alpha_x Omega_0
Vector2c spinor_jump(const SpinorCoefficient& omega);

/// j^1 = psi^dagger alpha_x psi
double current(const BoundaryState& state);

BoundaryState left_state(const ScatteringResult& result);
BoundaryState right_state(const ScatteringResult& result);

/// phi = phi_r, a = a_r, b = b_r / 2m, c = 2m c_r, d = d_r; h+- = -2m h_r+-.
InteractionParams to_nonrelativistic(const DiracParams& params, double mass);

/// Boundary relation obeyed by (u, u') at energy E: Lambda_u = G Lambda_r G^{-1}
/// with G = diag(1, i(E + m)); separated h+- = -(E + m) h_r+-. Reduces to
/// to_nonrelativistic as E -> m.
InteractionParams u_reduced_params(const DiracParams& params, double energy, double mass);

/// Even iff phi_r = 0 and a_r = d_r, or h_r+ = -h_r- finite, or both infinite.
parity::ParityClass classify(const DiracParams& params, double tol = parity::kParityTolerance);

/// Lambda_r of the reflected problem beta psi(-x): beta Lambda_r^{-1} beta.
Matrix2c reflected_lambda_r(const DiracLambdaParams& params);

/// max |beta Lambda_r^{-1} beta + Lambda_r - 2| (zero iff the interaction is odd).
double odd_residual(const DiracLambdaParams& params);

struct DiracOddSearchReport {
  std::uint64_t samples = 0;
  std::uint64_t odd_candidates_found = 0;
  std::uint64_t non_identity_candidates = 0;
  double identity_residual = 0.0;
  double min_odd_residual = 0.0;
};

DiracOddSearchReport odd_search(std::uint64_t samples, std::uint64_t seed = 42);

}  // namespace pointint::dirac
