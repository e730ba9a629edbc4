#pragma once

// Behaviour of point interactions under x -> -x. An interaction is even when
// the reflected problem carries the same interaction, odd when it carries the
// negated one. The family contains even members and members with no definite
// parity; the only "odd" solution of the matrix condition is the free case.

#include <cstdint>
#include <random>
#include <span>

#include "pointint/params.hpp"

namespace pointint::parity {

enum class ParityClass { Even, NoDefiniteParity };

const char* to_string(ParityClass value);

inline constexpr double kParityTolerance = 1e-10;

/// Even iff phi = 0 and a = d (lambda), z real and w imaginary (unitary),
/// h+ = -h- finite or h+ = h- = inf (separated).
ParityClass classify(const InteractionParams& params, double tol = kParityTolerance);

/// Separated params with exactly one infinite side. These classify as
/// NoDefiniteParity and are flagged in reports.
bool is_mixed_separated(const InteractionParams& params);

/// sigma_1 U sigma_1
Matrix2c reflected_unitary(const UnitaryParams& u);

/// max |(A1 - A2 U~) + (A1 - A2 U)|, evaluated at L0 = 1 (the condition does
/// not depend on L0).
double odd_residual(const UnitaryParams& u);

struct OddCheck {
  bool is_odd_candidate = false;
  bool lambda_is_identity = false;
  double odd_residual = 0.0;
  /// max |Lambda - I|, +inf on the separated branch.
  double identity_distance = 0.0;
};

OddCheck odd_condition_check(const UnitaryParams& u, double odd_tol = 1e-10,
                             double identity_tol = 1e-8);

/// theta uniform on [0, pi), (z, w) uniform on the unit 3-sphere.
UnitaryParams random_unitary(std::mt19937_64& rng);

/// phi uniform on [0, pi); M = R(alpha) diag(s, 1/s) [[1, u], [0, 1]] with
/// alpha uniform, log s and u normal.
LambdaParams random_lambda(std::mt19937_64& rng);

struct OddSearchReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t odd_candidates_found = 0;
  std::uint64_t non_identity_candidates = 0;
  bool all_identity = true;
  /// The analytic point theta = pi/2, z = 0, w = -i.
  OddCheck analytic_point;
  double min_odd_residual = 0.0;
};

OddSearchReport odd_search(std::uint64_t samples, std::uint64_t seed = 42);

struct SymmetryReport {
  double max_r_asymmetry = 0.0;
  double max_t_asymmetry = 0.0;
};

/// Compares left- and right-incidence amplitudes at every k.
SymmetryReport reflection_symmetry_test(const InteractionParams& params,
                                        std::span<const double> k_grid, double l0 = 1.0);

}  // namespace pointint::parity
