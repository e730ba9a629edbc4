#pragma once

// Parameter representations of a one-dimensional point interaction and the
// conversions among them.
//
//   unitary    U = e^{i theta} [[z, w], [-w*, z*]],  |z|^2 + |w|^2 = 1
//   lambda     Phi(0+) = Lambda Phi(0-),  Lambda = e^{i phi} [[a, b], [c, d]],
//              ad - bc = 1, Phi = (psi, psi')
//   separated  psi'(0+-) = h+- psi(0+-),  h+- in R u {inf}
//
// Units: hbar = 1, 2m = 1. L0 is the length scale that makes U dimensionless.

#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>

namespace pointint {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;

namespace tolerance {
/// Residual above which validate() rejects a constraint.
inline constexpr double kValidation = 1e-9;
/// |w| at or below this selects the separated branch.
inline constexpr double kSeparatedW = 1e-12;
/// |w| below this (but above kSeparatedW) is reported as ill-conditioned.
inline constexpr double kConditioningW = 1e-6;
/// Round-trip tolerance of lambda_to_unitary before NoPreimage is raised.
inline constexpr double kPreimage = 1e-8;
}  // namespace tolerance

/// A point of the one-point compactification R u {inf}. Both signed IEEE
/// infinities map onto the single infinity marker.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v)  // NOLINT(google-explicit-constructor)
      : value_(v == std::numeric_limits<double>::infinity() ||
                       v == -std::numeric_limits<double>::infinity()
                   ? 0.0
                   : v),
        infinite_(v == std::numeric_limits<double>::infinity() ||
                  v == -std::numeric_limits<double>::infinity()) {}

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_ && value_ == value_; }
  /// Finite value; throws InvalidInput for the infinity marker.
  double value() const;
  /// +inf for the marker, the finite value otherwise.
  constexpr double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal& x, const ExtendedReal& y) {
    return x.infinite_ == y.infinite_ && (x.infinite_ || x.value_ == y.value_);
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

struct UnitaryParams {
  double theta = kPi / 2;
  Complex z{0.0, 0.0};
  Complex w{0.0, -1.0};
};

struct LambdaParams {
  double phi = 0.0;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
};

struct SeparatedParams {
  ExtendedReal h_plus;
  ExtendedReal h_minus;
};

using InteractionParams = std::variant<UnitaryParams, LambdaParams, SeparatedParams>;

enum class MatrixKind { NonRelativistic, Relativistic };

/// 2x2 complex matrix linking boundary values across the origin.
struct BoundaryMatrix {
  Matrix2c entries = Matrix2c::Identity();
  MatrixKind kind = MatrixKind::NonRelativistic;
};

// Named family members.
LambdaParams identity_interaction();
LambdaParams delta_interaction(double strength);
LambdaParams delta_prime_interaction(double strength);

/// Returns the params unchanged when every constraint of the active variant
/// holds within tolerance::kValidation; throws ConstraintViolation otherwise.
const InteractionParams& validate(const InteractionParams& params);
const UnitaryParams& validate(const UnitaryParams& params);
const LambdaParams& validate(const LambdaParams& params);
const SeparatedParams& validate(const SeparatedParams& params);

Matrix2c unitary_matrix(const UnitaryParams& u);
BoundaryMatrix boundary_matrix(const LambdaParams& p);

/// Splits a complex matrix with |det| = 1 into e^{i phi} M, M real, with
/// phi in [0, pi). The pair (phi + pi, -M) is folded onto (phi, M).
struct PhaseReduction {
  LambdaParams params;
  /// Largest imaginary part left in e^{-i phi} Lambda.
  double imag_residual = 0.0;
  /// |ad - bc - 1| before any correction.
  double det_residual = 0.0;
};
PhaseReduction reduce_lambda(const Matrix2c& lambda);

/// Maps U onto the boundary relation it induces. |w| <= kSeparatedW yields
/// SeparatedParams, otherwise the LambdaParams of R+^{-1} R-.
InteractionParams unitary_to_interaction(const UnitaryParams& u, double l0 = 1.0);

/// Non-empty when |w| lies in the ill-conditioned band (kSeparatedW, kConditioningW).
std::optional<std::string> conditioning_warning(const UnitaryParams& u);

/// Algebraic inverse of unitary_to_interaction on the non-separated branch.
/// The unitary representative is not unique; this returns the one whose
/// forward image reproduces p. Throws NoPreimage if the round trip misses.
UnitaryParams lambda_to_unitary(const LambdaParams& p, double l0 = 1.0);

/// Resolves the unitary variant to lambda/separated form; passes the others through.
InteractionParams canonical(const InteractionParams& params, double l0 = 1.0);

/// Largest entrywise difference of the two parameter sets.
double distance(const LambdaParams& x, const LambdaParams& y);

}  // namespace pointint
