#include "pointint/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "pointint/error.hpp"

namespace pointint {

namespace {

constexpr Complex kI{0.0, 1.0};

// 1 + z e^{i theta} at or below this magnitude means h = infinity.
constexpr double kDirichletDenominator = 1e-12;

// Folding window for phi just below pi.
constexpr double kPhaseFold = 1e-12;

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw InvalidInput(std::string("non-finite value for ") + field);
  }
}

void require_angle(double v, const char* field) {
  require_finite(v, field);
  if (v < 0.0) throw ConstraintViolation(field, -v);
  if (v >= kPi) throw ConstraintViolation(field, v - kPi);
}

void require_length(double l0) {
  if (!std::isfinite(l0) || l0 <= 0.0) {
    throw InvalidInput("L0 must be a positive finite length");
  }
}

ExtendedReal separated_h(Complex ze, double sign, double l0) {
  const Complex denom = 1.0 + ze;
  if (std::abs(denom) <= kDirichletDenominator) return ExtendedReal::infinity();
  return sign * 2.0 * ze.imag() / (l0 * std::norm(denom));
}

}  // namespace

ConstraintViolation::ConstraintViolation(std::string field, double residual)
    : Error("ConstraintViolation", ErrorClass::Validation,
            "constraint on '" + field + "' violated, residual " + std::to_string(residual)),
      field_(std::move(field)),
      residual_(residual) {}

double ExtendedReal::value() const {
  if (infinite_) throw InvalidInput("extended real is infinite");
  return value_;
}

LambdaParams identity_interaction() { return {}; }

LambdaParams delta_interaction(double strength) {
  return {.phi = 0.0, .a = 1.0, .b = 0.0, .c = strength, .d = 1.0};
}

LambdaParams delta_prime_interaction(double strength) {
  return {.phi = 0.0, .a = 1.0, .b = strength, .c = 0.0, .d = 1.0};
}

const UnitaryParams& validate(const UnitaryParams& u) {
  require_angle(u.theta, "theta");
  require_finite(u.z.real(), "z");
  require_finite(u.z.imag(), "z");
  require_finite(u.w.real(), "w");
  require_finite(u.w.imag(), "w");
  const double residual = std::abs(std::norm(u.z) + std::norm(u.w) - 1.0);
  if (residual > tolerance::kValidation) throw ConstraintViolation("|z|^2+|w|^2", residual);
  return u;
}

const LambdaParams& validate(const LambdaParams& p) {
  require_angle(p.phi, "phi");
  require_finite(p.a, "a");
  require_finite(p.b, "b");
  require_finite(p.c, "c");
  require_finite(p.d, "d");
  const double residual = std::abs(p.a * p.d - p.b * p.c - 1.0);
  if (residual > tolerance::kValidation) throw ConstraintViolation("ad-bc", residual);
  return p;
}

const SeparatedParams& validate(const SeparatedParams& p) {
  if (!p.h_plus.is_infinite() && !p.h_plus.is_finite()) throw InvalidInput("h_plus is NaN");
  if (!p.h_minus.is_infinite() && !p.h_minus.is_finite()) throw InvalidInput("h_minus is NaN");
  return p;
}

const InteractionParams& validate(const InteractionParams& params) {
  std::visit([](const auto& p) { validate(p); }, params);
  return params;
}

Matrix2c unitary_matrix(const UnitaryParams& u) {
  Matrix2c m;
  m << u.z, u.w, -std::conj(u.w), std::conj(u.z);
  return std::exp(kI * u.theta) * m;
}

BoundaryMatrix boundary_matrix(const LambdaParams& p) {
  validate(p);
  Matrix2c m;
  m << p.a, p.b, p.c, p.d;
  return {std::exp(kI * p.phi) * m, MatrixKind::NonRelativistic};
}

PhaseReduction reduce_lambda(const Matrix2c& lambda) {
  const Complex det = lambda.determinant();
  double phi = 0.5 * std::arg(det);
  if (phi < 0.0) phi += kPi;
  if (phi >= kPi - kPhaseFold) phi = 0.0;

  const Matrix2c real_form = std::exp(-kI * phi) * lambda;
  PhaseReduction out;
  out.params = {.phi = phi,
                .a = real_form(0, 0).real(),
                .b = real_form(0, 1).real(),
                .c = real_form(1, 0).real(),
                .d = real_form(1, 1).real()};
  out.imag_residual = real_form.imag().cwiseAbs().maxCoeff();
  out.det_residual =
      std::abs(out.params.a * out.params.d - out.params.b * out.params.c - 1.0);
  return out;
}

InteractionParams unitary_to_interaction(const UnitaryParams& u, double l0) {
  validate(u);
  require_length(l0);

  if (std::abs(u.w) <= tolerance::kSeparatedW) {
    const Complex e = std::exp(kI * u.theta);
    return SeparatedParams{.h_plus = separated_h(u.z * e, 1.0, l0),
                           .h_minus = separated_h(std::conj(u.z) * e, -1.0, l0)};
  }

  const double s = std::sin(u.theta);
  const double c = std::cos(u.theta);
  Matrix2c n;
  n << s - u.z.imag(), l0 * (c + u.z.real()), (u.z.real() - c) / l0, s + u.z.imag();
  return reduce_lambda(kI / std::conj(u.w) * n).params;
}

std::optional<std::string> conditioning_warning(const UnitaryParams& u) {
  const double w = std::abs(u.w);
  if (w > tolerance::kSeparatedW && w < tolerance::kConditioningW) {
    return "|w| = " + std::to_string(w) +
           " is close to the separated branch; Lambda is ill-conditioned";
  }
  return std::nullopt;
}

UnitaryParams lambda_to_unitary(const LambdaParams& p, double l0) {
  validate(p);
  require_length(l0);

  // Match (i/w*) N(theta, z) = e^{i phi} M with N real:
  //   N = sigma |w| M,  e^{i(pi/2 + arg w)} = sigma e^{i phi},  sigma = +-1
  // and pick sigma so that sin(theta) >= 0.
  const double trace = p.a + p.d;
  const double skew = p.b / l0 - p.c * l0;
  const double rho = 2.0 / std::hypot(trace, skew);
  const double sigma = (trace > 0.0 || (trace == 0.0 && skew >= 0.0)) ? 1.0 : -1.0;

  const double sin_theta = sigma * rho * trace / 2.0;
  const double cos_theta = sigma * rho * skew / 2.0;
  UnitaryParams u;
  u.theta = std::atan2(sin_theta, cos_theta);
  if (u.theta >= kPi) u.theta = 0.0;
  u.z = {sigma * rho * (p.b / l0 + p.c * l0) / 2.0, sigma * rho * (p.d - p.a) / 2.0};
  const double arg_w = p.phi + (sigma < 0.0 ? kPi : 0.0) - kPi / 2.0;
  u.w = std::polar(rho, arg_w);

  const InteractionParams forward = unitary_to_interaction(u, l0);
  const auto* back = std::get_if<LambdaParams>(&forward);
  if (back == nullptr) {
    throw NoPreimage("preimage fell on the separated branch (|w| = " +
                     std::to_string(rho) + ")");
  }
  const double residual = distance(*back, p);
  if (residual > tolerance::kPreimage) {
    throw NoPreimage("round-trip residual " + std::to_string(residual));
  }
  return u;
}

InteractionParams canonical(const InteractionParams& params, double l0) {
  if (const auto* u = std::get_if<UnitaryParams>(&params)) {
    return unitary_to_interaction(*u, l0);
  }
  validate(params);
  return params;
}

double distance(const LambdaParams& x, const LambdaParams& y) {
  return std::max({std::abs(x.phi - y.phi), std::abs(x.a - y.a), std::abs(x.b - y.b),
                   std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

}  // namespace pointint
