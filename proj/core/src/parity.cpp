#include "pointint/parity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "pointint/error.hpp"
#include "pointint/schrodinger.hpp"

namespace pointint::parity {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix2c sigma1() {
  Matrix2c s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

// Current-splitting matrices at L0 = 1.
Matrix2c a1() {
  Matrix2c m;
  m << -kI, kI, 1.0, 1.0;
  return 0.5 * m;
}

Matrix2c a2() {
  Matrix2c m;
  m << kI, -kI, 1.0, 1.0;
  return 0.5 * m;
}

bool near(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

const char* to_string(ParityClass value) {
  return value == ParityClass::Even ? "even" : "no-definite-parity";
}

ParityClass classify(const InteractionParams& params, double tol) {
  validate(params);
  if (const auto* u = std::get_if<UnitaryParams>(&params)) {
    const bool even = std::abs(u->z.imag()) <= tol && std::abs(u->w.real()) <= tol;
    return even ? ParityClass::Even : ParityClass::NoDefiniteParity;
  }
  if (const auto* p = std::get_if<LambdaParams>(&params)) {
    // phi close to pi is the same interaction as phi = 0 with M negated.
    const bool real_phase = p->phi <= tol || p->phi >= kPi - tol;
    return real_phase && near(p->a, p->d, tol) ? ParityClass::Even : ParityClass::NoDefiniteParity;
  }
  const auto& s = std::get<SeparatedParams>(params);
  if (s.h_plus.is_infinite() && s.h_minus.is_infinite()) return ParityClass::Even;
  if (s.h_plus.is_finite() && s.h_minus.is_finite() &&
      near(s.h_plus.value(), -s.h_minus.value(), tol)) {
    return ParityClass::Even;
  }
  return ParityClass::NoDefiniteParity;
}

bool is_mixed_separated(const InteractionParams& params) {
  const auto* s = std::get_if<SeparatedParams>(&params);
  return s != nullptr && s->h_plus.is_infinite() != s->h_minus.is_infinite();
}

Matrix2c reflected_unitary(const UnitaryParams& u) {
  const Matrix2c s1 = sigma1();
  return s1 * unitary_matrix(u) * s1;
}

double odd_residual(const UnitaryParams& u) {
  const Matrix2c lhs = a1() - a2() * reflected_unitary(u);
  const Matrix2c rhs = a1() - a2() * unitary_matrix(u);
  return (lhs + rhs).cwiseAbs().maxCoeff();
}

OddCheck odd_condition_check(const UnitaryParams& u, double odd_tol, double identity_tol) {
  validate(u);
  OddCheck out;
  out.odd_residual = odd_residual(u);
  out.is_odd_candidate = out.odd_residual < odd_tol;

  const InteractionParams induced = unitary_to_interaction(u);
  if (const auto* p = std::get_if<LambdaParams>(&induced)) {
    out.identity_distance =
        (boundary_matrix(*p).entries - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  } else {
    out.identity_distance = std::numeric_limits<double>::infinity();
  }
  out.lambda_is_identity = out.identity_distance < identity_tol;
  return out;
}

UnitaryParams random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::normal_distribution<double> gauss;
  double v[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      norm += x * x;
    }
  } while (norm < 1e-24);
  norm = std::sqrt(norm);
  UnitaryParams u;
  u.theta = angle(rng);
  u.z = {v[0] / norm, v[1] / norm};
  u.w = {v[2] / norm, v[3] / norm};
  return u;
}

LambdaParams random_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, kPi);
  std::uniform_real_distribution<double> rotation(0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss;
  const double phi = phase(rng);
  const double alpha = rotation(rng);
  const double s = std::exp(0.7 * gauss(rng));
  const double shear = gauss(rng);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  // R(alpha) * [[s, s*shear], [0, 1/s]]
  return {.phi = phi,
          .a = ca * s,
          .b = ca * s * shear - sa / s,
          .c = sa * s,
          .d = sa * s * shear + ca / s};
}

OddSearchReport odd_search(std::uint64_t samples, std::uint64_t seed) {
  OddSearchReport report;
  report.samples = samples;
  report.seed = seed;
  report.analytic_point = odd_condition_check(UnitaryParams{kPi / 2, 0.0, Complex(0.0, -1.0)});
  report.min_odd_residual = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const UnitaryParams u = random_unitary(rng);
    const double residual = odd_residual(u);
    report.min_odd_residual = std::min(report.min_odd_residual, residual);
    if (residual >= 1e-10) continue;
    ++report.odd_candidates_found;
    if (!odd_condition_check(u).lambda_is_identity) ++report.non_identity_candidates;
  }
  report.all_identity = report.non_identity_candidates == 0;
  return report;
}

SymmetryReport reflection_symmetry_test(const InteractionParams& params,
                                        std::span<const double> k_grid, double l0) {
  if (k_grid.empty()) throw InvalidInput("k grid is empty");
  SymmetryReport report;
  for (double k : k_grid) {
    const auto left = schrodinger::scatter(params, k, Side::Left, l0);
    const auto right = schrodinger::scatter(params, k, Side::Right, l0);
    report.max_r_asymmetry = std::max(report.max_r_asymmetry, std::abs(left.r - right.r));
    report.max_t_asymmetry = std::max(report.max_t_asymmetry, std::abs(left.t - right.t));
  }
  return report;
}

}  // namespace pointint::parity
