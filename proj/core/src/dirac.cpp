#include "pointint/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "matching.hpp"
#include "pointint/error.hpp"

namespace pointint::dirac {

namespace {

constexpr Complex kI{0.0, 1.0};

constexpr int kGapScanPoints = 10000;
constexpr double kGapMargin = 1e-9;

Matrix2c sigma1() {
  Matrix2c s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Matrix2c beta() {
  Matrix2c s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

void require_mass(double mass) {
  if (!std::isfinite(mass) || mass <= 0.0) throw InvalidInput("mass must be positive");
}

Matrix2c lambda_r(const DiracLambdaParams& p) {
  Matrix2c m;
  m << p.a_r, kI * p.b_r, -kI * p.c_r, p.d_r;
  return std::exp(kI * p.phi_r) * m;
}

Complex wall_reflection(ExtendedReal h, double lambda, Side side) {
  if (h.is_infinite()) return -1.0;
  const double hv = h.value();
  return side == Side::Left ? (lambda - kI * hv) / (lambda + kI * hv)
                            : (lambda + kI * hv) / (lambda - kI * hv);
}

ScatteringResult finish(ScatteringResult res) {
  res.current_in = current(res.side == Side::Left ? left_state(res) : right_state(res));
  res.current_out = current(res.side == Side::Left ? right_state(res) : left_state(res));
  return res;
}

// (u, i h u) or, for h = inf, the spinor itself.
Vector2c separated_projection(ExtendedReal h, const BoundaryState& s) {
  if (h.is_infinite()) return Vector2c(s.u, s.v);
  return Vector2c(s.u, kI * h.value() * s.u);
}

SpinorCoefficient from_vector(const Vector2c& v) { return {v(0), v(1)}; }

ExtendedReal scale_h(ExtendedReal h, double factor) {
  if (h.is_infinite()) return h;
  return -factor * h.value();
}

bool near(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// E = m (1 - mu^2)/(1 + mu^2) with mu = kappa_r / (E + m).
DiracBoundState gap_state_from_mu(double mu, double mass) {
  const double energy = mass * (1.0 - mu * mu) / (1.0 + mu * mu);
  return {energy, 2.0 * mass * mu / (1.0 + mu * mu)};
}

}  // namespace

DiracLambdaParams mixed_interaction(double gamma) {
  return {.phi_r = 0.0, .a_r = 1.0, .b_r = 0.0, .c_r = gamma, .d_r = 1.0};
}

DiracLambdaParams inverted_mixed_interaction(double gamma) {
  return {.phi_r = 0.0, .a_r = 1.0, .b_r = -gamma, .c_r = 0.0, .d_r = 1.0};
}

const DiracParams& validate(const DiracParams& params) {
  if (const auto* p = std::get_if<DiracLambdaParams>(&params)) {
    // Same constraints as the non-relativistic lambda form.
    validate(LambdaParams{p->phi_r, p->a_r, p->b_r, p->c_r, p->d_r});
  } else {
    const auto& s = std::get<DiracSeparatedParams>(params);
    validate(SeparatedParams{s.h_r_plus, s.h_r_minus});
  }
  return params;
}

BoundaryMatrix build_lambda_r(const DiracParams& params) {
  validate(params);
  const auto* p = std::get_if<DiracLambdaParams>(&params);
  if (p == nullptr) throw WrongVariant("separated Dirac params have no Lambda_r");
  return {lambda_r(*p), MatrixKind::Relativistic};
}

double current(const BoundaryState& state) {
  return 2.0 * (std::conj(state.u) * state.v).real();
}

BoundaryState left_state(const ScatteringResult& result) {
  return {result.boundary_minus(0), result.boundary_minus(1), Side::Left};
}

BoundaryState right_state(const ScatteringResult& result) {
  return {result.boundary_plus(0), result.boundary_plus(1), Side::Right};
}

ScatteringResult dirac_scatter(const DiracParams& params, double energy, double mass, Side side,
                               ScatterOptions options) {
  require_mass(mass);
  validate(params);
  if (!std::isfinite(energy) || std::abs(energy) <= mass) {
    throw BelowGap("energy " + std::to_string(energy) +
                   " lies in the gap; use dirac_bound_states");
  }
  if (energy < -mass && !options.allow_negative_energy) {
    throw BelowGap("negative-energy scattering is disabled");
  }

  const double k = std::sqrt(energy * energy - mass * mass);
  const double lambda = k / (energy + mass);
  const Vector2c forward(1.0, lambda);
  const Vector2c backward(1.0, -lambda);

  ScatteringResult res;
  res.k = k;
  res.side = side;

  if (const auto* sep = std::get_if<DiracSeparatedParams>(&params)) {
    res.t = 0.0;
    if (side == Side::Left) {
      res.r = wall_reflection(sep->h_r_minus, lambda, side);
      res.boundary_minus = forward + res.r * backward;
    } else {
      res.r = wall_reflection(sep->h_r_plus, lambda, side);
      res.boundary_plus = backward + res.r * forward;
    }
    return finish(res);
  }

  detail::AffineBoundary minus;
  detail::AffineBoundary plus;
  if (side == Side::Left) {
    minus.fixed = forward;
    minus.with_r = backward;
    plus.with_t = forward;
  } else {
    plus.fixed = backward;
    plus.with_r = forward;
    minus.with_t = backward;
  }
  const auto [r, t] =
      detail::solve_matching(lambda_r(std::get<DiracLambdaParams>(params)), minus, plus);
  res.r = r;
  res.t = t;
  res.boundary_minus = minus.at(r, t);
  res.boundary_plus = plus.at(r, t);
  return finish(res);
}

double bound_state_determinant(const DiracLambdaParams& p, double energy, double mass) {
  // u = e^{kappa x} (x < 0), e^{-kappa x} (x > 0); v = -i u' / (E + m).
  const double kappa = std::sqrt(std::max(0.0, mass * mass - energy * energy));
  const double mu = kappa / (energy + mass);
  const Vector2c minus(1.0, -kI * mu);
  const Vector2c plus(1.0, kI * mu);
  const Vector2c mapped = lambda_r(p) * minus;
  const Complex det = mapped(0) * plus(1) - mapped(1) * plus(0);
  return (det / (kI * std::exp(kI * p.phi_r))).real();
}

std::vector<DiracBoundState> dirac_bound_states(const DiracParams& params, double mass) {
  require_mass(mass);
  validate(params);
  std::vector<DiracBoundState> states;

  if (const auto* sep = std::get_if<DiracSeparatedParams>(&params)) {
    // Right half-line: v(0+) = i mu u(0+); left: v(0-) = -i mu u(0-).
    if (sep->h_r_plus.is_finite() && sep->h_r_plus.value() > 0.0) {
      states.push_back(gap_state_from_mu(sep->h_r_plus.value(), mass));
    }
    if (sep->h_r_minus.is_finite() && sep->h_r_minus.value() < 0.0) {
      states.push_back(gap_state_from_mu(-sep->h_r_minus.value(), mass));
    }
    std::sort(states.begin(), states.end(),
              [](const auto& x, const auto& y) { return x.energy < y.energy; });
    return states;
  }

  const auto& p = std::get<DiracLambdaParams>(params);
  auto f = [&](double e) { return bound_state_determinant(p, e, mass); };

  const double lo = -mass + kGapMargin * mass;
  const double hi = mass - kGapMargin * mass;
  const double step = (hi - lo) / (kGapScanPoints - 1);
  double prev_e = lo;
  double prev_f = f(lo);
  for (int i = 1; i < kGapScanPoints; ++i) {
    const double e = i == kGapScanPoints - 1 ? hi : lo + i * step;
    const double fe = f(e);
    if (prev_f == 0.0) {
      states.push_back({prev_e, std::sqrt(mass * mass - prev_e * prev_e)});
    } else if (fe != 0.0 && std::signbit(fe) != std::signbit(prev_f)) {
      double a = prev_e;
      double b = e;
      double fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-14 * mass; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      states.push_back({root, std::sqrt(mass * mass - root * root)});
    }
    prev_e = e;
    prev_f = fe;
  }
  if (prev_f == 0.0) states.push_back({prev_e, std::sqrt(mass * mass - prev_e * prev_e)});
  return states;
}

SpinorCoefficient interaction_spinor(const DiracParams& params, const BoundaryState& state) {
  validate(params);
  const auto* p = std::get_if<DiracLambdaParams>(&params);
  if (p == nullptr) {
    throw SideMismatch("separated Dirac interactions need boundary data from both sides");
  }
  const Matrix2c lam = lambda_r(*p);
  const Vector2c psi(state.u, state.v);
  const Matrix2c one = Matrix2c::Identity();
  if (state.side == Side::Left) {
    return from_vector(kI * sigma1() * (lam - one) * psi);
  }
  return from_vector(kI * sigma1() * (one - lam.inverse()) * psi);
}

SpinorCoefficient interaction_spinor(const DiracParams& params, const BoundaryState& left,
                                     const BoundaryState& right) {
  if (left.side != Side::Left || right.side != Side::Right) {
    throw SideMismatch("expected (left, right) boundary states");
  }
  validate(params);
  if (const auto* sep = std::get_if<DiracSeparatedParams>(&params)) {
    return from_vector(kI * sigma1() *
                       (separated_projection(sep->h_r_plus, right) -
                        separated_projection(sep->h_r_minus, left)));
  }
  return interaction_spinor(params, left);
}

Vector2c spinor_jump(const SpinorCoefficient& omega) {
  return -kI * sigma1() * Vector2c(omega.phi0, omega.phi1);
}

InteractionParams to_nonrelativistic(const DiracParams& params, double mass) {
  require_mass(mass);
  validate(params);
  if (const auto* p = std::get_if<DiracLambdaParams>(&params)) {
    return LambdaParams{.phi = p->phi_r,
                        .a = p->a_r,
                        .b = p->b_r / (2.0 * mass),
                        .c = 2.0 * mass * p->c_r,
                        .d = p->d_r};
  }
  const auto& s = std::get<DiracSeparatedParams>(params);
  return SeparatedParams{scale_h(s.h_r_plus, 2.0 * mass), scale_h(s.h_r_minus, 2.0 * mass)};
}

InteractionParams u_reduced_params(const DiracParams& params, double energy, double mass) {
  require_mass(mass);
  validate(params);
  const double e_plus_m = energy + mass;
  if (!std::isfinite(e_plus_m) || e_plus_m == 0.0) {
    throw InvalidInput("u-reduction is singular at E = -m");
  }
  if (const auto* p = std::get_if<DiracLambdaParams>(&params)) {
    return LambdaParams{.phi = p->phi_r,
                        .a = p->a_r,
                        .b = p->b_r / e_plus_m,
                        .c = e_plus_m * p->c_r,
                        .d = p->d_r};
  }
  const auto& s = std::get<DiracSeparatedParams>(params);
  return SeparatedParams{scale_h(s.h_r_plus, e_plus_m), scale_h(s.h_r_minus, e_plus_m)};
}

parity::ParityClass classify(const DiracParams& params, double tol) {
  validate(params);
  if (const auto* p = std::get_if<DiracLambdaParams>(&params)) {
    const bool real_phase = p->phi_r <= tol || p->phi_r >= kPi - tol;
    return real_phase && near(p->a_r, p->d_r, tol) ? parity::ParityClass::Even
                                                   : parity::ParityClass::NoDefiniteParity;
  }
  const auto& s = std::get<DiracSeparatedParams>(params);
  if (s.h_r_plus.is_infinite() && s.h_r_minus.is_infinite()) return parity::ParityClass::Even;
  if (s.h_r_plus.is_finite() && s.h_r_minus.is_finite() &&
      near(s.h_r_plus.value(), -s.h_r_minus.value(), tol)) {
    return parity::ParityClass::Even;
  }
  return parity::ParityClass::NoDefiniteParity;
}

Matrix2c reflected_lambda_r(const DiracLambdaParams& params) {
  return beta() * lambda_r(params).inverse() * beta();
}

double odd_residual(const DiracLambdaParams& params) {
  return (reflected_lambda_r(params) + lambda_r(params) - 2.0 * Matrix2c::Identity())
      .cwiseAbs()
      .maxCoeff();
}

DiracOddSearchReport odd_search(std::uint64_t samples, std::uint64_t seed) {
  DiracOddSearchReport report;
  report.samples = samples;
  report.identity_residual = odd_residual(DiracLambdaParams{});
  report.min_odd_residual = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const LambdaParams sample = parity::random_lambda(rng);
    const DiracLambdaParams p{sample.phi, sample.a, sample.b, sample.c, sample.d};
    const double residual = odd_residual(p);
    report.min_odd_residual = std::min(report.min_odd_residual, residual);
    if (residual >= 1e-10) continue;
    ++report.odd_candidates_found;
    if ((lambda_r(p) - Matrix2c::Identity()).cwiseAbs().maxCoeff() >= 1e-8) {
      ++report.non_identity_candidates;
    }
  }
  return report;
}

}  // namespace pointint::dirac
