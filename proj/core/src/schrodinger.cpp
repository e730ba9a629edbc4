#include "pointint/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "matching.hpp"
#include "pointint/error.hpp"

namespace pointint::schrodinger {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_wavenumber(double k) {
  if (!std::isfinite(k) || k <= 0.0) throw InvalidInput("wavenumber k must be positive");
}

// psi on the incidence side: e^{+-ikx} + r e^{-+ikx}; transmitted: t e^{+-ikx}.
std::pair<detail::AffineBoundary, detail::AffineBoundary> plane_waves(double k, Side side) {
  const Vector2c forward(1.0, kI * k);
  const Vector2c backward(1.0, -kI * k);
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
  return {minus, plus};
}

ScatteringResult finish(ScatteringResult res) {
  res.current_in = current(res.side == Side::Left ? left_state(res) : right_state(res));
  res.current_out = current(res.side == Side::Left ? right_state(res) : left_state(res));
  return res;
}

// r = (ik - h)/(ik + h) on the left wall, (ik + h)/(ik - h) on the right.
Complex wall_reflection(ExtendedReal h, double k, Side side) {
  if (h.is_infinite()) return -1.0;
  const double signed_h = side == Side::Left ? h.value() : -h.value();
  return (kI * k - signed_h) / (kI * k + signed_h);
}

ScatteringResult scatter_separated(const SeparatedParams& p, double k, Side side) {
  ScatteringResult res;
  res.k = k;
  res.side = side;
  res.t = 0.0;
  if (side == Side::Left) {
    res.r = wall_reflection(p.h_minus, k, side);
    res.boundary_minus = Vector2c(1.0 + res.r, kI * k * (1.0 - res.r));
  } else {
    res.r = wall_reflection(p.h_plus, k, side);
    res.boundary_plus = Vector2c(1.0 + res.r, -kI * k * (1.0 - res.r));
  }
  return finish(res);
}

Complex phase(double phi) { return std::exp(kI * phi); }

InteractionCoefficients lambda_coefficients(const LambdaParams& p, const BoundaryState& s,
                                            CoefficientForm form) {
  if (form == CoefficientForm::LeftData) {
    const Complex e = phase(p.phi);
    return {.alpha0 = p.c * e * s.psi + (p.d * e - 1.0) * s.dpsi,
            .alpha1 = (p.a * e - 1.0) * s.psi + p.b * e * s.dpsi};
  }
  const Complex e = phase(-p.phi);
  return {.alpha0 = p.c * e * s.psi - (p.a * e - 1.0) * s.dpsi,
          .alpha1 = -((p.d * e - 1.0) * s.psi - p.b * e * s.dpsi)};
}

// h psi(0) with h = inf read as the boundary derivative itself.
Complex h_times_psi(ExtendedReal h, const BoundaryState& s) {
  return h.is_infinite() ? s.dpsi : h.value() * s.psi;
}

}  // namespace

const char* to_string(BoundSide side) {
  switch (side) {
    case BoundSide::Both:
      return "both";
    case BoundSide::LeftOnly:
      return "left-only";
    case BoundSide::RightOnly:
      return "right-only";
  }
  return "both";
}

double current(const BoundaryState& state) {
  return 2.0 * (std::conj(state.psi) * state.dpsi).imag();
}

BoundaryState left_state(const ScatteringResult& result) {
  return {result.boundary_minus(0), result.boundary_minus(1), Side::Left};
}

BoundaryState right_state(const ScatteringResult& result) {
  return {result.boundary_plus(0), result.boundary_plus(1), Side::Right};
}

ScatteringResult scatter(const BoundaryMatrix& lambda, double k, Side side) {
  require_wavenumber(k);
  const auto [minus, plus] = plane_waves(k, side);
  const auto [r, t] = detail::solve_matching(lambda.entries, minus, plus);
  ScatteringResult res;
  res.r = r;
  res.t = t;
  res.k = k;
  res.side = side;
  res.boundary_minus = minus.at(r, t);
  res.boundary_plus = plus.at(r, t);
  return finish(res);
}

ScatteringResult scatter(const InteractionParams& params, double k, Side side, double l0) {
  require_wavenumber(k);
  const InteractionParams resolved = canonical(params, l0);
  if (const auto* sep = std::get_if<SeparatedParams>(&resolved)) {
    return scatter_separated(*sep, k, side);
  }
  return scatter(boundary_matrix(std::get<LambdaParams>(resolved)), k, side);
}

std::vector<BoundState> bound_states(const InteractionParams& params, double l0) {
  const InteractionParams resolved = canonical(params, l0);
  std::vector<BoundState> states;
  auto add = [&states](double kappa, BoundSide side, int multiplicity = 1) {
    if (kappa > 0.0 && std::isfinite(kappa)) {
      states.push_back({-kappa * kappa, kappa, side, multiplicity});
    }
  };

  if (const auto* sep = std::get_if<SeparatedParams>(&resolved)) {
    if (sep->h_plus.is_finite()) add(-sep->h_plus.value(), BoundSide::RightOnly);
    if (sep->h_minus.is_finite()) add(sep->h_minus.value(), BoundSide::LeftOnly);
    return states;
  }

  // psi = A e^{kappa x} (x < 0), B e^{-kappa x} (x > 0) and
  // B (1, -kappa) = e^{i phi} M A (1, kappa) give a real quadratic; the
  // phase e^{i phi} is absorbed into B.
  const auto& p = std::get<LambdaParams>(resolved);
  const double qa = p.b;
  const double qb = p.a + p.d;
  const double qc = p.c;

  if (qa == 0.0) {
    if (qb == 0.0) {
      if (qc == 0.0) {
        throw NoDiscreteSpectrum("bound-state condition vanishes identically (b = a+d = c = 0)");
      }
      return states;
    }
    add(-qc / qb, BoundSide::Both);
    return states;
  }

  const double disc = qb * qb - 4.0 * qa * qc;
  const double scale = std::max(qb * qb, std::abs(4.0 * qa * qc));
  if (std::abs(disc) <= 1e-14 * scale) {
    add(-qb / (2.0 * qa), BoundSide::Both, 2);
    return states;
  }
  if (disc < 0.0) return states;

  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  add(q / qa, BoundSide::Both);
  if (q != 0.0) add(qc / q, BoundSide::Both);
  std::sort(states.begin(), states.end(),
            [](const BoundState& x, const BoundState& y) { return x.kappa > y.kappa; });
  return states;
}

InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& state, CoefficientForm form,
                                                 double l0) {
  const Side expected = form == CoefficientForm::LeftData ? Side::Left : Side::Right;
  if (state.side != expected) {
    throw SideMismatch(std::string("coefficient form needs ") + pointint::to_string(expected) +
                       " data, got " + pointint::to_string(state.side));
  }
  const InteractionParams resolved = canonical(params, l0);
  if (std::holds_alternative<SeparatedParams>(resolved)) {
    throw SideMismatch("separated interactions need boundary data from both sides");
  }
  return lambda_coefficients(std::get<LambdaParams>(resolved), state, form);
}

InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& state, double l0) {
  return interaction_coefficients(
      params, state,
      state.side == Side::Left ? CoefficientForm::LeftData : CoefficientForm::RightData, l0);
}

InteractionCoefficients interaction_coefficients(const InteractionParams& params,
                                                 const BoundaryState& left,
                                                 const BoundaryState& right, double l0) {
  if (left.side != Side::Left || right.side != Side::Right) {
    throw SideMismatch("expected (left, right) boundary states");
  }
  const InteractionParams resolved = canonical(params, l0);
  if (const auto* sep = std::get_if<SeparatedParams>(&resolved)) {
    return {.alpha0 = h_times_psi(sep->h_plus, right) - h_times_psi(sep->h_minus, left),
            .alpha1 = right.psi - left.psi};
  }
  return lambda_coefficients(std::get<LambdaParams>(resolved), left, CoefficientForm::LeftData);
}

}  // namespace pointint::schrodinger
