#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "pointint/dirac.hpp"
#include "pointint/error.hpp"
#include "pointint/regularization.hpp"
#include "pointint/schrodinger.hpp"
#include "random_params.hpp"

using namespace pointint;
using namespace pointint::dirac;

namespace {

constexpr Complex kI{0.0, 1.0};

// LU solve of Lambda_r [(1, lam) + r (1, -lam)] = t (1, lam).
std::pair<Complex, Complex> brute_force_left(const Matrix2c& lambda, double energy, double mass) {
  const double k = std::sqrt(energy * energy - mass * mass);
  const double lam = k / (energy + mass);
  Matrix2c a;
  a.col(0) = lambda * Vector2c(1.0, -lam);
  a.col(1) = -Vector2c(1.0, lam);
  const Vector2c x = a.fullPivLu().solve(-lambda * Vector2c(1.0, lam));
  return {x(0), x(1)};
}

double delta_r(double eps) {
  const double m = 1.0;
  const double energy = m * (1.0 + eps);
  const DiracParams p = mixed_interaction(1.0);
  const auto rel = dirac_scatter(p, energy, m, Side::Left);
  const double k_nr = std::sqrt(2.0 * m * (energy - m));
  const auto nr = schrodinger::scatter(to_nonrelativistic(p, m), k_nr, Side::Left);
  return std::abs(rel.r - nr.r);
}

}  // namespace

TEST(BuildLambda, NamedMembers) {
  const auto id = build_lambda_r(DiracLambdaParams{}).entries;
  EXPECT_LT((id - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);

  const double g = 3.0;
  Matrix2c mixed;
  mixed << 1.0, 0.0, -kI * g, 1.0;
  EXPECT_LT((build_lambda_r(mixed_interaction(g)).entries - mixed).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(build_lambda_r(mixed_interaction(g)).kind, MatrixKind::Relativistic);

  Matrix2c inverted;
  inverted << 1.0, -kI * g, 0.0, 1.0;
  EXPECT_LT((build_lambda_r(inverted_mixed_interaction(g)).entries - inverted).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_THROW(build_lambda_r(DiracSeparatedParams{1.0, 2.0}), WrongVariant);
}

TEST(DiracScatter, FreeParticle) {
  const auto res = dirac_scatter(DiracLambdaParams{}, 2.0, 1.0, Side::Left);
  EXPECT_LT(std::abs(res.r), 1e-15);
  EXPECT_LT(std::abs(res.t - 1.0), 1e-15);
}

TEST(DiracScatter, MatchesLuOracle) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const auto p = pointint::testing::random_dirac_lambda(rng);
    const auto res = dirac_scatter(p, 3.0, 1.0, Side::Left);
    const auto [r, t] = brute_force_left(build_lambda_r(p).entries, 3.0, 1.0);
    EXPECT_LT(std::abs(res.r - r), 1e-10);
    EXPECT_LT(std::abs(res.t - t), 1e-10);
  }
}

TEST(DiracScatter, UnitarityAndCurrent) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 1000; ++i) {
    const auto p = pointint::testing::random_dirac_lambda(rng);
    for (Side side : {Side::Left, Side::Right}) {
      const auto res = dirac_scatter(p, 3.0, 1.0, side);
      EXPECT_LT(res.unitarity_residual(), 1e-10);
      EXPECT_NEAR(current(left_state(res)), current(right_state(res)), 1e-10);
    }
  }
}

TEST(DiracScatter, AgreesWithUReduction) {
  std::mt19937_64 rng(63);
  const double m = 1.3;
  for (int i = 0; i < 200; ++i) {
    const DiracParams p = pointint::testing::random_dirac_lambda(rng);
    const double energy = 2.1;
    const double k = std::sqrt(energy * energy - m * m);
    for (Side side : {Side::Left, Side::Right}) {
      const auto rel = dirac_scatter(p, energy, m, side);
      const auto nr = schrodinger::scatter(u_reduced_params(p, energy, m), k, side);
      EXPECT_LT(std::abs(rel.r - nr.r), 1e-10);
      EXPECT_LT(std::abs(rel.t - nr.t), 1e-10);
    }
  }
}

TEST(DiracScatter, UCurrentEquivalence) {
  std::mt19937_64 rng(64);
  const double m = 1.0;
  const double energy = 2.5;
  for (int i = 0; i < 100; ++i) {
    const auto res = dirac_scatter(pointint::testing::random_dirac_lambda(rng), energy, m, Side::Left);
    for (const auto& s : {left_state(res), right_state(res)}) {
      // u' = i (E + m) v
      const schrodinger::BoundaryState u{s.u, kI * (energy + m) * s.v, s.side};
      EXPECT_NEAR(current(s), schrodinger::current(u) / (energy + m), 1e-12);
    }
  }
}

TEST(DiracScatter, SeparatedWalls) {
  const DiracSeparatedParams walls{0.4, ExtendedReal::infinity()};
  const auto left = dirac_scatter(walls, 2.0, 1.0, Side::Left);
  EXPECT_EQ(left.t, Complex(0.0));
  EXPECT_NEAR(std::abs(left.r), 1.0, 1e-14);
  const auto right = dirac_scatter(walls, 2.0, 1.0, Side::Right);
  const auto rs = right_state(right);
  // v(0+) = i h_r+ u(0+)
  EXPECT_LT(std::abs(rs.v - kI * 0.4 * rs.u), 1e-14);
}

TEST(DiracScatter, GapAndNegativeEnergy) {
  EXPECT_THROW(dirac_scatter(DiracLambdaParams{}, 0.5, 1.0, Side::Left), BelowGap);
  EXPECT_THROW(dirac_scatter(DiracLambdaParams{}, 1.0, 1.0, Side::Left), BelowGap);
  EXPECT_THROW(dirac_scatter(DiracLambdaParams{}, -2.0, 1.0, Side::Left), BelowGap);
  EXPECT_NO_THROW(dirac_scatter(DiracLambdaParams{}, -2.0, 1.0, Side::Left, {.allow_negative_energy = true}));
}

TEST(DiracScatter, ConfinementMonotone) {
  const double energy = std::sqrt(2.0);
  double previous = 1.0;
  for (int i = 0; i <= 30; ++i) {
    const double gamma = std::pow(10.0, 3.0 * i / 30.0);
    const double t2 = dirac_scatter(mixed_interaction(gamma), energy, 1.0, Side::Left).transmission();
    EXPECT_LT(t2, previous);
    previous = t2;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(DiracScatter, NonRelativisticLimit) {
  const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> err;
  for (double e : eps) err.push_back(delta_r(e));
  for (double order : regularization::empirical_orders(eps, err)) EXPECT_GE(order, 1.0);
}

TEST(DiracBound, MixedWellAnalytic) {
  // mu = -gamma / 2, E = m (1 - mu^2) / (1 + mu^2)
  const double m = 1.0;
  for (double gamma : {-0.1, -1.0, -3.0}) {
    const auto states = dirac_bound_states(mixed_interaction(gamma), m);
    ASSERT_EQ(states.size(), 1u);
    const double mu = -gamma / 2.0;
    EXPECT_NEAR(states[0].energy, m * (1.0 - mu * mu) / (1.0 + mu * mu), 1e-9);
  }
  EXPECT_TRUE(dirac_bound_states(mixed_interaction(1.0), m).empty());
  EXPECT_TRUE(dirac_bound_states(DiracLambdaParams{}, m).empty());
}

TEST(DiracBound, MonotoneInCoupling) {
  double previous = -2.0;
  for (int i = 0; i <= 29; ++i) {
    const double gamma = -3.0 + 2.9 * i / 29.0;
    const auto states = dirac_bound_states(mixed_interaction(gamma), 1.0);
    ASSERT_EQ(states.size(), 1u) << gamma;
    EXPECT_GT(states[0].energy, previous);
    previous = states[0].energy;
  }
}

TEST(DiracBound, WeakBindingApproachesSchrodinger) {
  // Binding energy m - E against kappa_nr^2 / 2m for the mapped delta member.
  const double m = 1.0;
  for (double gamma : {-0.2, -0.1, -0.05}) {
    const auto rel = dirac_bound_states(mixed_interaction(gamma), m);
    const auto nr = schrodinger::bound_states(to_nonrelativistic(mixed_interaction(gamma), m));
    ASSERT_EQ(rel.size(), 1u);
    ASSERT_EQ(nr.size(), 1u);
    const double binding_nr = nr[0].kappa * nr[0].kappa / (2.0 * m);
    EXPECT_NEAR((m - rel[0].energy) / binding_nr, 1.0, 2.0 * std::abs(gamma));
  }
}

TEST(DiracBound, MatchesDecayRateQuadratic) {
  // Decaying spinors need b mu^2 + (a + d) mu + c = 0 with mu > 0, and
  // E = m (1 - mu^2) / (1 + mu^2).
  std::mt19937_64 rng(65);
  int found = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = pointint::testing::random_dirac_lambda(rng);
    std::vector<double> expected;
    const double qa = p.b_r;
    const double qb = p.a_r + p.d_r;
    const double qc = p.c_r;
    std::vector<double> mus;
    if (std::abs(qa) < 1e-300) {
      mus.push_back(-qc / qb);
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
        mus.push_back(q / qa);
        if (q != 0.0) mus.push_back(qc / q);
      }
    }
    for (double mu : mus) {
      if (mu > 0.0) expected.push_back((1.0 - mu * mu) / (1.0 + mu * mu));
    }
    std::sort(expected.begin(), expected.end());
    const auto states = dirac_bound_states(p, 1.0);
    std::vector<double> got;
    for (const auto& s : states) {
      got.push_back(s.energy);
      EXPECT_NEAR(s.kappa_r, std::sqrt(1.0 - s.energy * s.energy), 1e-12);
    }
    std::sort(got.begin(), got.end());
    // Roots pressed against the gap edges are invisible to the scan.
    std::erase_if(expected, [](double e) { return std::abs(e) > 1.0 - 1e-6; });
    std::erase_if(got, [](double e) { return std::abs(e) > 1.0 - 1e-6; });
    ASSERT_EQ(got.size(), expected.size()) << "sample " << i;
    for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], expected[j], 1e-9) << i;
    found += static_cast<int>(got.size());
  }
  EXPECT_GT(found, 50);
}

TEST(DiracBound, SeparatedClosedForm) {
  // Right wall: mu = h_r+ > 0; left wall: mu = -h_r- > 0.
  const auto states = dirac_bound_states(DiracSeparatedParams{0.5, 2.0}, 1.0);
  ASSERT_EQ(states.size(), 1u);
  EXPECT_NEAR(states[0].energy, (1.0 - 0.25) / (1.0 + 0.25), 1e-12);
}

TEST(InteractionSpinor, MixedInteraction) {
  const double g = 2.5;
  const BoundaryState left{1.0, 0.0, Side::Left};
  const auto omega = interaction_spinor(mixed_interaction(g), left);
  EXPECT_LT(std::abs(omega.phi0 - g), 1e-15);
  EXPECT_LT(std::abs(omega.phi1), 1e-15);
  const auto id = interaction_spinor(DiracLambdaParams{}, left);
  EXPECT_LT(std::abs(id.phi0) + std::abs(id.phi1), 1e-15);
}

TEST(InteractionSpinor, ReconstructsJump) {
  std::mt19937_64 rng(66);
  for (int i = 0; i < 300; ++i) {
    const DiracParams p = pointint::testing::random_dirac_lambda(rng);
    const auto res = dirac_scatter(p, 2.2, 1.0, i % 2 ? Side::Left : Side::Right);
    const auto l = left_state(res);
    const auto r = right_state(res);
    const Vector2c jump(r.u - l.u, r.v - l.v);
    for (const auto& omega : {interaction_spinor(p, l), interaction_spinor(p, r), interaction_spinor(p, l, r)}) {
      EXPECT_LT((spinor_jump(omega) - jump).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(InteractionSpinor, SeparatedNeedsBothSides) {
  const DiracParams walls = DiracSeparatedParams{0.3, -1.2};
  const auto res = dirac_scatter(walls, 2.0, 1.0, Side::Left);
  const auto l = left_state(res);
  const auto r = right_state(res);
  EXPECT_THROW(interaction_spinor(walls, l), SideMismatch);
  const auto omega = interaction_spinor(walls, l, r);
  const Vector2c jump(r.u - l.u, r.v - l.v);
  EXPECT_LT((spinor_jump(omega) - jump).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Correspondence, NamedMembers) {
  const double m = 0.7;
  const double g = 1.9;
  const auto delta = std::get<LambdaParams>(to_nonrelativistic(mixed_interaction(g), m));
  EXPECT_NEAR(delta.c, 2.0 * m * g, 1e-15);
  EXPECT_NEAR(delta.b, 0.0, 1e-15);
  const auto dp = std::get<LambdaParams>(to_nonrelativistic(inverted_mixed_interaction(g), m));
  EXPECT_NEAR(dp.b, -g / (2.0 * m), 1e-15);
  const auto id = std::get<LambdaParams>(to_nonrelativistic(DiracLambdaParams{}, m));
  EXPECT_LT(distance(id, identity_interaction()), 1e-15);

  const auto sep = std::get<SeparatedParams>(
      to_nonrelativistic(DiracSeparatedParams{0.5, ExtendedReal::infinity()}, m));
  EXPECT_NEAR(sep.h_plus.value(), -2.0 * m * 0.5, 1e-15);
  EXPECT_TRUE(sep.h_minus.is_infinite());
}

TEST(Correspondence, UReductionTendsToMap) {
  const DiracParams p = DiracLambdaParams{0.2, 1.5, 0.3, 0.4, (1.0 + 0.3 * 0.4) / 1.5};
  const auto limit = std::get<LambdaParams>(to_nonrelativistic(p, 1.0));
  const auto near = std::get<LambdaParams>(u_reduced_params(p, 1.0 + 1e-9, 1.0));
  EXPECT_LT(distance(limit, near), 1e-8);
}

TEST(DiracParity, MatchesMappedClassification) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 500; ++i) {
    auto p = pointint::testing::random_dirac_lambda(rng);
    if (i % 2 == 0) {
      p.phi_r = 0.0;
      p.d_r = p.a_r;
      p.c_r = (p.a_r * p.d_r - 1.0) / p.b_r;
    }
    EXPECT_EQ(classify(p, 1e-9), parity::classify(to_nonrelativistic(p, 1.0), 1e-9));
    const Matrix2c lambda = build_lambda_r(p).entries;
    const bool reflected_even = (reflected_lambda_r(p) - lambda).cwiseAbs().maxCoeff() <
                                1e-9 * (1.0 + lambda.cwiseAbs().maxCoeff());
    EXPECT_EQ(classify(p, 1e-9) == parity::ParityClass::Even, reflected_even);
  }
  EXPECT_EQ(classify(DiracSeparatedParams{0.5, -0.5}), parity::ParityClass::Even);
  EXPECT_EQ(classify(DiracSeparatedParams{ExtendedReal::infinity(), ExtendedReal::infinity()}),
            parity::ParityClass::Even);
  EXPECT_EQ(classify(DiracSeparatedParams{0.5, 0.5}), parity::ParityClass::NoDefiniteParity);
}

TEST(DiracParity, OnlyIdentityIsOdd) {
  EXPECT_LT(odd_residual(DiracLambdaParams{}), 1e-15);
  const auto report = odd_search(100000, 42);
  EXPECT_EQ(report.non_identity_candidates, 0u);
  EXPECT_LT(report.identity_residual, 1e-15);
  EXPECT_GT(report.min_odd_residual, 0.0);
}

TEST(DiracValidate, RejectsBadParams) {
  EXPECT_THROW(validate(DiracParams{DiracLambdaParams{0.0, 1.0, 1.0, 1.0, 1.0}}), ConstraintViolation);
  EXPECT_THROW(dirac_bound_states(DiracLambdaParams{}, 0.0), InvalidInput);
}
