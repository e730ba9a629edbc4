#include <cmath>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "pointint/error.hpp"
#include "pointint/parity.hpp"
#include "pointint/schrodinger.hpp"
#include "random_params.hpp"

using namespace pointint;
using namespace pointint::parity;

namespace {

const std::vector<double> kGrid{0.5, 1.0, 2.0};

// Boundary matrix of the mirror-image problem psi(-x): sigma3 Lambda^{-1} sigma3.
Matrix2c mirrored(const Matrix2c& lambda) {
  Matrix2c s3;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return s3 * lambda.inverse() * s3;
}

}  // namespace

TEST(Classify, NamedMembers) {
  EXPECT_EQ(classify(identity_interaction()), ParityClass::Even);
  EXPECT_EQ(classify(delta_interaction(-2.0)), ParityClass::Even);
  EXPECT_EQ(classify(delta_prime_interaction(0.4)), ParityClass::Even);
  EXPECT_EQ(classify(LambdaParams{.phi = 0.0, .a = 2.0, .b = 0.0, .c = 0.0, .d = 0.5}),
            ParityClass::NoDefiniteParity);
  EXPECT_EQ(classify(LambdaParams{.phi = 0.3, .a = 1.0, .b = 0.0, .c = 1.0, .d = 1.0}),
            ParityClass::NoDefiniteParity);
}

TEST(Classify, Separated) {
  EXPECT_EQ(classify(SeparatedParams{1.5, -1.5}), ParityClass::Even);
  EXPECT_EQ(classify(SeparatedParams{ExtendedReal::infinity(), ExtendedReal::infinity()}),
            ParityClass::Even);
  EXPECT_EQ(classify(SeparatedParams{1.5, 1.5}), ParityClass::NoDefiniteParity);
  const InteractionParams mixed = SeparatedParams{ExtendedReal::infinity(), 0.3};
  EXPECT_EQ(classify(mixed), ParityClass::NoDefiniteParity);
  EXPECT_TRUE(is_mixed_separated(mixed));
  EXPECT_FALSE(is_mixed_separated(SeparatedParams{1.0, 2.0}));
}

TEST(Classify, AgreesWithMirroredMatrix) {
  std::mt19937_64 rng(51);
  int even = 0;
  for (int i = 0; i < 2000; ++i) {
    LambdaParams p = pointint::testing::random_lambda(rng);
    if (i % 3 == 0) {
      // Force an even member: phi = 0, a = d.
      p.phi = 0.0;
      p.d = p.a;
      p.c = (p.a * p.d - 1.0) / p.b;
    }
    const Matrix2c lambda = boundary_matrix(p).entries;
    const bool mirror_even = (mirrored(lambda) - lambda).cwiseAbs().maxCoeff() <
                             1e-9 * (1.0 + lambda.cwiseAbs().maxCoeff());
    EXPECT_EQ(classify(p, 1e-9) == ParityClass::Even, mirror_even) << i;
    even += mirror_even;
  }
  EXPECT_GT(even, 500);
}

TEST(Classify, UnitaryMatchesLambda) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 500; ++i) {
    UnitaryParams u = pointint::testing::random_unitary(rng, 1e-3);
    if (i % 2 == 0) {
      u.z = {std::abs(u.z), 0.0};
      u.w = {0.0, std::abs(u.w)};
    }
    const auto induced = unitary_to_interaction(u);
    EXPECT_EQ(classify(u, 1e-9), classify(induced, 1e-9)) << i;
  }
}

TEST(OddCondition, AnalyticPointIsIdentity) {
  const auto check = odd_condition_check(UnitaryParams{kPi / 2, 0.0, Complex(0.0, -1.0)});
  EXPECT_TRUE(check.is_odd_candidate);
  EXPECT_TRUE(check.lambda_is_identity);
  EXPECT_LT(check.identity_distance, 1e-10);
}

TEST(OddCondition, ReducedForm) {
  // U + sigma1 U sigma1 = 2 sigma1 is the reduced form of the odd condition.
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const UnitaryParams u = random_unitary(rng);
    Matrix2c s1;
    s1 << 0.0, 1.0, 1.0, 0.0;
    const double reduced = (unitary_matrix(u) + reflected_unitary(u) - 2.0 * s1).cwiseAbs().maxCoeff();
    // The residual is A2 (2 sigma1 - U - U~); A2 and its inverse bound it both ways.
    EXPECT_LE(odd_residual(u), reduced + 1e-14);
    EXPECT_GE(odd_residual(u), 0.5 * reduced - 1e-14);
  }
}

TEST(OddSearch, FindsNoNonTrivialOddInteraction) {
  const auto report = odd_search(100000, 42);
  EXPECT_EQ(report.samples, 100000u);
  EXPECT_EQ(report.non_identity_candidates, 0u);
  EXPECT_TRUE(report.all_identity);
  EXPECT_TRUE(report.analytic_point.lambda_is_identity);
  EXPECT_GT(report.min_odd_residual, 0.0);
}

TEST(OddSearch, Deterministic) {
  const auto a = odd_search(5000, 9);
  const auto b = odd_search(5000, 9);
  EXPECT_EQ(a.min_odd_residual, b.min_odd_residual);
}

TEST(ReflectionSymmetry, EvenMembersAreSymmetric) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 300; ++i) {
    LambdaParams p = pointint::testing::random_lambda(rng);
    p.phi = 0.0;
    p.d = p.a;
    p.c = (p.a * p.d - 1.0) / p.b;
    ASSERT_EQ(classify(p), ParityClass::Even);
    const auto sym = reflection_symmetry_test(p, kGrid);
    EXPECT_LT(sym.max_r_asymmetry, 1e-10);
    EXPECT_LT(sym.max_t_asymmetry, 1e-10);
  }
  const auto walls = reflection_symmetry_test(SeparatedParams{0.8, -0.8}, kGrid);
  EXPECT_LT(walls.max_r_asymmetry, 1e-14);
}

TEST(ReflectionSymmetry, UnequalDiagonalBreaksSymmetry) {
  const auto sym =
      reflection_symmetry_test(LambdaParams{.phi = 0.0, .a = 2.0, .b = 0.0, .c = 0.0, .d = 0.5}, kGrid);
  EXPECT_GT(sym.max_r_asymmetry, 1e-3);
}

TEST(ReflectionSymmetry, EmptyGrid) {
  EXPECT_THROW(reflection_symmetry_test(identity_interaction(), {}), InvalidInput);
}

TEST(RandomDraws, ValidAndSpread) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_NO_THROW(validate(random_unitary(rng)));
    EXPECT_NO_THROW(validate(random_lambda(rng)));
  }
}
