#include <gtest/gtest.h>

#include <random>

#include "kmsent/functionals.hpp"

using namespace kmsent;

namespace {
const GaussianProfile kProfile(1.0, 1.0);
}

TEST(GaussianProfile, RealRadialAndValidated) {
  const GaussianProfile g(2.0, 0.5);
  EXPECT_DOUBLE_EQ(g(0.0), 2.0);
  EXPECT_DOUBLE_EQ(g(0.5), 2.0 * std::exp(-0.5));
  EXPECT_EQ(g(1.3), g(-1.3));
  EXPECT_THROW(GaussianProfile(1.0, 0.0), configuration_error);
}

TEST(SharedProfileFunctional, ValidatesCoefficients) {
  EXPECT_THROW(SharedProfileFunctional({}, kProfile), configuration_error);
  EXPECT_THROW(SharedProfileFunctional({1, 2, 3, 4}, kProfile), configuration_error);
  EXPECT_THROW(SharedProfileFunctional({NAN}, kProfile), configuration_error);
  const auto z = SharedProfileFunctional::zero(kProfile, 2);
  EXPECT_EQ(z.orders(), 2u);
  EXPECT_EQ(z.coeff(1), 0.0);
  EXPECT_EQ(z.coeff(2), 0.0);
}

TEST(Combine, StatedExamples) {
  const SharedProfileFunctional k1({1.0, 0.0}, kProfile), k2({0.0, 0.0}, kProfile), k3({0.0, 1.0}, kProfile);
  const FCoefficients f = combine(k1, k2, k3);
  EXPECT_EQ(f.a, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(f.b, (std::vector<double>{1.0, -1.0}));

  const FCoefficients same = combine(k1, k2, k1);
  for (double b : same.b) EXPECT_EQ(b, 0.0);
  const FCoefficients all = combine(k3, k3, k3);
  for (std::size_t l = 0; l < 2; ++l) {
    EXPECT_EQ(all.a[l], 0.0);
    EXPECT_EQ(all.b[l], 0.0);
  }
}

TEST(Combine, ExactLinearFormsAndSwap) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> c1(3), c2(3), c3(3);
    for (int l = 0; l < 3; ++l) {
      c1[l] = u(rng);
      c2[l] = u(rng);
      c3[l] = u(rng);
    }
    const SharedProfileFunctional k1(c1, kProfile), k2(c2, kProfile), k3(c3, kProfile);
    const FCoefficients f = combine(k1, k2, k3);
    const FCoefficients swapped = combine(k3, k2, k1);
    for (int l = 0; l < 3; ++l) {
      EXPECT_EQ(f.a[l], c1[l] + c3[l] - 2.0 * c2[l]);
      EXPECT_EQ(f.b[l], c1[l] - c3[l]);
      EXPECT_EQ(swapped.b[l], -f.b[l]);
      EXPECT_EQ(swapped.a[l], f.a[l]);
    }
  }
}

TEST(Combine, RejectsMismatch) {
  const SharedProfileFunctional k1({1.0}, kProfile);
  const SharedProfileFunctional other_profile({1.0}, GaussianProfile(1.0, 2.0));
  const SharedProfileFunctional other_order({1.0, 0.0}, kProfile);
  EXPECT_THROW(combine(k1, k1, other_profile), configuration_error);
  EXPECT_THROW(combine(k1, other_order, k1), configuration_error);
}

TEST(ValidateSelfAdjoint, AlwaysHoldsInThisRepresentation) {
  EXPECT_TRUE(validate_self_adjoint(SharedProfileFunctional({1.0, -2.0}, kProfile)));
  EXPECT_TRUE(validate_self_adjoint(SharedProfileFunctional::zero(kProfile, 3)));
  EXPECT_TRUE(validate_self_adjoint(SharedProfileFunctional({0.5}, GaussianProfile(-1.0, 1.0))));
}
