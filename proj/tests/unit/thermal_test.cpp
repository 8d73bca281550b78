#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kmsent/thermal.hpp"
#include "kmsent/functionals.hpp"

using namespace kmsent;

TEST(ThermalParams, RejectsNonPhysicalValues) {
  EXPECT_THROW(ThermalParams(0.0, 1.0), domain_error);
  EXPECT_THROW(ThermalParams(-1.0, 1.0), domain_error);
  EXPECT_THROW(ThermalParams(1.0, 0.0), domain_error);
  EXPECT_THROW(ThermalParams(1.0, 1.0, 1), domain_error);
  EXPECT_NO_THROW(ThermalParams(0.3, 2.0, 4));
}

TEST(OnShellPoint, SatisfiesMassShell) {
  const OnShellPoint p(-2.5, 1.5);
  EXPECT_NEAR(p.k() * p.k() + 1.5 * 1.5, p.nu() * p.nu(), 1e-12);
  const auto q = OnShellPoint::from_momentum(3.0, 1.0, false);
  EXPECT_LT(q.nu(), 0.0);
  EXPECT_NEAR(q.nu() * q.nu(), 10.0, 1e-12);
  EXPECT_THROW(OnShellPoint(0.5, 1.0), domain_error);
}

TEST(BoltzmannWeight, MatchesHighPrecisionValue) {
  // e^{-1/2} / (2 (1 - e^{-1})) evaluated with 30-digit arithmetic.
  EXPECT_NEAR(boltzmann_weight(1.0, ThermalParams(1.0, 1.0)), 0.479758687833735929873, 1e-15);
}

TEST(BoltzmannWeight, PositiveAndDecreasing) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta_dist(0.1, 10.0), w_dist(1.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const ThermalParams p(beta_dist(rng), 1.0);
    const double w = w_dist(rng);
    EXPECT_GT(boltzmann_weight(w, p), 0.0);
    EXPECT_LT(boltzmann_weight(2.0 * w, p), boltzmann_weight(w, p));
  }
  const ThermalParams p(0.7, 1.0);
  double previous = boltzmann_weight(1.0, p);
  for (double w = 1.01; w < 20.0; w += 0.01) {
    const double current = boltzmann_weight(w, p);
    EXPECT_LT(current, previous) << "w = " << w;
    previous = current;
  }
}

TEST(BoltzmannWeight, RejectsBelowMassShell) {
  EXPECT_THROW(boltzmann_weight(0.5, ThermalParams(1.0, 1.0)), domain_error);
  EXPECT_THROW(boltzmann_weight(0.0, ThermalParams(1.0, 1.0)), domain_error);
}

TEST(DetailedBalance, ExactExamples) {
  EXPECT_LE(detailed_balance_residual(1.0, 0.0, ThermalParams(1.0, 1.0)), 1e-12);
  EXPECT_LE(detailed_balance_residual(-3.7, 0.0, ThermalParams(0.25, 1.0)), 1e-12);
  EXPECT_THROW(detailed_balance_residual(0.0, 0.0, ThermalParams(1.0, 1.0)), domain_error);
}

TEST(DetailedBalance, RandomScan) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const ThermalParams p(1.3, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double p0 = 0.0;
    while (p0 == 0.0) p0 = u(rng);
    worst = std::max(worst, detailed_balance_residual(p0, 0.0, p));
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(SinhKernel, RemovableSingularity) {
  EXPECT_DOUBLE_EQ(sinh_kernel(0.0, ThermalParams(2.0, 1.0)), 2.0);
}

TEST(SinhKernel, HighPrecisionValue) {
  EXPECT_NEAR(sinh_kernel(1.0, ThermalParams(1.0, 1.0)), 0.521095305493747361622, 1e-15);
}

TEST(SinhKernel, EvenAndBoundedBelow) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  const ThermalParams p(1.7, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double f = u(rng);
    EXPECT_EQ(sinh_kernel(f, p), sinh_kernel(-f, p));
    EXPECT_GE(sinh_kernel(f, p), 0.5 * 1.7 * 1.7);
  }
  EXPECT_GT(sinh_kernel(1e-3, p), 0.5 * 1.7 * 1.7);
}

TEST(SinhKernel, BranchesAgreeNearCrossover) {
  for (double beta : {0.2, 1.0, 4.0}) {
    const ThermalParams p(beta, 1.0);
    const double eps = kernel_crossover(beta);
    for (double f = 0.5 * eps; f <= 2.0 * eps; f += 0.05 * eps) {
      const double x = 0.5 * beta * f;
      const double direct = beta * std::sinh(x) / f;
      const double x2 = x * x;
      const double series = 0.5 * beta * beta * (1.0 + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0);
      EXPECT_LE(std::abs(direct - series), 1e-13 * direct);
      EXPECT_LE(std::abs(sinh_kernel(f, p) - direct), 1e-13 * direct);
    }
  }
}

TEST(SimplexIntegrals, ZeroArgumentLimit) {
  const auto s = simplex_exp_integrals(0.0, ThermalParams(1.0, 1.0));
  EXPECT_DOUBLE_EQ(s.single, 1.0);
  EXPECT_DOUBLE_EQ(s.double_symmetric, 0.5);
}

TEST(SimplexIntegrals, MatchesDirectQuadrature) {
  // Composite Simpson rule on int_0^beta e^{-ua + beta a/2} du.
  const double a = 2.0, beta = 1.0;
  const int n = 2000;
  const double h = beta / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::exp(-u * a + 0.5 * beta * a);
  }
  const double simpson = sum * h / 3.0;
  const auto s = simplex_exp_integrals(a, ThermalParams(beta, 1.0));
  EXPECT_NEAR(s.single, simpson, 1e-12);
  EXPECT_NEAR(s.single, std::sinh(1.0), 1e-14);
}

TEST(SimplexIntegrals, EvenInArgument) {
  const ThermalParams p(2.3, 1.0);
  for (double a : {1e-9, 0.01, 0.7, 5.0}) {
    EXPECT_EQ(simplex_exp_integrals(a, p).single, simplex_exp_integrals(-a, p).single);
    EXPECT_NEAR(simplex_exp_integrals(a, p).double_symmetric, 0.5 * 2.3 * simplex_exp_integrals(a, p).single, 1e-14);
  }
}

TEST(SingleLineDensity, GapEvenAndTail) {
  const ThermalParams p(1.0, 1.0);
  const GaussianProfile g(1.0, 1.0);
  EXPECT_EQ(single_line_density(0.0, g, p), 0.0);
  EXPECT_EQ(single_line_density(0.999, g, p), 0.0);
  EXPECT_GT(single_line_density(1.2, g, p), 0.0);
  for (int i = 0; i < 10000; ++i) {
    const double nu = -10.0 + 20.0 * i / 9999.0;
    EXPECT_EQ(single_line_density(nu, g, p), single_line_density(-nu, g, p));
    EXPECT_GE(single_line_density(nu, g, p), 0.0);
  }
}

TEST(SingleLineDensity, TailBound) {
  // int_{|nu| > L} rho <= e^{-beta L/4} int rho for L >= 4m.
  for (double beta : {0.5, 1.0, 3.0}) {
    const ThermalParams p(beta, 1.0);
    const GaussianProfile g(1.0, 2.0);
    auto integrate = [&](double lo, double hi) {
      const int n = 40000;
      const double h = (hi - lo) / n;
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += single_line_density(lo + (i + 0.5) * h, g, p);
      return 2.0 * s * h;
    };
    const double total = integrate(1.0, 60.0);
    for (double cut : {4.0, 6.0, 10.0}) EXPECT_LE(integrate(cut, 60.0), std::exp(-beta * cut / 4.0) * total);
  }
}
