#include <gtest/gtest.h>

#include <cmath>

#include "kmsent/adiabatic.hpp"
#include "kmsent/findim/expansions.hpp"
#include "kmsent/findim/random.hpp"
#include "kmsent/findim/series.hpp"
#include "kmsent/findim/taylor.hpp"

using namespace kmsent;
using namespace kmsent::findim;

namespace {

struct Scenario {
  Matrix h, p, a;
};

Scenario make_setup(int d, std::uint64_t seed) {
  Rng rng(seed);
  Scenario s;
  s.h = random_hermitian(d, rng);
  s.p = random_hermitian(d, rng, 0.6);
  s.a = random_hermitian(d, rng);
  return s;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(FormalSeries, ProductTruncatesConsistently) {
  const FormalSeries<double> a(std::vector<double>{1.0, 2.0, 3.0}, 0.0);
  const FormalSeries<double> b(std::vector<double>{4.0, 5.0, 6.0, 7.0}, 0.0);
  const auto c = a * b;
  EXPECT_EQ(c.order(), 2u);
  EXPECT_EQ(c[0], 4.0);
  EXPECT_EQ(c[1], 13.0);
  EXPECT_EQ(c[2], 28.0);
  // Coefficient k of a product only sees coefficients <= k.
  const FormalSeries<double> b_changed(std::vector<double>{4.0, 5.0, 99.0, 7.0}, 0.0);
  EXPECT_EQ((a * b_changed)[1], c[1]);
  EXPECT_EQ((a + b)[2], 9.0);
  EXPECT_EQ((a - b)[1], -3.0);
  EXPECT_EQ((2.0 * a)[2], 6.0);
}

TEST(FormalSeries, ExpAndLogAreInverse) {
  const FormalSeries<double> a(std::vector<double>{0.3, -1.2, 0.7, 2.0, -0.4}, 0.0);
  const auto round_trip = log(exp(a));
  for (std::size_t k = 0; k <= a.order(); ++k) EXPECT_NEAR(round_trip[k], a[k], 1e-13);
  // exp(lambda) = sum lambda^k / k!
  const FormalSeries<double> x(std::vector<double>{0.0, 1.0, 0.0, 0.0, 0.0}, 0.0);
  const auto e = exp(x);
  EXPECT_NEAR(e[4], 1.0 / 24.0, 1e-15);
  EXPECT_THROW(log(FormalSeries<double>(std::vector<double>{0.0, 1.0}, 0.0)), domain_error);
}

TEST(FormalSeries, MatrixProductKeepsFactorOrder) {
  Matrix x = Matrix::Zero(2, 2), y = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  y(1, 0) = 1.0;
  const Matrix zero = Matrix::Zero(2, 2);
  const FormalSeries<Matrix> a(std::vector<Matrix>{zero, x}, zero), b(std::vector<Matrix>{zero, y}, zero);
  EXPECT_EQ((a * b)[1], zero);
  EXPECT_EQ(max_abs((a * b)[0]), 0.0);
  const FormalSeries<Matrix> a2(std::vector<Matrix>{x, x, zero}, zero), b2(std::vector<Matrix>{y, y, zero}, zero);
  EXPECT_LE(max_abs((a2 * b2)[0] - x * y), 0.0);
  EXPECT_GT(max_abs((a2 * b2)[0] - y * x), 0.5);
}

TEST(Dyson, OrderZeroIsFreeEvolution) {
  const Scenario s = make_setup(3, 21);
  const auto series = dyson_evolution(s.h, s.p, s.a, 1.3, 0);
  const Matrix u = unitary_evolution(s.h, 1.3);
  EXPECT_LE(max_abs(series[0] - u * s.a * u.adjoint()), 1e-13);
}

TEST(Dyson, CommutingPerturbation) {
  Rng rng(22);
  const Matrix h = random_hermitian(3, rng);
  const Matrix p = HermitianEigen(h).apply([](double e) { return std::cos(e); });  // commutes with H
  const Matrix a = random_hermitian(3, rng);
  const double t = 0.9;
  const auto series = dyson_evolution(h, p, a, t, 1);
  const Matrix at = series[0];
  EXPECT_LE(max_abs(series[1] - Complex(0.0, t) * commutator(p, at)), 1e-10);
}

TEST(Dyson, MatchesExactTaylorCoefficients) {
  const Scenario s = make_setup(3, 23);
  for (double t : {-1.1, 0.6, 2.0}) {
    const auto series = dyson_evolution(s.h, s.p, s.a, t, 4);
    const Matrix zero = Matrix::Zero(3, 3);
    const auto contour = taylor_coefficients_contour<Matrix>(
        [&](Complex l) { return exact_evolution(s.h, s.p, s.a, t, l); }, 4, 0.5, 64, zero);
    for (std::size_t k = 0; k <= 4; ++k) EXPECT_LE(max_abs(series[k] - contour[k]), 1e-7) << "k = " << k;
    for (std::size_t k = 0; k <= 2; ++k) {
      const Matrix fd = taylor_coefficient_richardson<Matrix>(
          [&](double l) { return exact_evolution(s.h, s.p, s.a, t, Complex(l)); }, k);
      EXPECT_LE(max_abs(series[k] - fd), 1e-7) << "k = " << k;
    }
  }
}

TEST(Dyson, RejectsHighOrder) {
  const Scenario s = make_setup(2, 24);
  EXPECT_THROW(dyson_evolution(s.h, s.p, s.a, 1.0, 5), unsupported_order_error);
}

TEST(PerturbedKms, OrderZeroAndCentralPerturbation) {
  const Scenario s = make_setup(3, 25);
  const auto series = perturbed_kms_expansion(s.h, s.p, s.a, 1.2, 3);
  EXPECT_LE(std::abs(series[0] - expectation(gibbs_state(s.h, 1.2), s.a)), 1e-14);
  const Matrix central = 0.7 * Matrix::Identity(3, 3);
  const auto trivial = perturbed_kms_expansion(s.h, central, s.a, 1.2, 3);
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_LE(std::abs(trivial[k]), 1e-13);
}

TEST(PerturbedKms, MatchesExactDerivatives) {
  const Scenario s = make_setup(2, 26);
  const double beta = 1.5;
  const auto series = perturbed_kms_expansion(s.h, s.p, s.a, beta, 3);
  auto exact = [&](double l) { return exact_perturbed_expectation(s.h, s.p, s.a, beta, Complex(l)); };
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_LE(std::abs(series[k] - taylor_coefficient_richardson<Complex>(exact, k)), 1e-7) << "k = " << k;
  const auto contour = taylor_coefficients_contour<Complex>(
      [&](Complex l) { return exact_perturbed_expectation(s.h, s.p, s.a, beta, l); }, 3, 0.5, 64, Complex(0.0));
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_LE(std::abs(series[k] - contour[k]), 1e-7) << "k = " << k;
}

TEST(LogPartition, ZeroPerturbationAndLinearResponse) {
  const Scenario s = make_setup(3, 27);
  const auto none = log_partition_expansion(s.h, Matrix::Zero(3, 3), 1.0, 3);
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(none[k], Complex(0.0));
  const auto series = log_partition_expansion(s.h, s.p, 1.0, 3);
  EXPECT_LE(std::abs(series[1] + 1.0 * expectation(gibbs_state(s.h, 1.0), s.p)), 1e-13);
}

TEST(LogPartition, MatchesExactDerivatives) {
  const Scenario s = make_setup(4, 28);
  const double beta = 0.8;
  const auto series = log_partition_expansion(s.h, s.p, beta, 3);
  auto exact = [&](double l) { return exact_log_partition_ratio(s.h, s.p, beta, Complex(l)); };
  EXPECT_LE(std::abs(series[2] - taylor_coefficient_richardson<Complex>(exact, 2)), 1e-7);
  const auto contour = taylor_coefficients_contour<Complex>(
      [&](Complex l) { return exact_log_partition_ratio(s.h, s.p, beta, l); }, 3, 0.5, 64, Complex(0.0));
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_LE(std::abs(series[k] - contour[k]), 1e-7) << "k = " << k;
}

TEST(TruncationScaling, ErrorExponentIsOrderPlusOne) {
  const Scenario s = make_setup(3, 29);
  const double t = 1.0, beta = 1.0;
  std::vector<double> lambdas;
  for (int i = 0; i < 8; ++i) lambdas.push_back(0.02 * std::pow(8.0, i / 7.0));
  for (std::size_t order = 1; order <= 3; ++order) {
    const auto dyson = dyson_evolution(s.h, s.p, s.a, t, order);
    const auto kms = perturbed_kms_expansion(s.h, s.p, s.a, beta, order);
    std::vector<double> dyson_err, kms_err;
    for (double l : lambdas) {
      dyson_err.push_back(max_abs(exact_evolution(s.h, s.p, s.a, t, Complex(l)) - dyson.evaluate(l)));
      kms_err.push_back(std::abs(exact_perturbed_expectation(s.h, s.p, s.a, beta, Complex(l)) - kms.evaluate(l)));
    }
    EXPECT_NEAR(fit_loglog(lambdas, dyson_err).slope, order + 1.0, 0.2) << "order " << order;
    EXPECT_NEAR(fit_loglog(lambdas, kms_err).slope, order + 1.0, 0.2) << "order " << order;
  }
}
