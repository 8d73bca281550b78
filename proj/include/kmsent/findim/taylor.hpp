#pragma once

// Exact lambda-dependent quantities and extraction of their Taylor
// coefficients at lambda = 0, used as references for the expansions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "kmsent/errors.hpp"
#include "kmsent/findim/linalg.hpp"

namespace kmsent::findim {

/// e^{it(H+lambda P)} A e^{-it(H+lambda P)} for complex lambda.
inline Matrix exact_evolution(const Matrix& h, const Matrix& p, const Matrix& a, double t, Complex lambda) {
  const Matrix gen = Complex(0.0, t) * (h + lambda * p);
  const Matrix forward = gen.exp();
  const Matrix backward = (-gen).exp();
  return forward * a * backward;
}

namespace detail {

/// e^{-beta(H + lambda P) + beta e0}, e0 the ground energy of H.
inline Matrix shifted_boltzmann(const Matrix& h, const Matrix& p, double beta, Complex lambda) {
  const double e0 = HermitianEigen(h).values().minCoeff();
  const Matrix gen = -beta * (h + lambda * p) + Complex(beta * e0) * Matrix::Identity(h.rows(), h.cols());
  return gen.exp();
}

}  // namespace detail

/// tr(A e^{-beta(H+lambda P)}) / tr(e^{-beta(H+lambda P)}) for complex lambda.
inline Complex exact_perturbed_expectation(const Matrix& h, const Matrix& p, const Matrix& a, double beta,
                                           Complex lambda) {
  const Matrix boltz = detail::shifted_boltzmann(h, p, beta, lambda);
  return (a * boltz).trace() / boltz.trace();
}

/// log[tr e^{-beta(H+lambda P)} / tr e^{-beta H}] for complex lambda near 0.
inline Complex exact_log_partition_ratio(const Matrix& h, const Matrix& p, double beta, Complex lambda) {
  const Complex num = detail::shifted_boltzmann(h, p, beta, lambda).trace();
  const Complex den = detail::shifted_boltzmann(h, p, beta, Complex(0.0)).trace();
  return std::log(num / den);
}

/// Taylor coefficients c_0..c_order of an analytic f by the trapezoid rule on
/// the circle |lambda| = radius (Cauchy integral). `zero` fixes the value shape.
template <class T, class F>
std::vector<T> taylor_coefficients_contour(F&& f, std::size_t order, double radius, std::size_t points, T zero) {
  if (!(radius > 0.0) || points <= order) throw domain_error("contour needs radius > 0 and points > order");
  std::vector<T> coeffs(order + 1, zero);
  for (std::size_t m = 0; m < points; ++m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(points);
    const Complex z = std::polar(radius, theta);
    const T value = f(z);
    for (std::size_t k = 0; k <= order; ++k) {
      const Complex factor = std::polar(std::pow(radius, -static_cast<double>(k)), -theta * static_cast<double>(k)) /
                             static_cast<double>(points);
      coeffs[k] = coeffs[k] + factor * value;
    }
  }
  return coeffs;
}

/// Taylor coefficient k <= 2 of f at 0 by Richardson-extrapolated central
/// differences on lambda in {+-h, +-2h}.
template <class T, class F>
T taylor_coefficient_richardson(F&& f, std::size_t k, double h = 1e-3) {
  if (k > 2) throw unsupported_order_error("central differences are used for orders <= 2 only");
  const T f0 = f(0.0);
  if (k == 0) return f0;
  const T fp1 = f(h), fm1 = f(-h), fp2 = f(2.0 * h), fm2 = f(-2.0 * h);
  if (k == 1) {
    const T d1 = (fp1 - fm1) / (2.0 * h);
    const T d2 = (fp2 - fm2) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
  }
  const T s1 = (fp1 - 2.0 * f0 + fm1) / (h * h);
  const T s2 = (fp2 - 2.0 * f0 + fm2) / (4.0 * h * h);
  return (4.0 * s1 - s2) / 6.0;
}

}  // namespace kmsent::findim
