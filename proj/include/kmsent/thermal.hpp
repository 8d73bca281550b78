#pragma once

// Thermal weights and kernels of the free massive scalar KMS state, written in
// terms of on-shell frequencies.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "kmsent/errors.hpp"

namespace kmsent {

/// Inverse temperature, mass and coupling truncation order. Massless and
/// non-positive temperatures are rejected on construction.
class ThermalParams {
 public:
  ThermalParams(double beta, double mass, int lambda_order = 2)
      : beta_(beta), mass_(mass), lambda_order_(lambda_order) {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw domain_error("ThermalParams: beta must be positive and finite (got " +
                         std::to_string(beta) + ")");
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw domain_error("ThermalParams: mass must be positive (massless case unsupported, got " +
                         std::to_string(mass) + ")");
    if (lambda_order < 2)
      throw domain_error("ThermalParams: lambda_order must be >= 2 (got " +
                         std::to_string(lambda_order) + ")");
  }

  double beta() const noexcept { return beta_; }
  double mass() const noexcept { return mass_; }
  int lambda_order() const noexcept { return lambda_order_; }

  friend bool operator==(const ThermalParams&, const ThermalParams&) = default;

 private:
  double beta_;
  double mass_;
  int lambda_order_;
};

/// A point on the mass shell: signed frequency nu and momentum magnitude k,
/// with k^2 + m^2 = nu^2.
class OnShellPoint {
 public:
  OnShellPoint(double nu, double mass) : nu_(nu) {
    if (std::abs(nu) < mass) throw domain_error("OnShellPoint: |nu| below the mass gap");
    k_ = std::sqrt((std::abs(nu) - mass) * (std::abs(nu) + mass));
  }
  static OnShellPoint from_momentum(double k, double mass, bool positive_frequency = true) {
    if (k < 0.0) throw domain_error("OnShellPoint: negative momentum magnitude");
    const double w = std::hypot(k, mass);
    OnShellPoint p(positive_frequency ? w : -w, mass);
    p.k_ = k;
    return p;
  }
  double nu() const noexcept { return nu_; }
  double k() const noexcept { return k_; }

 private:
  double nu_;
  double k_ = 0.0;
};

/// Per-line weight e^{-beta w/2} / (2 w (1 - e^{-beta w})) for w >= m.
inline double boltzmann_weight(double w, const ThermalParams& params) {
  if (!(w > 0.0) || w < params.mass())
    throw domain_error("boltzmann_weight: w must satisfy w >= mass > 0");
  const double bw = params.beta() * w;
  return std::exp(-0.5 * bw) / (2.0 * w * -std::expm1(-bw));
}

/// Bose factor of the free two-point function including the sign of the
/// frequency, sigma(p0) / (1 - e^{-beta p0}); positive for both signs.
inline double bose_factor(double p0, double beta) {
  if (p0 == 0.0) throw domain_error("bose_factor: pole at p0 = 0");
  const double sign = p0 > 0.0 ? 1.0 : -1.0;
  return sign / -std::expm1(-beta * p0);
}

/// |B(p0) - e^{beta p0} B(-p0)|. Zero by the KMS condition; evaluated
/// literally so that the returned value measures floating-point consistency.
/// The spatial momentum does not enter the Bose factor and is only validated.
inline double detailed_balance_residual(double p0, double pvec_mag, const ThermalParams& params) {
  if (p0 == 0.0) throw domain_error("detailed_balance_residual: p0 = 0 is a pole of the Bose factor");
  if (pvec_mag < 0.0) throw domain_error("detailed_balance_residual: negative momentum magnitude");
  const double beta = params.beta();
  const double lhs = bose_factor(p0, beta);
  const double rhs = std::exp(beta * p0) * bose_factor(-p0, beta);
  return std::abs(lhs - rhs);
}

namespace detail {

/// sinh(x)/x with its even Taylor series below the crossover.
inline double sinhc(double x) {
  static const double crossover = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  if (std::abs(x) < crossover) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
  }
  return std::sinh(x) / x;
}

}  // namespace detail

/// Crossover |f| below which the kernels switch to their Taylor branch.
inline double kernel_crossover(double beta) {
  return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * 2.0 / beta;
}

/// beta sinh(beta f / 2) / f, continued to beta^2/2 at f = 0.
inline double sinh_kernel(double f, const ThermalParams& params) {
  const double beta = params.beta();
  return 0.5 * beta * beta * detail::sinhc(0.5 * beta * f);
}

/// Imaginary-time simplex integrals of e^{-u a + beta a/2}:
///   single           = int_0^beta du                    = 2 sinh(beta a/2)/a
///   double_symmetric = even part of int_{0<=u1<=u2<=beta} = beta sinh(beta a/2)/a
/// The odd remainder of the double integral is not returned.
struct SimplexIntegrals {
  double single;
  double double_symmetric;
};

inline SimplexIntegrals simplex_exp_integrals(double a, const ThermalParams& params) {
  const double beta = params.beta();
  const double s = detail::sinhc(0.5 * beta * a);
  return {beta * s, 0.5 * beta * beta * s};
}

/// Spectral density of one propagator line at signed frequency nu, for a
/// radial profile g(k):
///   rho(nu) = (2 pi)^-3 4 pi k(nu) e^{-beta|nu|/2} / (2 (1 - e^{-beta|nu|})) g(k(nu))^2
/// i.e. the on-shell weight with the d^3p Jacobian at fixed |nu| = w folded in.
/// Zero inside the mass gap.
template <class Profile>
double single_line_density(double nu, const Profile& profile, const ThermalParams& params) {
  const double w = std::abs(nu);
  const double m = params.mass();
  if (w <= m) return 0.0;
  const double k = std::sqrt((w - m) * (w + m));
  const double g = profile(k);
  constexpr double inv_two_pi_cubed = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
  const double bw = params.beta() * w;
  return inv_two_pi_cubed * 4.0 * std::numbers::pi * k * std::exp(-0.5 * bw) /
         (2.0 * -std::expm1(-bw)) * g * g;
}

}  // namespace kmsent
