#pragma once

// Van Hove cutoffs, volume normalization, and per-unit-volume (density)
// versions of the second-order relative entropy and entropy production.
//
// Finite-volume convention: the generator of order l carries the vertex
// factor h^(p_1 + ... + p_l), h^(q) = int h(x) e^{-iqx} d^3x, so the second
// order integrand picks up |h^(sum p)|^2. Density mode replaces
// |h^(q)|^2 / I(h) by (2 pi)^3 delta^3(q).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "kmsent/entropy.hpp"
#include "kmsent/errors.hpp"
#include "kmsent/functionals.hpp"
#include "kmsent/quadrature.hpp"
#include "kmsent/thermal.hpp"

namespace kmsent {

enum class RampKind {
  /// 1 - (6u^5 - 15u^4 + 10u^3): first and second derivatives vanish at both ends.
  smoothstep,
  /// Degenerate step at r = n. Only for closed-form checks; not a van Hove cutoff.
  sharp,
};

/// Radial cutoff h_n: 1 for r < n, 0 for r > n + 1, monotone ramp in between.
class VanHoveCutoff {
 public:
  explicit VanHoveCutoff(int n, RampKind ramp = RampKind::smoothstep) : n_(n), ramp_(ramp) {
    if (n < 1) throw domain_error("VanHoveCutoff: n must be a positive integer");
  }

  int n() const noexcept { return n_; }
  RampKind ramp() const noexcept { return ramp_; }

  /// Ramp profile on [0, 1], ramp(0) = 1, ramp(1) = 0.
  double ramp_value(double u) const noexcept {
    if (ramp_ == RampKind::sharp) return 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  }

  double operator()(double r) const noexcept {
    r = std::abs(r);
    if (r < n_) return 1.0;
    if (r > n_ + 1) return 0.0;
    return ramp_value(r - n_);
  }

 private:
  int n_;
  RampKind ramp_;
};

/// I(h) = int h d^3x = 4 pi int_0^{n+1} r^2 h(r) dr. The plateau is exact,
/// the ramp shell uses `panels` Gauss-Legendre panels.
inline double cutoff_volume(const VanHoveCutoff& h, std::size_t panels = 8) {
  const double n = h.n();
  double shell = 0.0;
  if (h.ramp() != RampKind::sharp)
    shell = quad::composite_gauss<8>([&](double r) { return r * r * h.ramp_value(r - n); }, n, n + 1.0, panels);
  return 4.0 * std::numbers::pi * (n * n * n / 3.0 + shell);
}

namespace detail {

/// int_0^R r^2 sin(qr)/(qr) dr.
inline double ball_moment(double q, double radius) {
  const double x = q * radius;
  const double r3 = radius * radius * radius;
  if (std::abs(x) < 0.05) {
    const double x2 = x * x;
    return r3 * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0);
  }
  return (std::sin(x) - x * std::cos(x)) / (q * q * q);
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail

/// Radial Fourier transform h^(q) = (4 pi / q) int_0^inf r sin(qr) h(r) dr, with h^(0) = I(h).
inline double cutoff_fourier(const VanHoveCutoff& h, double q, std::size_t panels = 8) {
  if (q < 0.0) throw domain_error("cutoff_fourier: q must be nonnegative");
  const double n = h.n();
  double value = detail::ball_moment(q, n);
  if (h.ramp() != RampKind::sharp) {
    const std::size_t p = std::max<std::size_t>(panels, static_cast<std::size_t>(std::ceil(q)));
    value += quad::composite_gauss<8>(
        [&](double r) { return r * r * detail::sinc(q * r) * h.ramp_value(r - n); }, n, n + 1.0, p);
  }
  return 4.0 * std::numbers::pi * value;
}

inline double cutoff_fourier_sq(const VanHoveCutoff& h, double q, std::size_t panels = 8) {
  const double v = cutoff_fourier(h, q, panels);
  return v * v;
}

struct DensityOptions {
  /// Composite Gauss-Legendre panels per unit momentum for radial integrals.
  double panels_per_unit = 16.0;
  std::size_t min_panels = 64;
};

namespace detail {

inline std::size_t radial_panels(double k_max, double t, const DensityOptions& opt, double extra = 0.0) {
  const double p = k_max * opt.panels_per_unit * (1.0 + std::abs(t) + extra);
  return std::max<std::size_t>(opt.min_panels, static_cast<std::size_t>(std::ceil(p)));
}

/// Order-l density-mode integral of a spectral function g(f) under total
/// momentum conservation:
///   l = 1: weight(m) g(0)^2 [G(m) + G(-m)]                       (p = 0)
///   l = 2: (1/2) (2pi)^-3 4pi int k^2 weight(w)^2 g(k)^4
///                              [G(2w) + G(-2w) + 2 G(0)] dk    (p_2 = -p_1)
template <class G>
double density_order(const ThermalParams& params, const GaussianProfile& profile, std::size_t l, G&& g,
                     double t, const DensityOptions& opt) {
  const double m = params.mass();
  if (l == 1) {
    const double g0 = profile(0.0);
    return boltzmann_weight(m, params) * g0 * g0 * (g(m) + g(-m));
  }
  if (l == 2) {
    constexpr double inv_two_pi_cubed = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
    const double k_max = profile.momentum_cutoff(40.0);
    const double g_zero = g(0.0);
    const double integral = quad::composite_gauss<8>(
        [&](double k) {
          const double w = std::hypot(k, m);
          const double wt = boltzmann_weight(w, params);
          const double gk = profile(k);
          const double g2 = gk * gk;
          return k * k * wt * wt * g2 * g2 * (g(2.0 * w) + g(-2.0 * w) + 2.0 * g_zero);
        },
        0.0, k_max, radial_panels(k_max, t, opt));
    return 0.5 * inv_two_pi_cubed * 4.0 * std::numbers::pi * integral;
  }
  throw unsupported_order_error("density mode is implemented for orders 1 and 2 only (got " +
                                std::to_string(l) + ")");
}

inline void require_density_order(const SharedProfileFunctional& k) {
  if (k.orders() > 2)
    throw unsupported_order_error("density mode requires L <= 2 (got L = " + std::to_string(k.orders()) + ")");
}

}  // namespace detail

/// Per-order parts of the relative entropy density.
struct DensityParts {
  double static_part = 0.0;
  double dynamic_part = 0.0;
  double total() const noexcept { return static_part + dynamic_part; }
};

/// Relative entropy per unit volume in density mode (momentum conservation
/// replaces the cutoff vertex), split into static and dynamic parts.
inline DensityParts rel_entropy_density_parts(const ThermalParams& params, const SharedProfileFunctional& k1,
                                              const SharedProfileFunctional& k2,
                                              const SharedProfileFunctional& k3, double t,
                                              const DensityOptions& opt = {}) {
  require_compatible(k1, k2);
  require_compatible(k1, k3);
  detail::require_density_order(k1);
  const GaussianProfile& profile = k1.profile();
  DensityParts out;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double w = detail::inverse_factorial(l);
    const double b = k1.coeff(l) - k3.coeff(l);
    if (b != 0.0)
      out.static_part += w * b * b *
                         detail::density_order(params, profile, l, [&](double f) { return sinh_kernel(f, params); }, 0.0, opt);
    const double c = 2.0 * (k1.coeff(l) - k2.coeff(l)) * (k3.coeff(l) - k2.coeff(l));
    if (c != 0.0 && t != 0.0)
      out.dynamic_part +=
          w * c *
          detail::density_order(
              params, profile, l,
              [&](double f) { return sinh_kernel(f, params) * detail::one_minus_cos(f * t); }, t, opt);
  }
  return out;
}

inline double rel_entropy_density(const ThermalParams& params, const SharedProfileFunctional& k1,
                                  const SharedProfileFunctional& k2, const SharedProfileFunctional& k3, double t,
                                  const DensityOptions& opt = {}) {
  return rel_entropy_density_parts(params, k1, k2, k3, t, opt).total();
}

/// Density mode of the manifestly non-negative F-form.
inline double rel_entropy_density_f_form(const ThermalParams& params, const SharedProfileFunctional& k1,
                                         const SharedProfileFunctional& k2, const SharedProfileFunctional& k3,
                                         double t, const DensityOptions& opt = {}) {
  detail::require_density_order(k1);
  const FCoefficients fc = combine(k1, k2, k3);
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double a2 = fc.a[l - 1] * fc.a[l - 1];
    const double b2 = fc.b[l - 1] * fc.b[l - 1];
    total += detail::inverse_factorial(l) *
             detail::density_order(
                 params, k1.profile(), l,
                 [&](double f) {
                   const double s = std::sin(0.5 * f * t);
                   const double c = std::cos(0.5 * f * t);
                   return sinh_kernel(f, params) * (s * s * a2 + c * c * b2);
                 },
                 t, opt);
  }
  return total;
}

/// Entropy production density with V2 = 0 (derivative of the dynamic density).
inline double entropy_production_density(const ThermalParams& params, const SharedProfileFunctional& k1,
                                         const SharedProfileFunctional& k3, double t,
                                         const DensityOptions& opt = {}) {
  require_compatible(k1, k3);
  detail::require_density_order(k1);
  const double beta = params.beta();
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double c = 2.0 * k1.coeff(l) * k3.coeff(l);
    if (c == 0.0 || t == 0.0) continue;
    total += detail::inverse_factorial(l) * c *
             detail::density_order(
                 params, k1.profile(), l,
                 [&](double f) { return beta * std::sinh(0.5 * beta * f) * std::sin(f * t); }, t, opt);
  }
  return total;
}

struct DensityReport {
  std::vector<int> n_values;
  std::vector<double> volumes;
  std::vector<double> densities;
  /// n -> infinity extrapolation of the densities from the last three n,
  /// assuming a + b/n + c/n^2.
  double limit_estimate = 0.0;
  double density_mode_value = 0.0;
  std::vector<double> gaps;
};

/// Finite-volume relative entropy S(h) at order 1 for cutoff h: a radial
/// integral against |h^(k)|^2 / (2 pi)^3.
inline double finite_volume_rel_entropy_order1(const ThermalParams& params, const SharedProfileFunctional& k1,
                                               const SharedProfileFunctional& k2,
                                               const SharedProfileFunctional& k3, double t,
                                               const VanHoveCutoff& h, const DensityOptions& opt = {}) {
  if (k1.orders() != 1)
    throw unsupported_order_error("finite-volume series is implemented for L = 1 only (got L = " +
                                  std::to_string(k1.orders()) + ")");
  const FCoefficients fc = combine(k1, k2, k3);
  const double a2 = fc.a[0] * fc.a[0];
  const double b2 = fc.b[0] * fc.b[0];
  if (a2 == 0.0 && b2 == 0.0) return 0.0;
  const GaussianProfile& profile = k1.profile();
  const double m = params.mass();
  constexpr double inv_two_pi_cubed = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
  auto g_form = [&](double f) {
    const double s = std::sin(0.5 * f * t);
    const double c = std::cos(0.5 * f * t);
    return sinh_kernel(f, params) * (s * s * a2 + c * c * b2);
  };
  const double k_max = profile.momentum_cutoff(40.0);
  const double integral = quad::composite_gauss<8>(
      [&](double k) {
        const double w = std::hypot(k, m);
        const double gk = profile(k);
        return inv_two_pi_cubed * 4.0 * std::numbers::pi * k * k * boltzmann_weight(w, params) * gk * gk *
               (g_form(w) + g_form(-w)) * cutoff_fourier_sq(h, k);
      },
      0.0, k_max, detail::radial_panels(k_max, t, opt, static_cast<double>(h.n())));
  return integral;
}

/// S(h_n)/I(h_n) for n = 1..n_max at order 1, against the density-mode value.
/// Throws convergence_error if the gap grows three times in a row for n >= 3.
inline DensityReport vanhove_density_series(const ThermalParams& params, const SharedProfileFunctional& k1,
                                            const SharedProfileFunctional& k2, const SharedProfileFunctional& k3,
                                            double t, int n_max, RampKind ramp = RampKind::smoothstep,
                                            const DensityOptions& opt = {}) {
  if (n_max < 1) throw domain_error("vanhove_density_series: n_max must be >= 1");
  if (k1.orders() != 1)
    throw unsupported_order_error("vanhove_density_series requires L = 1 (got L = " +
                                  std::to_string(k1.orders()) + ")");
  DensityReport report;
  report.density_mode_value = rel_entropy_density(params, k1, k2, k3, t, opt);
  int increases = 0;
  for (int n = 1; n <= n_max; ++n) {
    const VanHoveCutoff h(n, ramp);
    const double volume = cutoff_volume(h);
    const double s = finite_volume_rel_entropy_order1(params, k1, k2, k3, t, h, opt);
    const double density = s / volume;
    const double gap = std::abs(density - report.density_mode_value);
    if (n >= 4 && gap > report.gaps.back()) {
      if (++increases >= 3)
        throw convergence_error("vanhove_density_series: gap to the density-mode value grew for three consecutive n (n = " +
                                std::to_string(n) + ")");
    } else if (n >= 4) {
      increases = 0;
    }
    report.n_values.push_back(n);
    report.volumes.push_back(volume);
    report.densities.push_back(density);
    report.gaps.push_back(gap);
  }
  const std::size_t count = report.densities.size();
  if (count >= 3) {
    // Solve d_n = a + b/n + c/n^2 through the last three points.
    double x[3], y[3];
    for (int i = 0; i < 3; ++i) {
      x[i] = 1.0 / report.n_values[count - 3 + static_cast<std::size_t>(i)];
      y[i] = report.densities[count - 3 + static_cast<std::size_t>(i)];
    }
    // Lagrange interpolation in x evaluated at x = 0.
    double a = 0.0;
    for (int i = 0; i < 3; ++i) {
      double li = 1.0;
      for (int j = 0; j < 3; ++j)
        if (j != i) li *= (0.0 - x[j]) / (x[i] - x[j]);
      a += li * y[i];
    }
    report.limit_estimate = a;
  } else {
    report.limit_estimate = report.densities.back();
  }
  return report;
}

namespace detail {

inline double dynamic_density_v2_zero(const ThermalParams& params, const SharedProfileFunctional& k1,
                                      const SharedProfileFunctional& k3, double t, const DensityOptions& opt) {
  const auto zero = SharedProfileFunctional::zero(k1.profile(), k1.orders());
  return rel_entropy_density_parts(params, k1, zero, k3, t, opt).dynamic_part;
}

}  // namespace detail

/// Ergodic-mean entropy production density e(t) = (D(t) - D(0)) / t, where
/// D is the dynamic part of the relative entropy density with V2 = 0.
inline double ness_entropy_production_density(const ThermalParams& params, const SharedProfileFunctional& k1,
                                              const SharedProfileFunctional& k3, double t,
                                              const DensityOptions& opt = {}) {
  if (!(t > 0.0)) throw domain_error("ness_entropy_production_density: t must be positive");
  require_compatible(k1, k3);
  detail::require_density_order(k1);
  return (detail::dynamic_density_v2_zero(params, k1, k3, t, opt) -
          detail::dynamic_density_v2_zero(params, k1, k3, 0.0, opt)) /
         t;
}

/// Same quantity as the time average of the entropy production density,
/// (1/t) int_0^t E(s) ds, by adaptive quadrature.
inline double ness_entropy_production_direct(const ThermalParams& params, const SharedProfileFunctional& k1,
                                             const SharedProfileFunctional& k3, double t,
                                             const DensityOptions& opt = {}, double tol = 1e-10) {
  if (!(t > 0.0)) throw domain_error("ness_entropy_production_direct: t must be positive");
  auto e = [&](double s) { return entropy_production_density(params, k1, k3, s, opt); };
  return quad::adaptive_gauss_kronrod(e, 0.0, t, tol) / t;
}

/// Uniform-in-t bound on |D(t)|: the dynamic density with (1 - cos ft)
/// replaced by 2 and coefficient products by their absolute values.
inline double ness_bound_constant(const ThermalParams& params, const SharedProfileFunctional& k1,
                                  const SharedProfileFunctional& k3, const DensityOptions& opt = {}) {
  require_compatible(k1, k3);
  detail::require_density_order(k1);
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double c = std::abs(2.0 * k1.coeff(l) * k3.coeff(l));
    if (c == 0.0) continue;
    total += detail::inverse_factorial(l) * c *
             detail::density_order(
                 params, k1.profile(), l, [&](double f) { return 2.0 * sinh_kernel(f, params); }, 0.0, opt);
  }
  return total;
}

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of log|y| about the fitted line.
  double residual = 0.0;
};

/// Least-squares fit of log|y| against log x.
inline LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw domain_error("fit_loglog: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) throw domain_error("fit_loglog: samples must be positive and nonzero");
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(std::abs(y[i])) - (fit.intercept + fit.slope * std::log(x[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

struct NessReport {
  std::vector<double> t_values;
  std::vector<double> e_values;
  std::vector<double> e_times_t;
  double bound = 0.0;
  double sup_e_times_t = 0.0;
  LogLogFit fit;
};

/// e(t) over log-spaced t in [t_min, t_max], with bound and log-log fit.
inline NessReport ness_series(const ThermalParams& params, const SharedProfileFunctional& k1,
                              const SharedProfileFunctional& k3, double t_min, double t_max, std::size_t samples,
                              const DensityOptions& opt = {}) {
  if (!(t_min > 0.0) || !(t_max > t_min) || samples < 2)
    throw domain_error("ness_series: need 0 < t_min < t_max and at least two samples");
  NessReport report;
  report.bound = ness_bound_constant(params, k1, k3, opt);
  const double ratio = std::log(t_max / t_min) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_min * std::exp(ratio * static_cast<double>(i));
    const double e = ness_entropy_production_density(params, k1, k3, t, opt);
    report.t_values.push_back(t);
    report.e_values.push_back(e);
    report.e_times_t.push_back(e * t);
    report.sup_e_times_t = std::max(report.sup_e_times_t, std::abs(e * t));
  }
  bool all_nonzero = std::all_of(report.e_values.begin(), report.e_values.end(), [](double v) { return v != 0.0; });
  if (all_nonzero) report.fit = fit_loglog(report.t_values, report.e_values);
  return report;
}

}  // namespace kmsent
