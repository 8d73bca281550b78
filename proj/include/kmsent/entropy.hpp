#pragma once

// Second-order relative entropy between perturbed KMS states of the free
// massive scalar field, reduced to one-dimensional spectral integrals over
// the convolved single-line densities mu_l(f), f the total frequency.

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>
#include <cstddef>
#include <vector>

#include "kmsent/errors.hpp"
#include "kmsent/functionals.hpp"
#include "kmsent/quadrature.hpp"
#include "kmsent/spectral.hpp"
#include "kmsent/thermal.hpp"

namespace kmsent {

struct EntropyReport {
  double t = 0.0;
  double static_part = 0.0;
  double dynamic_part = 0.0;
  double total = 0.0;
  /// static + dynamic contribution of each order l = 1..L.
  std::vector<double> per_order;
};

namespace detail {

inline double inverse_factorial(std::size_t l) {
  double f = 1.0;
  for (std::size_t i = 2; i <= l; ++i) f *= static_cast<double>(i);
  return 1.0 / f;
}

/// 2 sin^2(ft/2) = 1 - cos(ft), without cancellation at small ft.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

inline void require_all(const SpectralModel& model, const SharedProfileFunctional& a,
                        const SharedProfileFunctional& b) {
  require_compatible(a, b);
  model.require_compatible(a);
}

}  // namespace detail

/// Static part S(omega^{V1}, omega^{V3}) in simplex form:
///   sum_l (1/l!) (c1_l - c3_l)^2 int mu_l(f) beta sinh(beta f/2)/f df.
inline double rel_entropy_static(const SpectralModel& model, const SharedProfileFunctional& k1,
                                 const SharedProfileFunctional& k3) {
  detail::require_all(model, k1, k3);
  const ThermalParams& p = model.params();
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double b = k1.coeff(l) - k3.coeff(l);
    if (b == 0.0) continue;
    const double integral = model.integrate(l, [&](double f) { return sinh_kernel(f, p); });
    total += detail::inverse_factorial(l) * b * b * integral;
  }
  return total;
}

/// Duhamel (Kubo-Mori) pairing
///   (A|B)_beta = (1/beta) int_0^beta omega^c(A* x alpha_{iu} B) du
///             = sum_l (1/l!) (1/beta) a_l b_l int mu_l(f) 2 sinh(beta f/2)/f df.
inline double duhamel_pairing(const SpectralModel& model, const SharedProfileFunctional& a,
                              const SharedProfileFunctional& b) {
  detail::require_all(model, a, b);
  const ThermalParams& p = model.params();
  double total = 0.0;
  for (std::size_t l = 1; l <= a.orders(); ++l) {
    const double ab = a.coeff(l) * b.coeff(l);
    if (ab == 0.0) continue;
    const double integral =
        model.integrate(l, [&](double f) { return simplex_exp_integrals(f, p).single; });
    total += detail::inverse_factorial(l) * ab * integral / p.beta();
  }
  return total;
}

/// Static part through the Duhamel route, (beta^2/2) (K1-K3 | K1-K3)_beta.
inline double rel_entropy_static_duhamel(const SpectralModel& model, const SharedProfileFunctional& k1,
                                         const SharedProfileFunctional& k3) {
  detail::require_all(model, k1, k3);
  std::vector<double> diff(k1.orders());
  for (std::size_t l = 1; l <= k1.orders(); ++l) diff[l - 1] = k1.coeff(l) - k3.coeff(l);
  const auto d = k1.with_coeffs(std::move(diff));
  const double beta = model.params().beta();
  return 0.5 * beta * beta * duhamel_pairing(model, d, d);
}

namespace detail {

inline double dynamic_order(const SpectralModel& model, std::size_t l, double coefficient, double t) {
  if (coefficient == 0.0 || t == 0.0) return 0.0;
  const ThermalParams& p = model.params();
  const double integral =
      model.integrate(l, [&](double f) { return sinh_kernel(f, p) * one_minus_cos(f * t); });
  return inverse_factorial(l) * coefficient * integral;
}

}  // namespace detail

/// Time-dependent part omega^{V1}((alpha_t^{V2} - alpha_t^{V1})(beta K3 - beta K2)):
///   sum_l (1/l!) 2 (c1-c2)_l (c3-c2)_l int mu_l(f) beta sinh(beta f/2) (1 - cos ft)/f df.
/// The antisymmetric sin(ft)/f term vanishes for real coefficients.
inline double rel_entropy_dynamic(const SpectralModel& model, const SharedProfileFunctional& k1,
                                  const SharedProfileFunctional& k2, const SharedProfileFunctional& k3,
                                  double t) {
  detail::require_all(model, k1, k2);
  detail::require_all(model, k1, k3);
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double c = 2.0 * (k1.coeff(l) - k2.coeff(l)) * (k3.coeff(l) - k2.coeff(l));
    total += detail::dynamic_order(model, l, c, t);
  }
  return total;
}

/// Static plus dynamic parts, with the per-order breakdown.
inline EntropyReport rel_entropy_total(const SpectralModel& model, const SharedProfileFunctional& k1,
                                       const SharedProfileFunctional& k2, const SharedProfileFunctional& k3,
                                       double t) {
  detail::require_all(model, k1, k2);
  detail::require_all(model, k1, k3);
  const ThermalParams& p = model.params();
  EntropyReport report;
  report.t = t;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double b = k1.coeff(l) - k3.coeff(l);
    double stat = 0.0;
    if (b != 0.0)
      stat = detail::inverse_factorial(l) * b * b *
             model.integrate(l, [&](double f) { return sinh_kernel(f, p); });
    const double c = 2.0 * (k1.coeff(l) - k2.coeff(l)) * (k3.coeff(l) - k2.coeff(l));
    const double dyn = detail::dynamic_order(model, l, c, t);
    report.static_part += stat;
    report.dynamic_part += dyn;
    report.per_order.push_back(stat + dyn);
  }
  report.total = report.static_part + report.dynamic_part;
  return report;
}

/// Manifestly non-negative form
///   sum_l (1/l!) int mu_l(f) beta sinh(beta f/2)/f [sin^2(ft/2) a_l^2 + cos^2(ft/2) b_l^2] df.
inline double rel_entropy_f_form(const SpectralModel& model, const SharedProfileFunctional& k1,
                                 const SharedProfileFunctional& k2, const SharedProfileFunctional& k3,
                                 double t) {
  model.require_compatible(k1);
  const FCoefficients fc = combine(k1, k2, k3);
  const ThermalParams& p = model.params();
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double a2 = fc.a[l - 1] * fc.a[l - 1];
    const double b2 = fc.b[l - 1] * fc.b[l - 1];
    if (a2 == 0.0 && b2 == 0.0) continue;
    const double integral = model.integrate(l, [&](double f) {
      const double s = std::sin(0.5 * f * t);
      const double c = std::cos(0.5 * f * t);
      return sinh_kernel(f, p) * (s * s * a2 + c * c * b2);
    });
    total += detail::inverse_factorial(l) * integral;
  }
  return total;
}

/// Entropy production with V2 = 0: the t-derivative of the dynamic part,
///   sum_l (1/l!) 2 c1_l c3_l int mu_l(f) beta sinh(beta f/2) sin(ft) df.
inline double entropy_production(const SpectralModel& model, const SharedProfileFunctional& k1,
                                 const SharedProfileFunctional& k3, double t) {
  detail::require_all(model, k1, k3);
  const double beta = model.params().beta();
  double total = 0.0;
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    const double c = 2.0 * k1.coeff(l) * k3.coeff(l);
    if (c == 0.0 || t == 0.0) continue;
    const double integral =
        model.integrate(l, [&](double f) { return beta * std::sinh(0.5 * beta * f) * std::sin(f * t); });
    total += detail::inverse_factorial(l) * c * integral;
  }
  return total;
}

/// Both sides of the balance identity S(t) = S(0) + int_0^t E(s) ds.
struct BalanceTerms {
  double s_t = 0.0;
  double s_0 = 0.0;
  double integral = 0.0;
  double residual() const noexcept { return std::abs(s_t - s_0 - integral); }
};

/// Balance terms with V2 = 0; the time integral uses adaptive Gauss-Kronrod.
inline BalanceTerms entropy_balance(const SpectralModel& model, const SharedProfileFunctional& k1,
                                    const SharedProfileFunctional& k3, double t, double tol = 1e-11) {
  const auto k2 = SharedProfileFunctional::zero(k1.profile(), k1.orders());
  BalanceTerms out;
  out.s_t = rel_entropy_total(model, k1, k2, k3, t).total;
  out.s_0 = t == 0.0 ? out.s_t : rel_entropy_total(model, k1, k2, k3, 0.0).total;
  auto production = [&](double s) { return entropy_production(model, k1, k3, s); };
  out.integral = quad::adaptive_gauss_kronrod(production, std::min(0.0, t), std::max(0.0, t), tol);
  if (t < 0.0) out.integral = -out.integral;
  return out;
}

/// |S(t) - S(0) - int_0^t E(s) ds| with V2 = 0.
inline double entropy_balance_residual(const SpectralModel& model, const SharedProfileFunctional& k1,
                                       const SharedProfileFunctional& k3, double t, double tol = 1e-11) {
  if (t == 0.0) return 0.0;
  return entropy_balance(model, k1, k3, t, tol).residual();
}

/// Dynamic part for complex per-order coefficients (debug mode). Returns the
/// symmetric (1 - cos ft)/f term and the antisymmetric sin(ft)/f term
/// separately; the latter is identically zero for real coefficients.
struct DynamicSplit {
  double symmetric = 0.0;
  double antisymmetric = 0.0;
};

inline DynamicSplit rel_entropy_dynamic_complex(const SpectralModel& model,
                                                const std::vector<std::complex<double>>& c1,
                                                const std::vector<std::complex<double>>& c2,
                                                const std::vector<std::complex<double>>& c3, double t) {
  if (c1.size() != c2.size() || c1.size() != c3.size() || c1.empty() || c1.size() > model.max_order())
    throw configuration_error("rel_entropy_dynamic_complex: coefficient lists must have equal supported length");
  const ThermalParams& p = model.params();
  DynamicSplit out;
  for (std::size_t l = 1; l <= c1.size(); ++l) {
    const std::complex<double> a = c1[l - 1] - c2[l - 1];
    const std::complex<double> b = c3[l - 1] - c2[l - 1];
    // conj(A) B + conj(B) A = 2 Re(conj(A) B); -i (conj(A) B - conj(B) A) = 2 Im(conj(A) B)
    const std::complex<double> ab = std::conj(a) * b;
    const double sym = 2.0 * ab.real();
    const double asym = 2.0 * ab.imag();
    const double w = detail::inverse_factorial(l);
    if (sym != 0.0)
      out.symmetric += w * sym *
                       model.integrate(l, [&](double f) { return sinh_kernel(f, p) * detail::one_minus_cos(f * t); });
    if (asym != 0.0)
      out.antisymmetric +=
          w * asym * model.integrate(l, [&](double f) { return sinh_kernel(f, p) * std::sin(f * t); });
  }
  return out;
}

/// Direct nested radial quadrature over d^3p_1 ... d^3p_l (l <= 2) with an
/// independent profile per line, summing the 2^l shell assignments
/// explicitly. Returns the order-l contribution of the non-negative form for
/// coefficients (a_l, b_l). Serves as a cross-check of the convolution route.
template <class Profile>
double tensor_grid_order(const ThermalParams& params, const std::vector<Profile>& line_profiles, double a,
                         double b, double t, double k_max, std::size_t panels = 96) {
  const std::size_t l = line_profiles.size();
  if (l < 1 || l > 2) throw unsupported_order_error("tensor_grid_order: only orders 1 and 2 are supported");
  constexpr double inv_two_pi_cubed = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
  const double m = params.mass();
  auto g_form = [&](double f) {
    const double s = std::sin(0.5 * f * t);
    const double c = std::cos(0.5 * f * t);
    return sinh_kernel(f, params) * (s * s * a * a + c * c * b * b);
  };
  auto line = [&](const Profile& g, double k) {
    const double w = std::hypot(k, m);
    const double gk = g(k);
    return inv_two_pi_cubed * 4.0 * std::numbers::pi * k * k * boltzmann_weight(w, params) * gk * gk;
  };
  if (l == 1) {
    return quad::composite_gauss<8>(
        [&](double k) {
          const double w = std::hypot(k, m);
          return line(line_profiles[0], k) * (g_form(w) + g_form(-w));
        },
        0.0, k_max, panels);
  }
  auto inner = [&](double k1) {
    const double w1 = std::hypot(k1, m);
    const double l1 = line(line_profiles[0], k1);
    return quad::composite_gauss<8>(
        [&](double k2) {
          const double w2 = std::hypot(k2, m);
          return l1 * line(line_profiles[1], k2) *
                 (g_form(w1 + w2) + g_form(w1 - w2) + g_form(-w1 + w2) + g_form(-w1 - w2));
        },
        0.0, k_max, panels);
  };
  return 0.5 * quad::composite_gauss<8>(inner, 0.0, k_max, panels);
}

}  // namespace kmsent
