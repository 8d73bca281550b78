#pragma once

// Perturbative expansions in the coupling lambda of a perturbation P of H:
// the interacting dynamics (Dyson series of nested commutators), the
// perturbed Gibbs expectation, and the log-partition cocycle, the last two as
// imaginary-time simplex integrals of connected functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kmsent/errors.hpp"
#include "kmsent/findim/connected.hpp"
#include "kmsent/findim/linalg.hpp"
#include "kmsent/findim/series.hpp"
#include "kmsent/findim/states.hpp"
#include "kmsent/quadrature.hpp"

namespace kmsent::findim {

inline constexpr std::size_t kMaxDysonOrder = 4;
inline constexpr std::size_t kMaxKmsOrder = 3;

namespace detail {

inline void require_order(std::size_t order, std::size_t max, const char* what) {
  if (order > max)
    throw unsupported_order_error(std::string(what) + " is supported up to order " + std::to_string(max) +
                                  " (got " + std::to_string(order) + ")");
}

inline void require_same_shape(const Matrix& h, const Matrix& p, const Matrix* a = nullptr) {
  require_hermitian(h, "H");
  require_hermitian(p, "P");
  if (p.rows() != h.rows() || (a && (a->rows() != h.rows() || a->cols() != h.cols())))
    throw domain_error("operators must share the dimension of H");
}

/// X_ij e^{s (e_i - e_j)} for X written in the eigenbasis with energies e.
inline Matrix scale_by_gaps(const Matrix& x, const RealVector& e, Complex s) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) * std::exp(s * (e(i) - e(j)));
  return out;
}

}  // namespace detail

struct DysonOptions {
  /// RK4 steps are base_steps * (1 + |t| * spectral width of H).
  double base_steps = 400.0;
};

/// Coefficients of alpha_t^{lambda P}(A) = e^{it(H+lambda P)} A e^{-it(H+lambda P)}
/// in powers of lambda. Coefficient j is i^j times the j-fold nested commutator
/// integral over 0 <= s_1 <= ... <= s_j <= t of
/// [P(s_1), [P(s_2), ... [P(s_j), alpha_t(A)]]], with P(s) = e^{isH} P e^{-isH}.
/// The nested integrals come from the ODE chain dF_j/dx = -[P(x), F_{j-1}(x)],
/// F_j(t) = 0, F_0 = alpha_t(A), integrated from x = t down to 0.
inline FormalSeries<Matrix> dyson_evolution(const Matrix& h, const Matrix& p, const Matrix& a, double t,
                                            std::size_t order, const DysonOptions& opt = {}) {
  detail::require_order(order, kMaxDysonOrder, "dyson_evolution");
  detail::require_same_shape(h, p, &a);
  const HermitianEigen eig(h);
  const RealVector& e = eig.values();
  const Matrix pe = eig.to_eigenbasis(p);
  const Matrix b = detail::scale_by_gaps(eig.to_eigenbasis(a), e, Complex(0.0, t));

  const Eigen::Index d = h.rows();
  const Matrix zero = Matrix::Zero(d, d);
  FormalSeries<Matrix> out(order, zero);
  out[0] = eig.from_eigenbasis(b);
  if (order == 0 || t == 0.0) return out;

  const double width = e.maxCoeff() - e.minCoeff();
  const auto steps = static_cast<std::size_t>(std::ceil(opt.base_steps * (1.0 + std::abs(t) * width)));
  const double step = -t / static_cast<double>(steps);

  using State = std::vector<Matrix>;
  auto rhs = [&](double x, const State& f) {
    const Matrix v = detail::scale_by_gaps(pe, e, Complex(0.0, x));
    State df(order, zero);
    df[0] = -commutator(v, b);
    for (std::size_t j = 1; j < order; ++j) df[j] = -commutator(v, f[j - 1]);
    return df;
  };
  auto axpy = [&](const State& f, const State& k, double s) {
    State r(order, zero);
    for (std::size_t j = 0; j < order; ++j) r[j] = f[j] + s * k[j];
    return r;
  };

  State f(order, zero);  // f[j - 1] holds F_j
  double x = t;
  for (std::size_t n = 0; n < steps; ++n) {
    const State k1 = rhs(x, f);
    const State k2 = rhs(x + 0.5 * step, axpy(f, k1, 0.5 * step));
    const State k3 = rhs(x + 0.5 * step, axpy(f, k2, 0.5 * step));
    const State k4 = rhs(x + step, axpy(f, k3, step));
    for (std::size_t j = 0; j < order; ++j) f[j] += (step / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    x = t + step * static_cast<double>(n + 1);
  }
  Complex phase(1.0);
  for (std::size_t j = 1; j <= order; ++j) {
    phase *= Complex(0.0, 1.0);
    out[j] = eig.from_eigenbasis(phase * f[j - 1]);
  }
  return out;
}

struct SimplexOptions {
  /// Gauss-Legendre points per collapsed simplex coordinate.
  unsigned points = 24;
};

namespace detail {

inline const quad::Rule& simplex_rule(unsigned points) {
  static const quad::Rule r16 = quad::unit_gauss_rule<16>();
  static const quad::Rule r20 = quad::unit_gauss_rule<20>();
  static const quad::Rule r24 = quad::unit_gauss_rule<24>();
  static const quad::Rule r30 = quad::unit_gauss_rule<30>();
  if (points <= 16) return r16;
  if (points <= 20) return r20;
  if (points <= 24) return r24;
  return r30;
}

/// (-1)^n int over {0 <= u_1 <= ... <= u_n <= beta} of
/// omega^c(lead (x) P(u_1) (x) ... (x) P(u_n)), P(u) = e^{-uH} P e^{uH}.
/// Everything is in the H eigenbasis; `lead` may be empty (no leading operator).
inline Complex imaginary_time_term(const Matrix& rho, const Matrix* lead, const Matrix& pe, const RealVector& e,
                                   double beta, int n, const SimplexOptions& opt) {
  const auto integrand = [&](const std::vector<double>& u) {
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(n) + 1);
    if (lead) ops.push_back(*lead);
    for (int k = 0; k < n; ++k) ops.push_back(scale_by_gaps(pe, e, Complex(-u[static_cast<std::size_t>(k)])));
    return connected_function(rho, ops);
  };
  const Complex value = quad::simplex_integrate(integrand, n, beta, simplex_rule(opt.points));
  return (n % 2 == 0) ? value : -value;
}

}  // namespace detail

/// Coefficients of tr(A e^{-beta(H+lambda P)}) / tr(e^{-beta(H+lambda P)}):
/// order 0 is omega(A), order n >= 1 the simplex integral of
/// omega^c(A (x) P(u_1) (x) ... (x) P(u_n)) with sign (-1)^n.
inline FormalSeries<Complex> perturbed_kms_expansion(const Matrix& h, const Matrix& p, const Matrix& a, double beta,
                                                     std::size_t order, const SimplexOptions& opt = {}) {
  detail::require_order(order, kMaxKmsOrder, "perturbed_kms_expansion");
  detail::require_same_shape(h, p, &a);
  const HermitianEigen eig(h);
  const Matrix rho = eig.to_eigenbasis(gibbs_state(h, beta));
  const Matrix pe = eig.to_eigenbasis(p);
  const Matrix ae = eig.to_eigenbasis(a);
  FormalSeries<Complex> out(order, Complex(0.0));
  out[0] = expectation(rho, ae);
  for (std::size_t n = 1; n <= order; ++n)
    out[n] = detail::imaginary_time_term(rho, &ae, pe, eig.values(), beta, static_cast<int>(n), opt);
  return out;
}

/// Coefficients of log[tr e^{-beta(H+lambda P)} / tr e^{-beta H}]: order n is
/// (-1)^n times the simplex integral of omega^c(P(u_1) (x) ... (x) P(u_n)).
inline FormalSeries<Complex> log_partition_expansion(const Matrix& h, const Matrix& p, double beta, std::size_t order,
                                                     const SimplexOptions& opt = {}) {
  detail::require_order(order, kMaxKmsOrder, "log_partition_expansion");
  detail::require_same_shape(h, p);
  const HermitianEigen eig(h);
  const Matrix rho = eig.to_eigenbasis(gibbs_state(h, beta));
  const Matrix pe = eig.to_eigenbasis(p);
  FormalSeries<Complex> out(order, Complex(0.0));
  for (std::size_t n = 1; n <= order; ++n)
    out[n] = detail::imaginary_time_term(rho, nullptr, pe, eig.values(), beta, static_cast<int>(n), opt);
  return out;
}

}  // namespace kmsent::findim
