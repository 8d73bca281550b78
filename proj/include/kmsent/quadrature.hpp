#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace kmsent::quad {

/// Composite Gauss-Legendre rule with `panels` equal panels of N points each.
template <unsigned N = 8, class F>
double composite_gauss(F&& f, double a, double b, std::size_t panels) {
  const double width = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    sum += boost::math::quadrature::gauss<double, N>::integrate(f, lo, lo + width);
  }
  return sum;
}

/// Adaptive Gauss-Kronrod (7/15) on [a, b].
template <class F>
double adaptive_gauss_kronrod(F&& f, double a, double b, double tol = 1e-12,
                              unsigned max_depth = 30, double* error = nullptr) {
  if (a == b) {
    if (error) *error = 0.0;
    return 0.0;
  }
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, tol, &err);
  if (error) *error = err;
  return value;
}

/// Full N-point Gauss-Legendre rule on [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

template <unsigned N>
Rule unit_gauss_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule rule;
  // Boost stores the nonnegative half of the symmetric rule on [-1, 1].
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.nodes.push_back(0.5);
      rule.weights.push_back(0.5 * w[i]);
      continue;
    }
    rule.nodes.push_back(0.5 * (1.0 - x[i]));
    rule.weights.push_back(0.5 * w[i]);
    rule.nodes.push_back(0.5 * (1.0 + x[i]));
    rule.weights.push_back(0.5 * w[i]);
  }
  return rule;
}

/// Integrates f(u_1, ..., u_n) over the scaled ordered simplex
/// {0 <= u_1 <= ... <= u_n <= scale} using collapsed (Duffy) coordinates.
/// f receives a std::vector<double> of the ordered points.
template <class F>
auto simplex_integrate(F&& f, int n, double scale, const Rule& rule) {
  using Value = decltype(f(std::vector<double>{}));
  std::vector<double> u(static_cast<std::size_t>(n));
  const std::size_t q = rule.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Value total{};
  bool first = true;
  if (n == 0) return f(u);
  while (true) {
    // u_n = scale * x_n, u_k = u_{k+1} * x_k; the Jacobian is the product of the upper limits.
    double weight = 1.0;
    double upper = scale;
    for (int k = n - 1; k >= 0; --k) {
      const double x = rule.nodes[idx[static_cast<std::size_t>(k)]];
      weight *= rule.weights[idx[static_cast<std::size_t>(k)]] * upper;
      upper *= x;
      u[static_cast<std::size_t>(k)] = upper;
    }
    if (first) {
      total = weight * f(u);
      first = false;
    } else {
      total += weight * f(u);
    }
    int k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] == q) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return total;
}

}  // namespace kmsent::quad
