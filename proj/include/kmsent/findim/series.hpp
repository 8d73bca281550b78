#pragma once

// Truncated formal power series in the coupling lambda.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "kmsent/errors.hpp"

namespace kmsent::findim {

/// Coefficients c_0..c_order of sum_k c_k lambda^k. Coefficient k of any
/// product only reads coefficients <= k of the factors. T may be a scalar or
/// an Eigen matrix; `zero` fixes the shape of the additive identity.
template <class T>
class FormalSeries {
 public:
  FormalSeries(std::size_t order, T zero) : coeffs_(order + 1, zero), zero_(std::move(zero)) {}

  FormalSeries(std::vector<T> coeffs, T zero) : coeffs_(std::move(coeffs)), zero_(std::move(zero)) {
    if (coeffs_.empty()) throw domain_error("FormalSeries needs at least the constant coefficient");
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const T& operator[](std::size_t k) const { return coeffs_.at(k); }
  T& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<T>& coefficients() const noexcept { return coeffs_; }
  const T& zero() const noexcept { return zero_; }

  /// Partial sum up to `through` (defaults to the full order) at lambda.
  template <class S>
  T evaluate(S lambda, std::size_t through) const {
    T sum = zero_;
    S power = S(1);
    for (std::size_t k = 0; k <= std::min(through, order()); ++k) {
      sum = sum + power * coeffs_[k];
      power *= lambda;
    }
    return sum;
  }
  template <class S>
  T evaluate(S lambda) const {
    return evaluate(lambda, order());
  }

  FormalSeries truncated(std::size_t order) const {
    FormalSeries out(order, zero_);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
  }

  friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries out(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return out;
  }

  friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries out(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return out;
  }

  /// Cauchy product; the factor order is kept, so matrix series multiply as matrices.
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries out(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t k = 0; k <= out.order(); ++k) {
      T sum = a.zero_;
      for (std::size_t j = 0; j <= k; ++j) sum = sum + a.coeffs_[j] * b.coeffs_[k - j];
      out.coeffs_[k] = sum;
    }
    return out;
  }

  template <class S, class = std::enable_if_t<std::is_arithmetic_v<S> || std::is_same_v<S, std::complex<double>>>>
  friend FormalSeries operator*(S s, const FormalSeries& a) {
    FormalSeries out = a;
    for (auto& c : out.coeffs_) c = s * c;
    return out;
  }

 private:
  std::vector<T> coeffs_;
  T zero_;
};

/// exp of a scalar series: with E = exp(a), k E_k = sum_{j=1..k} j a_j E_{k-j}.
template <class T>
FormalSeries<T> exp(const FormalSeries<T>& a) {
  using std::exp;
  FormalSeries<T> out(a.order(), a.zero());
  out[0] = exp(a[0]);
  for (std::size_t k = 1; k <= a.order(); ++k) {
    T sum = a.zero();
    for (std::size_t j = 1; j <= k; ++j) sum += static_cast<double>(j) * a[j] * out[k - j];
    out[k] = sum / static_cast<double>(k);
  }
  return out;
}

/// log of a scalar series with a_0 != 0: with L = log(a), k a_0 L_k = k a_k - sum_{j=1..k-1} j L_j a_{k-j}.
template <class T>
FormalSeries<T> log(const FormalSeries<T>& a) {
  using std::log;
  if (a[0] == T(0)) throw domain_error("log of a formal series needs a nonzero constant term");
  FormalSeries<T> out(a.order(), a.zero());
  out[0] = log(a[0]);
  for (std::size_t k = 1; k <= a.order(); ++k) {
    T sum = static_cast<double>(k) * a[k];
    for (std::size_t j = 1; j < k; ++j) sum -= static_cast<double>(j) * out[j] * a[k - j];
    out[k] = sum / (static_cast<double>(k) * a[0]);
  }
  return out;
}

}  // namespace kmsent::findim
