#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kmsent/errors.hpp"

namespace kmsent {

/// Real radial Gaussian momentum profile g(k) = amplitude exp(-k^2 / (2 width^2)).
/// Real and radial, so g^(-P) = conj(g^(P)) holds automatically.
class GaussianProfile {
 public:
  GaussianProfile(double amplitude, double width) : amplitude_(amplitude), width_(width) {
    if (!std::isfinite(amplitude)) throw configuration_error("GaussianProfile: non-finite amplitude");
    if (!(width > 0.0) || !std::isfinite(width))
      throw configuration_error("GaussianProfile: width must be positive");
  }
  double operator()(double k) const noexcept {
    return amplitude_ * std::exp(-0.5 * k * k / (width_ * width_));
  }
  double amplitude() const noexcept { return amplitude_; }
  double width() const noexcept { return width_; }

  /// Momentum beyond which g^2 < amplitude^2 e^{-decades_e}.
  double momentum_cutoff(double decades_e = 40.0) const noexcept {
    return width_ * std::sqrt(decades_e);
  }

  friend bool operator==(const GaussianProfile&, const GaussianProfile&) = default;

 private:
  double amplitude_;
  double width_;
};

inline constexpr std::size_t kMaxFunctionalOrder = 3;

/// Cocycle generator in shared-profile form: K^(l)(p_1..p_l) = c_l prod_j g(|p_j|),
/// l = 1..L with L <= 3. coeffs[l-1] holds c_l.
class SharedProfileFunctional {
 public:
  SharedProfileFunctional(std::vector<double> coeffs, GaussianProfile profile)
      : coeffs_(std::move(coeffs)), profile_(profile) {
    if (coeffs_.empty() || coeffs_.size() > kMaxFunctionalOrder)
      throw configuration_error("SharedProfileFunctional: number of orders must be in [1, 3] (got " +
                                std::to_string(coeffs_.size()) + ")");
    for (double c : coeffs_)
      if (!std::isfinite(c)) throw configuration_error("SharedProfileFunctional: non-finite coefficient");
  }

  static SharedProfileFunctional zero(GaussianProfile profile, std::size_t orders) {
    return SharedProfileFunctional(std::vector<double>(orders, 0.0), profile);
  }

  std::size_t orders() const noexcept { return coeffs_.size(); }
  double coeff(std::size_t l) const { return coeffs_.at(l - 1); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  const GaussianProfile& profile() const noexcept { return profile_; }

  SharedProfileFunctional scaled(double s) const {
    auto c = coeffs_;
    for (double& x : c) x *= s;
    return {std::move(c), profile_};
  }

  SharedProfileFunctional with_coeffs(std::vector<double> c) const { return {std::move(c), profile_}; }

  friend bool operator==(const SharedProfileFunctional&, const SharedProfileFunctional&) = default;

 private:
  std::vector<double> coeffs_;
  GaussianProfile profile_;
};

/// Per-order coefficients of F = sin(ft/2)(K1+K3-2K2) + i cos(ft/2)(K1-K3):
/// a_l = c1_l + c3_l - 2 c2_l, b_l = c1_l - c3_l.
struct FCoefficients {
  std::vector<double> a;
  std::vector<double> b;
};

inline void require_compatible(const SharedProfileFunctional& x, const SharedProfileFunctional& y) {
  if (!(x.profile() == y.profile()))
    throw configuration_error("functionals do not share the same profile");
  if (x.orders() != y.orders())
    throw configuration_error("functionals have different truncation orders (" +
                              std::to_string(x.orders()) + " vs " + std::to_string(y.orders()) + ")");
}

inline FCoefficients combine(const SharedProfileFunctional& k1, const SharedProfileFunctional& k2,
                             const SharedProfileFunctional& k3) {
  require_compatible(k1, k2);
  require_compatible(k1, k3);
  FCoefficients out;
  out.a.reserve(k1.orders());
  out.b.reserve(k1.orders());
  for (std::size_t l = 1; l <= k1.orders(); ++l) {
    out.a.push_back(k1.coeff(l) + k3.coeff(l) - 2.0 * k2.coeff(l));
    out.b.push_back(k1.coeff(l) - k3.coeff(l));
  }
  return out;
}

/// Formal self-adjointness of the representation: real coefficients and a
/// real radial profile. Always true for a constructed functional.
inline bool validate_self_adjoint(const SharedProfileFunctional& k) {
  for (double c : k.coeffs())
    if (!std::isfinite(c)) return false;
  const auto& g = k.profile();
  return std::isfinite(g.amplitude()) && g.width() > 0.0;
}

}  // namespace kmsent
