#pragma once

// Uniform signed-frequency grids carrying the single-line density rho(nu) and
// its l-fold convolutions mu_l(f). The sum over positive/negative shell
// assignments of the lines is realized by rho being even in nu.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kmsent/errors.hpp"
#include "kmsent/functionals.hpp"
#include "kmsent/thermal.hpp"

namespace kmsent {

struct GridSettings {
  /// Half-width of the single-line grid; 0 selects default_half_width().
  double half_width = 0.0;
  /// Number of intervals across [-half_width, half_width]. Must be even so
  /// that nu = 0 is a node.
  std::size_t intervals = std::size_t{1} << 14;
  /// Relative tolerance of the step-halving and mass-product checks.
  double resolution_tol = 1e-3;
};

/// max(8/beta + m, sqrt(m^2 + 40 width^2)): past this frequency the Boltzmann
/// tail (for the density alone) and the Gaussian profile (once the sinh kernel
/// cancels the Boltzmann factor) are both negligible.
inline double default_half_width(const ThermalParams& params, const GaussianProfile& profile) {
  const double thermal = 8.0 / params.beta() + params.mass();
  const double kc = profile.momentum_cutoff(40.0);
  return std::max(thermal, std::hypot(params.mass(), kc));
}

/// Samples on the symmetric uniform grid nu_i = (i - half) * step, i = 0..2*half.
class SpectralGrid {
 public:
  SpectralGrid(double step, std::vector<double> values) : step_(step), values_(std::move(values)) {
    if (!(step > 0.0)) throw domain_error("SpectralGrid: step must be positive");
    if (values_.size() % 2 == 0) throw domain_error("SpectralGrid: sample count must be odd (symmetric grid)");
  }

  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t half() const noexcept { return values_.size() / 2; }
  double nu(std::size_t i) const noexcept {
    return (static_cast<double>(i) - static_cast<double>(half())) * step_;
  }
  double nu_min() const noexcept { return nu(0); }
  double nu_max() const noexcept { return nu(size() - 1); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Trapezoid integral of the samples.
  double mass() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v;
    s -= 0.5 * (values_.front() + values_.back());
    return s * step_;
  }

  /// Trapezoid integral using every other sample (step doubled).
  double coarse_mass() const noexcept {
    double s = 0.0;
    const std::size_t h = half();
    // keep the node at nu = 0; parity of h decides which indices survive
    for (std::size_t i = h % 2; i < size(); i += 2) s += values_[i];
    return s * 2.0 * step_;
  }

  double max_value() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

  double max_asymmetry() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      worst = std::max(worst, std::abs(values_[i] - values_[size() - 1 - i]));
    return worst;
  }

  bool nonnegative() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
  }

 private:
  double step_;
  std::vector<double> values_;
};

template <class Profile>
SpectralGrid sample_single_line_density(const ThermalParams& params, const Profile& profile,
                                        double half_width, std::size_t intervals) {
  if (intervals < 2 || intervals % 2 != 0)
    throw domain_error("sample_single_line_density: interval count must be even and >= 2");
  if (!(half_width > params.mass()))
    throw domain_error("sample_single_line_density: grid must extend beyond the mass gap");
  const std::size_t half = intervals / 2;
  const double step = half_width / static_cast<double>(half);
  std::vector<double> values(intervals + 1, 0.0);
  for (std::size_t i = 0; i <= half; ++i) {
    const double v = single_line_density(static_cast<double>(i) * step, profile, params);
    values[half + i] = v;
    values[half - i] = v;
  }
  return {step, std::move(values)};
}

struct ConvolvedDensity {
  std::size_t order;
  SpectralGrid grid;
};

/// mu_l = rho * ... * rho (l factors), by iterated step-weighted discrete
/// convolution. Only f >= 0 is computed; the negative half is mirrored.
inline ConvolvedDensity convolve_density(const SpectralGrid& rho, std::size_t l, double resolution_tol = 1e-3) {
  if (l < 1 || l > kMaxFunctionalOrder)
    throw unsupported_order_error("convolve_density: order must be in [1, 3] (got " + std::to_string(l) + ")");
  if (!rho.nonnegative()) throw domain_error("convolve_density: density has negative samples");
  if (rho.max_asymmetry() > 1e-12 * rho.max_value())
    throw domain_error("convolve_density: density is not even about nu = 0");

  const double m1 = rho.mass();
  if (!(m1 > 0.0)) throw resolution_error("convolve_density: density has no mass on the grid");
  if (std::abs(rho.coarse_mass() - m1) > resolution_tol * m1)
    throw resolution_error("convolve_density: trapezoid mass changes by more than " +
                           std::to_string(resolution_tol) + " under step doubling; grid too coarse");

  const double h = rho.step();
  const auto& r = rho.values();
  const std::ptrdiff_t half_r = static_cast<std::ptrdiff_t>(rho.half());

  std::vector<double> current = r;
  std::ptrdiff_t half_c = half_r;
  for (std::size_t j = 2; j <= l; ++j) {
    const std::ptrdiff_t half_n = half_c + half_r;
    std::vector<double> next(static_cast<std::size_t>(2 * half_n + 1), 0.0);
    for (std::ptrdiff_t k = 0; k <= half_n; ++k) {
      // sum over offsets i of current with |k - i| <= half_r
      const std::ptrdiff_t lo = std::max(-half_c, k - half_r);
      const std::ptrdiff_t hi = std::min(half_c, k + half_r);
      double s = 0.0;
      const double* cp = current.data() + half_c;
      const double* rp = r.data() + half_r + k;
      for (std::ptrdiff_t i = lo; i <= hi; ++i) s += cp[i] * rp[-i];
      next[static_cast<std::size_t>(half_n + k)] = s * h;
      next[static_cast<std::size_t>(half_n - k)] = s * h;
    }
    current = std::move(next);
    half_c = half_n;
  }

  SpectralGrid grid(h, std::move(current));
  const double expected = std::pow(m1, static_cast<double>(l));
  if (std::abs(grid.mass() - expected) > resolution_tol * expected)
    throw resolution_error("convolve_density: convolution mass deviates from the product of masses");
  return {l, std::move(grid)};
}

/// Single-line density for one (params, profile) pair together with its
/// convolutions up to max_order. Coefficients of the functionals factor out,
/// so one model serves every comparison sharing the profile.
class SpectralModel {
 public:
  SpectralModel(const ThermalParams& params, const GaussianProfile& profile, std::size_t max_order,
                GridSettings settings = {})
      : params_(params), profile_(profile), settings_(settings) {
    if (max_order < 1 || max_order > kMaxFunctionalOrder)
      throw unsupported_order_error("SpectralModel: max_order must be in [1, 3]");
    if (settings_.half_width <= 0.0) settings_.half_width = default_half_width(params, profile);
    SpectralGrid rho = sample_single_line_density(params_, profile_, settings_.half_width, settings_.intervals);
    for (std::size_t l = 1; l <= max_order; ++l)
      densities_.push_back(convolve_density(rho, l, settings_.resolution_tol));
  }

  const ThermalParams& params() const noexcept { return params_; }
  const GaussianProfile& profile() const noexcept { return profile_; }
  const GridSettings& settings() const noexcept { return settings_; }
  std::size_t max_order() const noexcept { return densities_.size(); }
  const SpectralGrid& rho() const noexcept { return densities_.front().grid; }

  const ConvolvedDensity& density(std::size_t l) const {
    if (l < 1 || l > densities_.size())
      throw unsupported_order_error("SpectralModel: order " + std::to_string(l) + " not available");
    return densities_[l - 1];
  }

  /// Trapezoid approximation of int mu_l(f) g(f) df.
  template <class G>
  double integrate(std::size_t l, G&& g) const {
    const SpectralGrid& grid = density(l).grid;
    const std::size_t n = grid.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = grid[i];
      if (v != 0.0) s += v * g(grid.nu(i));
    }
    s -= 0.5 * (grid[0] * g(grid.nu(0)) + grid[n - 1] * g(grid.nu(n - 1)));
    return s * grid.step();
  }

  /// Throws unless the functional is built on this model's profile with a
  /// supported number of orders.
  void require_compatible(const SharedProfileFunctional& k) const {
    if (!(k.profile() == profile_))
      throw configuration_error("functional profile does not match the spectral model profile");
    if (k.orders() > densities_.size())
      throw configuration_error("functional has more orders than the spectral model (" +
                                std::to_string(k.orders()) + " > " + std::to_string(densities_.size()) + ")");
  }

 private:
  ThermalParams params_;
  GaussianProfile profile_;
  GridSettings settings_;
  std::vector<ConvolvedDensity> densities_;
};

}  // namespace kmsent
