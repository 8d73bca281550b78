#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <tuple>
#include <vector>

#include "kmsent/kmsent.hpp"

namespace kmsent::test {

/// One shared spectral model per (beta, mass, amplitude, width, orders), built lazily.
inline const SpectralModel& shared_model(double beta, double mass, double amplitude, double width,
                                         std::size_t orders = 3) {
  using Key = std::tuple<double, double, double, double, std::size_t>;
  static std::map<Key, std::unique_ptr<SpectralModel>> cache;
  const Key key{beta, mass, amplitude, width, orders};
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto model = std::make_unique<SpectralModel>(ThermalParams(beta, mass), GaussianProfile(amplitude, width), orders);
    it = cache.emplace(key, std::move(model)).first;
  }
  return *it->second;
}

inline const SpectralModel& unit_model(std::size_t orders = 3) { return shared_model(1.0, 1.0, 1.0, 1.0, orders); }

inline std::vector<double> random_coeffs(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(n);
  for (auto& x : c) x = u(rng);
  return c;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace kmsent::test
