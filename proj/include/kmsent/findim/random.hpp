#pragma once

// Seeded random test systems.

#include <cmath>
#include <cstdint>
#include <random>

#include "kmsent/findim/linalg.hpp"
#include "kmsent/findim/system.hpp"

namespace kmsent::findim {

using Rng = std::mt19937_64;

/// Complex matrix with independent standard normal real and imaginary parts.
inline Matrix random_matrix(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

/// GUE-like Hermitian matrix with spectrum of order `scale`.
inline Matrix random_hermitian(int dim, Rng& rng, double scale = 1.0) {
  const Matrix g = random_matrix(dim, rng);
  return (scale / (2.0 * std::sqrt(2.0 * dim))) * (g + g.adjoint());
}

struct SystemScales {
  double hamiltonian = 1.0;
  double perturbation = 0.5;
};

inline FiniteSystem random_system(int dim, double beta, Rng& rng, const SystemScales& scales = {}) {
  Matrix h = random_hermitian(dim, rng, scales.hamiltonian);
  Matrix p1 = random_hermitian(dim, rng, scales.perturbation);
  Matrix p2 = random_hermitian(dim, rng, scales.perturbation);
  Matrix p3 = random_hermitian(dim, rng, scales.perturbation);
  return FiniteSystem(std::move(h), std::move(p1), std::move(p2), std::move(p3), beta);
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace kmsent::findim
