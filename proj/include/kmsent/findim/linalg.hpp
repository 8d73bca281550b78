#pragma once

// Dense complex linear algebra helpers. Every matrix function goes through a
// Hermitian eigendecomposition.

#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "kmsent/errors.hpp"

namespace kmsent::findim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-13;

/// Largest entry of M - M^dagger, relative to max(1, largest entry of M).
inline double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

inline void require_hermitian(const Matrix& m, const std::string& name, double tol = kHermiticityTol) {
  if (m.rows() != m.cols())
    throw domain_error(name + " must be square (got " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ")");
  if (m.rows() == 0) throw domain_error(name + " must be non-empty");
  if (hermiticity_defect(m) > tol) throw domain_error(name + " is not Hermitian to " + std::to_string(tol));
}

/// Eigendecomposition M = V diag(values) V^dagger of a Hermitian matrix.
class HermitianEigen {
 public:
  explicit HermitianEigen(const Matrix& m) {
    // Symmetrize away roundoff before handing off to the solver.
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw domain_error("Hermitian eigendecomposition failed");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }

  const RealVector& values() const noexcept { return values_; }
  const Matrix& vectors() const noexcept { return vectors_; }
  Eigen::Index dim() const noexcept { return values_.size(); }

  /// V diag(f(values)) V^dagger.
  template <class F>
  Matrix apply(F&& f) const {
    Eigen::VectorXcd d(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) d(i) = Complex(f(values_(i)));
    return vectors_ * d.asDiagonal() * vectors_.adjoint();
  }

  /// Change of basis into and out of the eigenbasis.
  Matrix to_eigenbasis(const Matrix& x) const { return vectors_.adjoint() * x * vectors_; }
  Matrix from_eigenbasis(const Matrix& x) const { return vectors_ * x * vectors_.adjoint(); }

 private:
  RealVector values_;
  Matrix vectors_;
};

/// e^{s M} for Hermitian M and real s.
inline Matrix exp_hermitian(const Matrix& m, double s) {
  return HermitianEigen(m).apply([s](double x) { return std::exp(s * x); });
}

/// e^{i t M} for Hermitian M.
inline Matrix unitary_evolution(const Matrix& m, double t) {
  const HermitianEigen eig(m);
  Eigen::VectorXcd d(eig.dim());
  for (Eigen::Index i = 0; i < eig.dim(); ++i) d(i) = std::polar(1.0, t * eig.values()(i));
  return eig.vectors() * d.asDiagonal() * eig.vectors().adjoint();
}

/// Logarithm of a positive definite Hermitian matrix.
inline Matrix log_positive(const Matrix& m, const std::string& name) {
  const HermitianEigen eig(m);
  const double top = eig.values().cwiseAbs().maxCoeff();
  if (eig.values().minCoeff() <= 1e-300 || eig.values().minCoeff() <= 1e-15 * top)
    throw domain_error(name + " is singular (not faithful)");
  return eig.apply([](double x) { return std::log(x); });
}

inline Matrix sqrt_psd(const Matrix& m) {
  return HermitianEigen(m).apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// tr(X^dagger Y).
inline Complex hs_inner(const Matrix& x, const Matrix& y) { return (x.adjoint() * y).trace(); }

}  // namespace kmsent::findim
