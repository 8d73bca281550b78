#pragma once

// Gibbs states, the KMS identity, and quantum relative entropy by two routes.

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "kmsent/errors.hpp"
#include "kmsent/findim/linalg.hpp"

namespace kmsent::findim {

/// e^{-beta H} / tr e^{-beta H}, shifted by the ground energy for stability.
inline Matrix gibbs_state(const Matrix& h, double beta) {
  require_hermitian(h, "Hamiltonian");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw domain_error("beta must be positive and finite");
  const HermitianEigen eig(h);
  const double e0 = eig.values().minCoeff();
  double z = 0.0;
  for (Eigen::Index i = 0; i < eig.dim(); ++i) z += std::exp(-beta * (eig.values()(i) - e0));
  return eig.apply([&](double e) { return std::exp(-beta * (e - e0)) / z; });
}

/// log tr e^{-beta H}.
inline double log_partition_function(const Matrix& h, double beta) {
  const HermitianEigen eig(h);
  const double e0 = eig.values().minCoeff();
  double z = 0.0;
  for (Eigen::Index i = 0; i < eig.dim(); ++i) z += std::exp(-beta * (eig.values()(i) - e0));
  return std::log(z) - beta * e0;
}

/// tr(rho X).
inline Complex expectation(const Matrix& rho, const Matrix& x) { return (rho * x).trace(); }

/// |omega(A alpha_{i beta}(B)) - omega(B A)| with alpha_{i beta}(B) = e^{-beta H} B e^{beta H}.
inline double kms_residual(const Matrix& h, double beta, const Matrix& a, const Matrix& b) {
  const Matrix rho = gibbs_state(h, beta);
  const Matrix rotated = exp_hermitian(h, -beta) * b * exp_hermitian(h, beta);
  return std::abs(expectation(rho, a * rotated) - expectation(rho, b * a));
}

inline void require_density_matrix(const Matrix& rho, const std::string& name) {
  require_hermitian(rho, name, 1e-12);
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw domain_error(name + " must have unit trace");
}

/// tr rho (log rho - log sigma). Zero eigenvalues of rho contribute 0 log 0 = 0;
/// sigma must be faithful.
inline double relative_entropy_exact(const Matrix& rho, const Matrix& sigma) {
  require_density_matrix(rho, "rho");
  require_density_matrix(sigma, "sigma");
  if (rho.rows() != sigma.rows()) throw domain_error("rho and sigma have different dimensions");
  const Matrix log_sigma = log_positive(sigma, "sigma");
  const HermitianEigen eig(rho);
  double entropy_term = 0.0;
  for (Eigen::Index i = 0; i < eig.dim(); ++i) {
    const double p = eig.values()(i);
    if (p > 0.0) entropy_term += p * std::log(p);
  }
  return entropy_term - expectation(rho, log_sigma).real();
}

/// Same quantity through the relative modular operator in the Hilbert-Schmidt
/// representation: Delta X = sigma X rho^{-1}, i.e. Delta = rho^{-T} (x) sigma on
/// vec(X), and S = -<rho^{1/2}, log Delta rho^{1/2}>. Intended for d <= 4
/// (Delta is d^2 x d^2); rho must be faithful here as well.
inline double relative_entropy_modular(const Matrix& rho, const Matrix& sigma) {
  require_density_matrix(rho, "rho");
  require_density_matrix(sigma, "sigma");
  if (rho.rows() != sigma.rows()) throw domain_error("rho and sigma have different dimensions");
  const HermitianEigen rho_eig(rho);
  if (rho_eig.values().minCoeff() <= 0.0) throw domain_error("modular route needs a faithful rho");
  const Matrix rho_inv_t = rho_eig.apply([](double x) { return 1.0 / x; }).transpose();
  const Matrix delta = Eigen::kroneckerProduct(rho_inv_t, sigma).eval();
  const Matrix log_delta = log_positive(delta, "relative modular operator");
  const Matrix root = rho_eig.apply([](double x) { return std::sqrt(x); });
  const Eigen::Map<const Eigen::VectorXcd> vec(root.data(), root.size());
  return -(vec.adjoint() * log_delta * vec)(0, 0).real();
}

}  // namespace kmsent::findim
