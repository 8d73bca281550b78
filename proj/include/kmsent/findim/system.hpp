#pragma once

// Three perturbations of a finite-dimensional Hamiltonian: Araki vectors in
// the Hilbert-Schmidt representation, the generalized relative-entropy
// formula, and the exact entropy production and its balance identity.

#include <cmath>
#include <string>

#include "kmsent/errors.hpp"
#include "kmsent/findim/linalg.hpp"
#include "kmsent/findim/states.hpp"
#include "kmsent/quadrature.hpp"

namespace kmsent::findim {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 16;

class FiniteSystem {
 public:
  FiniteSystem(Matrix h, Matrix p1, Matrix p2, Matrix p3, double beta)
      : h_(std::move(h)), p1_(std::move(p1)), p2_(std::move(p2)), p3_(std::move(p3)), beta_(beta) {
    const auto d = h_.rows();
    if (d < kMinDim || d > kMaxDim)
      throw domain_error("FiniteSystem: dim must be in [2, 16] (got " + std::to_string(d) + ")");
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw domain_error("FiniteSystem: beta must be positive");
    require_hermitian(h_, "H");
    require_hermitian(p1_, "P1");
    require_hermitian(p2_, "P2");
    require_hermitian(p3_, "P3");
    if (p1_.rows() != d || p2_.rows() != d || p3_.rows() != d)
      throw domain_error("FiniteSystem: perturbations must match the dimension of H");
  }

  int dim() const noexcept { return static_cast<int>(h_.rows()); }
  double beta() const noexcept { return beta_; }
  const Matrix& h() const noexcept { return h_; }
  const Matrix& p1() const noexcept { return p1_; }
  const Matrix& p2() const noexcept { return p2_; }
  const Matrix& p3() const noexcept { return p3_; }

  /// H + P_i for i in {1, 2, 3}; i = 0 gives H.
  Matrix perturbed(int i) const {
    switch (i) {
      case 0: return h_;
      case 1: return h_ + p1_;
      case 2: return h_ + p2_;
      case 3: return h_ + p3_;
      default: throw domain_error("perturbation index must be 0..3");
    }
  }

  Matrix state(int i) const { return gibbs_state(perturbed(i), beta_); }

 private:
  Matrix h_, p1_, p2_, p3_;
  double beta_;
};

/// Hilbert-Schmidt vector representatives. A vector Omega induces the state
/// A -> tr(Omega^dagger A Omega), i.e. the density matrix Omega Omega^dagger.
struct ArakiVectors {
  Matrix omega0, omega1, omega3;
  /// Norms N_i of U_i Omega_0, U_i = e^{-beta (H + P_i)/2} e^{beta H/2}.
  double n1 = 1.0, n3 = 1.0;
};

inline Matrix induced_state(const Matrix& omega) { return omega * omega.adjoint(); }

inline ArakiVectors araki_vectors(const FiniteSystem& sys) {
  const double beta = sys.beta();
  ArakiVectors out;
  out.omega0 = sqrt_psd(sys.state(0));
  const Matrix half_free = exp_hermitian(sys.h(), 0.5 * beta);
  auto build = [&](int i, Matrix& omega, double& norm) {
    const Matrix u = exp_hermitian(sys.perturbed(i), -0.5 * beta) * half_free;
    const Matrix v = u * out.omega0;
    norm = std::sqrt(hs_inner(v, v).real());
    omega = v / norm;
  };
  build(1, out.omega1, out.n1);
  build(3, out.omega3, out.n3);
  return out;
}

/// e^{it(H+P2)} rho_1 e^{-it(H+P2)}: the state of W_2(t) Omega_1.
inline Matrix evolved_state(const FiniteSystem& sys, double t) {
  const Matrix w = unitary_evolution(sys.perturbed(2), t);
  return w * sys.state(1) * w.adjoint();
}

/// -beta omega_1(P1 - P2) + beta omega_psi(P3 - P2) - log N1^2 + log N3^2.
inline double generalized_formula_findim(const FiniteSystem& sys, double t) {
  const ArakiVectors v = araki_vectors(sys);
  const double beta = sys.beta();
  const Matrix rho1 = induced_state(v.omega1);
  const Matrix psi = [&] {
    const Matrix w = unitary_evolution(sys.perturbed(2), t);
    return Matrix(w * rho1 * w.adjoint());
  }();
  const double static_term = -beta * expectation(rho1, sys.p1() - sys.p2()).real();
  const double evolved_term = beta * expectation(psi, sys.p3() - sys.p2()).real();
  return static_term + evolved_term - 2.0 * std::log(v.n1) + 2.0 * std::log(v.n3);
}

/// S(omega_psi || omega_3) from the trace formula.
inline double relative_entropy_evolved_exact(const FiniteSystem& sys, double t) {
  return relative_entropy_exact(evolved_state(sys, t), sys.state(3));
}

/// S(omega_psi || omega_3) through the relative modular operator (d <= 4).
inline double relative_entropy_evolved_modular(const FiniteSystem& sys, double t) {
  return relative_entropy_modular(evolved_state(sys, t), sys.state(3));
}

/// E(t) = d/dt omega_psi(t)(beta (P3 - P2)) = i beta tr(rho_psi [P3 - P2, H + P2]).
inline double entropy_production_exact(const FiniteSystem& sys, double t) {
  const Matrix x = sys.p3() - sys.p2();
  const Matrix psi = evolved_state(sys, t);
  return (Complex(0.0, sys.beta()) * expectation(psi, commutator(x, sys.perturbed(2)))).real();
}

/// |S(t) - S(0) - int_0^t E(s) ds|, S from the generalized formula.
inline double entropy_balance_residual_findim(const FiniteSystem& sys, double t, double tol = 1e-13) {
  if (t == 0.0) return 0.0;
  const double integral =
      quad::adaptive_gauss_kronrod([&](double s) { return entropy_production_exact(sys, s); }, 0.0, t, tol);
  return std::abs(generalized_formula_findim(sys, t) - generalized_formula_findim(sys, 0.0) - integral);
}

}  // namespace kmsent::findim
