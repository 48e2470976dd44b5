#pragma once

#include "apd/oracles.hpp"

namespace apd {

/// Minimizer of 1/2 z'Hz + <g, z> plus the augmented and proximal terms of
/// `sub`, by a dense Cholesky solve. H must be symmetric positive semidefinite.
Vector solve_quadratic_augmented(const Matrix& H, const Vector& g, const AugmentedSubproblem& sub);

/// q(x) = 1/2 x'Px + <p, x> + c with P symmetric positive semidefinite.
/// Serves both as a smooth oracle (Family-2 f1, ODE blocks) and as a prox
/// oracle with exact augmented solves.
class QuadraticFunction final : public ProxOracle, public SmoothOracle {
 public:
  /// P is symmetrized; its extreme eigenvalues give L and mu.
  QuadraticFunction(Matrix P, Vector p, double c = 0.0);

  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  std::optional<Vector> solve_augmented(const AugmentedSubproblem& sub) const override;

  Vector gradient(const Vector& x) const override;
  double lipschitz() const override { return lipschitz_; }
  double strong_convexity() const override { return strong_convexity_; }

  const Matrix& hessian() const { return P_; }
  const Vector& linear() const { return p_; }

 private:
  Matrix P_;
  Vector p_;
  double c_;
  double lipschitz_;
  double strong_convexity_;
};

}  // namespace apd
