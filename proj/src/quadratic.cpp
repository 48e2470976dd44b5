#include "apd/quadratic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace apd {

Vector solve_quadratic_augmented(const Matrix& H, const Vector& g, const AugmentedSubproblem& sub) {
  const Matrix C = sub.op.to_dense();
  Matrix K = H + sub.penalty * C.transpose() * C;
  K.diagonal().array() += sub.prox_weight;
  const Vector rhs = -g - sub.linear - sub.penalty * C.transpose() * sub.offset + sub.prox_weight * sub.center;
  Eigen::LDLT<Matrix> ldlt(K);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("solve_quadratic_augmented: factorization failed");
  return ldlt.solve(rhs);
}

QuadraticFunction::QuadraticFunction(Matrix P, Vector p, double c) : p_(std::move(p)), c_(c) {
  if (P.rows() != P.cols() || P.rows() != p_.size()) {
    throw std::invalid_argument("QuadraticFunction: dimension mismatch");
  }
  P_ = 0.5 * (P + P.transpose());
  if (P_.size() == 0) {
    lipschitz_ = strong_convexity_ = 0.0;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(P_, Eigen::EigenvaluesOnly);
  lipschitz_ = std::max(0.0, eig.eigenvalues().maxCoeff());
  strong_convexity_ = std::max(0.0, eig.eigenvalues().minCoeff());
}

Vector QuadraticFunction::prox(const Vector& z, double tau) const {
  Matrix K = P_;
  K.diagonal().array() += 1.0 / tau;
  return K.ldlt().solve(z / tau - p_);
}

double QuadraticFunction::value(const Vector& x) const { return 0.5 * x.dot(P_ * x) + p_.dot(x) + c_; }

Vector QuadraticFunction::gradient(const Vector& x) const { return P_ * x + p_; }

std::optional<Vector> QuadraticFunction::solve_augmented(const AugmentedSubproblem& sub) const {
  return solve_quadratic_augmented(P_, p_, sub);
}

}  // namespace apd
