#pragma once

#include "apd/oracles.hpp"

namespace apd {

// Closed-form proximal maps. `t` is the full threshold (step times weight).

/// sign(z_i) * max(|z_i| - t, 0).
Vector prox_l1(const Vector& z, double t);
/// Prox of t*||. - shift||_1: shift + prox_l1(z - shift, t).
Vector prox_shifted_l1(const Vector& z, const Vector& shift, double t);
/// Prox of tau*(lambda*||.||_1 + mu/2*||.||^2).
Vector prox_elastic_net(const Vector& z, double lambda, double mu, double tau);
/// Prox of tau*weight*sum_j max(0, 1 - c_j (y_j - bias_j)); labels must be +-1.
Vector prox_hinge_sum(const Vector& z, const Vector& labels, const Vector& bias, double weight,
                      double tau);
Vector project_box(const Vector& z, const Vector& lo, const Vector& hi);

class ZeroFunction final : public ProxOracle {
 public:
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  std::optional<Vector> solve_augmented(const AugmentedSubproblem& sub) const override;
};

/// lambda * ||x||_1.
class L1Norm final : public ProxOracle {
 public:
  explicit L1Norm(double lambda);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// lambda * ||x - shift||_1.
class ShiftedL1Norm final : public ProxOracle {
 public:
  ShiftedL1Norm(Vector shift, double lambda = 1.0);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;

 private:
  Vector shift_;
  double lambda_;
};

/// mu/2 * ||x||^2. Also a smooth oracle (mu = 0 gives the zero function
/// with a gradient, used as f1 when f has no smooth part).
class SquaredL2 final : public ProxOracle, public SmoothOracle {
 public:
  explicit SquaredL2(double mu);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  std::optional<Vector> solve_augmented(const AugmentedSubproblem& sub) const override;

  Vector gradient(const Vector& x) const override { return mu_ * x; }
  double lipschitz() const override { return mu_; }
  double strong_convexity() const override { return mu_; }

 private:
  double mu_;
};

/// lambda * ||x||_1 + mu/2 * ||x||^2.
class ElasticNet final : public ProxOracle {
 public:
  ElasticNet(double lambda, double mu);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;

 private:
  double lambda_;
  double mu_;
};

/// weight * sum_j max(0, 1 - c_j (y_j - bias_j)).
class HingeSum final : public ProxOracle {
 public:
  /// Throws std::invalid_argument when a label is not +-1.
  HingeSum(Vector labels, Vector bias, double weight);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;

  const Vector& labels() const { return labels_; }
  const Vector& bias() const { return bias_; }

 private:
  Vector labels_;
  Vector bias_;
  double weight_;
};

/// Indicator of [lo, hi] (componentwise).
class Box final : public ProxOracle {
 public:
  Box(Vector lo, Vector hi);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 1e-12) const override;

 private:
  Vector lo_;
  Vector hi_;
};

/// h + indicator of a box, for h separable with a prox that commutes with
/// clipping (true for every separable convex h on the real line).
class BoxConstrained final : public ProxOracle {
 public:
  BoxConstrained(ProxPtr inner, Vector lo, Vector hi);
  Vector prox(const Vector& z, double tau) const override;
  double value(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 1e-12) const override;

 private:
  ProxPtr inner_;
  Box box_;
};

}  // namespace apd
