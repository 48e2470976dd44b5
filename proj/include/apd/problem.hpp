#pragma once

#include "apd/linear_operator.hpp"
#include "apd/oracles.hpp"

#include <optional>
#include <string>

namespace apd {

/// One block of the objective. Which members are needed depends on the
/// method: proximal steps on the whole function use `prox`; the gradient
/// splitting h = smooth + rest uses `smooth` and `rest` (a missing `rest`
/// is the zero function). When several members are set they must describe
/// the same function.
struct BlockFunction {
  ProxPtr prox;
  SmoothPtr smooth;
  ProxPtr rest;
  /// Optional exact solver for augmented subproblems of this block.
  AugmentedSolver augmented;

  bool has_prox() const { return prox != nullptr; }
  bool has_split() const { return smooth != nullptr; }
  /// Gradient-only representation (smooth part with no nonsmooth remainder).
  bool is_smooth() const { return smooth != nullptr && rest == nullptr; }

  double value(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-12) const;
};

struct SaddlePoint {
  Vector x;
  Vector y;
  Vector lambda;
};

/// min f(x) + g(y)  s.t.  A x + B y = b.
struct SeparableProblem {
  BlockFunction f;
  BlockFunction g;
  OperatorPtr A;
  OperatorPtr B;
  Vector b;
  double mu_f = 0.0;
  double mu_g = 0.0;
  std::optional<SaddlePoint> saddle;
  std::string name;

  Index x_dim() const { return A->cols(); }
  Index y_dim() const { return B->cols(); }
  Index constraint_dim() const { return A->rows(); }

  /// B = -I and b = 0, i.e. the problem is min f(x) + g(Ax).
  bool is_composite() const;

  /// Throws std::invalid_argument on inconsistent dimensions, negative
  /// moduli or an infeasible reference saddle point.
  void validate() const;
};

/// A x + B y - b.
Vector constraint_residual(const SeparableProblem& p, const Vector& x, const Vector& y);

/// ||A x + B y - b||.
double feasibility_residual(const SeparableProblem& p, const Vector& x, const Vector& y);

/// f(x) + g(y); +inf outside the constraint sets.
double objective(const SeparableProblem& p, const Vector& x, const Vector& y);

/// f(x) + g(y) + <lambda, A x + B y - b>.
double lagrangian_value(const SeparableProblem& p, const Vector& x, const Vector& y,
                        const Vector& lambda);

/// P(x) = f(x) + g(A x) for composite problems; throws otherwise.
double composite_objective(const SeparableProblem& p, const Vector& x);

}  // namespace apd
