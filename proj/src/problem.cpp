#include "apd/problem.hpp"

#include <stdexcept>

namespace apd {

double BlockFunction::value(const Vector& x) const {
  if (prox) return prox->value(x);
  if (smooth) return smooth->value(x) + (rest ? rest->value(x) : 0.0);
  throw std::logic_error("BlockFunction: no oracle attached");
}

bool BlockFunction::contains(const Vector& x, double tol) const {
  if (prox) return prox->contains(x, tol);
  if (rest) return rest->contains(x, tol);
  return true;
}

bool SeparableProblem::is_composite() const {
  if (!B || B->rows() != B->cols()) return false;
  const auto c = B->scaled_identity_factor();
  return c && *c == -1.0 && b.size() == B->rows() && (b.size() == 0 || b.cwiseAbs().maxCoeff() == 0.0);
}

void SeparableProblem::validate() const {
  if (!A || !B) throw std::invalid_argument("SeparableProblem: operators A and B are required");
  if (A->rows() != B->rows()) throw std::invalid_argument("SeparableProblem: A and B must have the same row count");
  if (b.size() != A->rows()) throw std::invalid_argument("SeparableProblem: b has the wrong length");
  if (!f.prox && !f.smooth) throw std::invalid_argument("SeparableProblem: f has no oracle");
  if (!g.prox && !g.smooth) throw std::invalid_argument("SeparableProblem: g has no oracle");
  if (mu_f < 0.0 || mu_g < 0.0) throw std::invalid_argument("SeparableProblem: moduli must be nonnegative");
  if (saddle) {
    if (saddle->x.size() != x_dim() || saddle->y.size() != y_dim() ||
        saddle->lambda.size() != constraint_dim()) {
      throw std::invalid_argument("SeparableProblem: saddle point has wrong dimensions");
    }
    const double res = feasibility_residual(*this, saddle->x, saddle->y);
    if (res > 1e-8 * (1.0 + b.norm())) {
      throw std::invalid_argument("SeparableProblem: reference saddle point is not feasible");
    }
  }
}

Vector constraint_residual(const SeparableProblem& p, const Vector& x, const Vector& y) {
  if (x.size() != p.x_dim() || y.size() != p.y_dim()) {
    throw std::invalid_argument("constraint_residual: dimension mismatch");
  }
  return p.A->apply(x) + p.B->apply(y) - p.b;
}

double feasibility_residual(const SeparableProblem& p, const Vector& x, const Vector& y) {
  return constraint_residual(p, x, y).norm();
}

double objective(const SeparableProblem& p, const Vector& x, const Vector& y) {
  return p.f.value(x) + p.g.value(y);
}

double lagrangian_value(const SeparableProblem& p, const Vector& x, const Vector& y,
                        const Vector& lambda) {
  if (lambda.size() != p.constraint_dim()) throw std::invalid_argument("lagrangian_value: dimension mismatch");
  const Vector r = constraint_residual(p, x, y);
  const double fy = objective(p, x, y);
  if (fy == kInfinity) return kInfinity;
  return fy + lambda.dot(r);
}

double composite_objective(const SeparableProblem& p, const Vector& x) {
  if (!p.is_composite()) throw std::invalid_argument("composite_objective: problem is not of the form f(x) + g(Ax)");
  return p.f.value(x) + p.g.value(p.A->apply(x));
}

}  // namespace apd
