#include "apd/subproblem.hpp"

#include "apd/linear_operator.hpp"

#include <algorithm>
#include <cmath>

namespace apd {

Vector solve_augmented_subproblem(const ProxOracle& h, const AugmentedSolver& user,
                                  const AugmentedSubproblem& sub, const InnerSolverOptions& inner) {
  if (!(sub.prox_weight > 0.0) || sub.penalty < 0.0) {
    throw std::invalid_argument("solve_augmented_subproblem: need prox_weight > 0 and penalty >= 0");
  }
  if (auto c = sub.op.scaled_identity_factor()) {
    // The penalty merges into the proximal term.
    const double W = sub.penalty * (*c) * (*c) + sub.prox_weight;
    const Vector point = (sub.prox_weight * sub.center - sub.penalty * (*c) * sub.offset - sub.linear) / W;
    return h.prox(point, 1.0 / W);
  }
  if (user) return user(h, sub);
  if (auto z = h.solve_augmented(sub)) return *z;
  if (inner.enabled) return inner_prox_gradient(h, sub, inner);
  throw SubproblemUnavailable(
      "augmented subproblem with a general coupling operator needs an exact solver or the inner loop");
}

Vector inner_prox_gradient(const ProxOracle& h, const AugmentedSubproblem& sub, const InnerSolverOptions& inner) {
  const double normC = safe_operator_norm(sub.op);
  const double L = sub.penalty * normC * normC + sub.prox_weight;
  const double rho = sub.prox_weight;
  const double momentum = (std::sqrt(L) - std::sqrt(rho)) / (std::sqrt(L) + std::sqrt(rho));

  auto grad = [&](const Vector& z) -> Vector {
    return sub.linear + sub.penalty * sub.op.apply_adjoint(sub.op.apply(z) + sub.offset) +
           sub.prox_weight * (z - sub.center);
  };

  Vector z = h.prox(sub.center, 1.0 / L);
  Vector y = z;
  for (int it = 0; it < inner.max_iters; ++it) {
    const Vector next = h.prox(y - grad(y) / L, 1.0 / L);
    const double step = (next - z).norm();
    y = next + momentum * (next - z);
    z = next;
    if (step <= inner.tol * std::max(1.0, z.norm())) break;
  }
  return z;
}

}  // namespace apd
