#pragma once

#include "apd/linear_operator.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <optional>

namespace apd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Data of the block subproblem
///
///   argmin_z  h(z) + <linear, z> + (penalty/2)||C z + offset||^2
///                  + (prox_weight/2)||z - center||^2
///
/// where h is the block objective (constraint set included) and C the
/// coupling operator of the block.
struct AugmentedSubproblem {
  const Vector& linear;
  const LinearOperator& op;
  const Vector& offset;
  double penalty;
  double prox_weight;
  const Vector& center;
};

/// Proximal access to a closed convex function. The constraint set of the
/// block is folded in: value() is +inf outside it and prox() lands inside it.
class ProxOracle {
 public:
  virtual ~ProxOracle() = default;

  /// argmin_u h(u) + ||u - z||^2 / (2 tau), tau > 0.
  virtual Vector prox(const Vector& z, double tau) const = 0;
  virtual double value(const Vector& x) const = 0;

  /// Membership test for the folded-in set; true where there is no set.
  virtual bool contains(const Vector& /*x*/, double /*tol*/ = 1e-12) const { return true; }

  /// Exact solver for AugmentedSubproblem, for functions where one is
  /// cheap (quadratics). nullopt means "not available".
  virtual std::optional<Vector> solve_augmented(const AugmentedSubproblem& /*sub*/) const {
    return std::nullopt;
  }
};

/// Differentiable convex function with L-Lipschitz gradient and modulus mu.
class SmoothOracle {
 public:
  virtual ~SmoothOracle() = default;

  virtual Vector gradient(const Vector& x) const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual double lipschitz() const = 0;
  virtual double strong_convexity() const = 0;
};

using ProxPtr = std::shared_ptr<const ProxOracle>;
using SmoothPtr = std::shared_ptr<const SmoothOracle>;

/// User hook solving AugmentedSubproblem for a given block function.
using AugmentedSolver = std::function<Vector(const ProxOracle& block, const AugmentedSubproblem& sub)>;

}  // namespace apd
