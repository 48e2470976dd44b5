#pragma once

#include "apd/oracles.hpp"

#include <stdexcept>

namespace apd {

/// Accelerated proximal-gradient fallback for augmented subproblems whose
/// coupling operator is not a multiple of the identity. Off by default.
struct InnerSolverOptions {
  bool enabled = false;
  double tol = 1e-10;
  int max_iters = 500;
};

/// No exact or iterative way to solve an augmented subproblem was available.
class SubproblemUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves argmin h(z) + <linear, z> + (penalty/2)||C z + offset||^2
///                     + (prox_weight/2)||z - center||^2.
/// Tried in order: closed form when C = cI, the user hook, h's own exact
/// solver, the inner loop when enabled. Throws SubproblemUnavailable otherwise.
Vector solve_augmented_subproblem(const ProxOracle& h, const AugmentedSolver& user,
                                  const AugmentedSubproblem& sub, const InnerSolverOptions& inner);

/// The inner loop alone; stops on relative step tol or after max_iters.
Vector inner_prox_gradient(const ProxOracle& h, const AugmentedSubproblem& sub, const InnerSolverOptions& inner);

}  // namespace apd
