#pragma once

#include "apd/problem.hpp"
#include "apd/scheduler.hpp"
#include "apd/subproblem.hpp"

#include <optional>

namespace apd {

/// Primal-dual state. `u` is only meaningful for the second family, where
/// it holds the extrapolation point of the last step.
struct IterateState {
  Vector x;
  Vector v;
  Vector y;
  Vector w;
  Vector lambda;
  Vector u;
};

/// Defaults v0 = x0, w0 = y0, lambda0 = 0, u0 = x0.
IterateState initial_state(const SeparableProblem& p, const Vector& x0, const Vector& y0,
                           const std::optional<Vector>& v0 = std::nullopt,
                           const std::optional<Vector>& w0 = std::nullopt,
                           const std::optional<Vector>& lambda0 = std::nullopt);

/// x0 = 0, y0 = 0 of the right sizes.
IterateState zero_state(const SeparableProblem& p);

struct StepOptions {
  InnerSolverOptions inner;
  /// Explicit schemes only: update the y-block before the x-block.
  bool reverse_block_order = false;
};

struct StepResult {
  IterateState state;
  /// The multiplier the two block updates were taken against.
  Vector lambda_bar;
};

// One iteration of each scheme at parameters `ps` with step size `alpha`
// (already solved from the scheme's rule). The parameter advance is the
// caller's job.
StepResult step_f1_semiB(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts = {});
StepResult step_f1_semiA(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts = {});
StepResult step_f1_explicit(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                            const StepOptions& opts = {});
StepResult step_f2_semiB(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts = {});
StepResult step_f2_semiA(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts = {});
StepResult step_f2_explicit(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                            const StepOptions& opts = {});

StepResult step(Scheme scheme, const SeparableProblem& p, const IterateState& s, const ParamState& ps,
                double alpha, const StepOptions& opts = {});

/// Throws std::invalid_argument when the problem lacks an oracle the scheme
/// needs (whole-f prox for the first family, f1 gradient for the second, g
/// prox for both) or puts a strong convexity modulus where the scheme
/// cannot use it.
void validate_for_scheme(const SeparableProblem& p, Scheme scheme);

/// Step-size rule of a scheme for this problem; operator norms are the safe
/// (inflated) estimates.
StepSizeRule step_rule_for(const SeparableProblem& p, Scheme scheme);

}  // namespace apd
