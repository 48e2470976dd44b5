#pragma once

#include "apd/runner.hpp"

namespace apd {

/// Linearized ADMM with penalty sigma; both blocks take a single proximal
/// step on the linearized augmented term.
struct LadmmConfig {
  double sigma = 1.0;
};

/// Primal-dual hybrid gradient for min f(x) + g(Ax). Steps default to
/// tau = sigma = 1/||A||.
struct CpConfig {
  std::optional<double> tau;
  std::optional<double> sigma;
};

/// Steps actually used by CP; throws std::invalid_argument unless
/// tau * sigma * ||A||^2 <= 1 (with ||A|| the safe estimate).
struct CpSteps {
  double tau;
  double sigma;
};
CpSteps resolve_cp_steps(const SeparableProblem& p, const CpConfig& cfg);

IterateState step_ladmm(const SeparableProblem& p, const IterateState& s, const LadmmConfig& cfg);
IterateState step_cp(const SeparableProblem& p, const IterateState& s, const CpSteps& steps);

/// Uniform running average of (x, y, lambda).
class ErgodicAverage {
 public:
  void add(const IterateState& s);
  long count() const { return count_; }
  /// Throws std::logic_error when empty.
  IterateState mean() const;

 private:
  long count_ = 0;
  Vector x_, y_, lambda_;
};

RunResult run_ladmm(const SeparableProblem& p, const Budget& budget, const LadmmConfig& cfg = {},
                    const RunOptions& opts = {});
/// Also fills `ergodic` (when given) with the average of iterates 1..K.
RunResult run_cp(const SeparableProblem& p, const Budget& budget, const CpConfig& cfg = {}, const RunOptions& opts = {},
                 ErgodicAverage* ergodic = nullptr);

struct OptimumEstimate {
  double fstar = 0.0;
  /// Composite objective reference; equals fstar for non-composite problems.
  double pstar = 0.0;
  Vector x;
  Vector y;
  /// Multiplier of the last reference iterate.
  Vector lambda;
  /// |value at the half-way checkpoint - value at the end|; +inf for zero iterations.
  double uncertainty = kInfinity;
  long iters = 0;
};

struct OptimumOptions {
  long iters = 10000;
  LadmmConfig ladmm;
  std::optional<Vector> x0, y0;
};

/// Reference optimum from a long LADMM run. For composite problems the
/// best P along the trajectory is kept; otherwise the last iterate.
OptimumEstimate approximate_optimum(const SeparableProblem& p, const OptimumOptions& opts = {});

}  // namespace apd
