#pragma once

#include "apd/diagnostics.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace apd {

struct Budget {
  long max_iters = 1000;
  /// Stop once ||Ax+By-b|| <= target_feas.
  std::optional<double> target_feas;
  /// Stop once |F - F*| <= target_obj (needs reference inputs).
  std::optional<double> target_obj;
};

struct RunOptions {
  std::optional<Vector> x0, y0, v0, w0, lambda0;
  std::optional<double> gamma0, beta0;
  StepOptions step;
  /// Reference data; defaults to the problem's saddle point when it has one.
  std::optional<LyapunovInputs> inputs;
  std::optional<double> lipschitz_g;
  std::optional<double> sparsity_threshold;
  /// Wall-clock column. Off by default so traces are reproducible bytewise.
  bool record_time = false;
};

struct RunResult {
  IterationTrace trace;
  IterateState state;
  ParamState params;
  std::vector<double> alphas;
};

/// A step failed; carries the index of the failing iteration.
class StepError : public std::runtime_error {
 public:
  StepError(long iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

/// Loops solve_step_size -> step -> advance and records one row per
/// iterate (row k carries alpha_k once step k has been taken).
RunResult run(const SeparableProblem& p, Scheme scheme, const Budget& budget, const RunOptions& opts = {});

}  // namespace apd
