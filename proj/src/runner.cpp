#include "apd/runner.hpp"

#include <chrono>
#include <cmath>

namespace apd {

RunResult run(const SeparableProblem& p, Scheme scheme, const Budget& budget, const RunOptions& opts) {
  if (budget.max_iters < 0) throw std::invalid_argument("run: max_iters must be nonnegative");
  validate_for_scheme(p, scheme);

  const auto clock_start = std::chrono::steady_clock::now();
  auto elapsed = [&]() -> std::optional<double> {
    if (!opts.record_time) return std::nullopt;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  };

  std::optional<LyapunovInputs> inputs = opts.inputs ? opts.inputs : lyapunov_inputs(p, opts.lipschitz_g);
  if (inputs && opts.lipschitz_g && !inputs->lipschitz_g) inputs->lipschitz_g = opts.lipschitz_g;

  RunResult res;
  res.trace.problem = p.name;
  res.trace.method = std::string(scheme_name(scheme));
  res.params = initial_params(p.mu_f, p.mu_g, opts.gamma0, opts.beta0);
  res.state = initial_state(p, opts.x0.value_or(Vector::Zero(p.x_dim())), opts.y0.value_or(Vector::Zero(p.y_dim())),
                            opts.v0, opts.w0, opts.lambda0);
  if (inputs) {
    res.trace.e0 = lyapunov(p, res.state, res.params, *inputs);
    res.trace.r0 = r0(p, res.state, res.params, *inputs);
  }

  const StepSizeRule rule = step_rule_for(p, scheme);
  auto record = [&](long k) {
    TraceRow row = make_row(p, k, res.state, res.params, inputs, opts.sparsity_threshold);
    row.seconds = elapsed();
    res.trace.rows.push_back(row);
  };
  auto done = [&]() {
    const TraceRow& last = res.trace.rows.back();
    if (budget.target_feas && last.feas <= *budget.target_feas) return true;
    if (budget.target_obj && inputs && std::abs(last.obj - inputs->fstar) <= *budget.target_obj) return true;
    return false;
  };

  record(0);
  for (long k = 0; k < budget.max_iters && !done(); ++k) {
    try {
      const double alpha = solve_step_size(res.params, rule);
      StepResult sr = step(scheme, p, res.state, res.params, alpha, opts.step);
      res.trace.rows.back().alpha = alpha;
      res.alphas.push_back(alpha);
      res.state = std::move(sr.state);
      res.params = advance(res.params, alpha);
    } catch (const StepError&) {
      throw;
    } catch (const std::exception& e) {
      throw StepError(k, e.what());
    }
    record(k + 1);
  }
  return res;
}

}  // namespace apd
