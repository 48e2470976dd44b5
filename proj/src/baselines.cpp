#include "apd/baselines.hpp"

#include <chrono>
#include <cmath>

namespace apd {

namespace {

void require_prox(const SeparableProblem& p, const char* who) {
  if (!p.f.prox || !p.g.prox) throw std::invalid_argument(std::string(who) + ": needs prox oracles for f and g");
}

template <class Step>
RunResult run_baseline(const SeparableProblem& p, const Budget& budget, const RunOptions& opts, const char* name,
                       Step&& one_step) {
  if (budget.max_iters < 0) throw std::invalid_argument("baseline run: max_iters must be nonnegative");
  const auto clock_start = std::chrono::steady_clock::now();
  std::optional<LyapunovInputs> inputs = opts.inputs ? opts.inputs : lyapunov_inputs(p, opts.lipschitz_g);

  RunResult res;
  res.trace.problem = p.name;
  res.trace.method = name;
  res.state = initial_state(p, opts.x0.value_or(Vector::Zero(p.x_dim())), opts.y0.value_or(Vector::Zero(p.y_dim())),
                            std::nullopt, std::nullopt, opts.lambda0);
  auto record = [&](long k) {
    TraceRow row = make_row(p, k, res.state, std::nullopt, inputs, opts.sparsity_threshold);
    if (opts.record_time) {
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    }
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
      res.state = one_step(res.state);
    } catch (const std::exception& e) {
      throw StepError(k, e.what());
    }
    record(k + 1);
  }
  return res;
}

}  // namespace

CpSteps resolve_cp_steps(const SeparableProblem& p, const CpConfig& cfg) {
  if (!p.is_composite()) throw std::invalid_argument("CP: problem must have B = -I and b = 0");
  const double a = safe_operator_norm(*p.A);
  const double def = a > 0.0 ? 1.0 / a : 1.0;
  CpSteps s{cfg.tau.value_or(def), cfg.sigma.value_or(def)};
  if (!(s.tau > 0.0) || !(s.sigma > 0.0)) throw std::invalid_argument("CP: steps must be positive");
  if (s.tau * s.sigma * a * a > 1.0 + 1e-12) throw std::invalid_argument("CP: steps violate tau*sigma*||A||^2 <= 1");
  return s;
}

IterateState step_ladmm(const SeparableProblem& p, const IterateState& s, const LadmmConfig& cfg) {
  require_prox(p, "LADMM");
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("LADMM: penalty must be positive");
  const double sig = cfg.sigma;
  const double na = safe_operator_norm(*p.A), nb = safe_operator_norm(*p.B);
  IterateState n = s;

  const Vector By = p.B->apply(s.y);
  if (na > 0.0) {
    const double t = 1.0 / (sig * na * na);
    const Vector grad = p.A->apply_adjoint(s.lambda + sig * (p.A->apply(s.x) + By - p.b));
    n.x = p.f.prox->prox(s.x - t * grad, t);
  } else {
    // A = 0: the x-block decouples and its exact minimizer is a prox at any weight.
    n.x = p.f.prox->prox(s.x, 1.0 / sig);
  }
  const Vector Ax = p.A->apply(n.x);
  if (nb > 0.0) {
    const double t = 1.0 / (sig * nb * nb);
    const Vector grad = p.B->apply_adjoint(s.lambda + sig * (Ax + By - p.b));
    n.y = p.g.prox->prox(s.y - t * grad, t);
  } else {
    n.y = p.g.prox->prox(s.y, 1.0 / sig);
  }
  n.lambda = s.lambda + sig * (Ax + p.B->apply(n.y) - p.b);
  n.v = n.x;
  n.w = n.y;
  n.u = n.x;
  return n;
}

IterateState step_cp(const SeparableProblem& p, const IterateState& s, const CpSteps& st) {
  require_prox(p, "CP");
  if (!p.is_composite()) throw std::invalid_argument("CP: problem must have B = -I and b = 0");
  IterateState n = s;
  n.x = p.f.prox->prox(s.x - st.tau * p.A->apply_adjoint(s.lambda), st.tau);
  const Vector Axbar = p.A->apply(2.0 * n.x - s.x);
  // Dual prox through Moreau: y is the primal g-point, lambda the multiplier.
  n.y = p.g.prox->prox(s.lambda / st.sigma + Axbar, 1.0 / st.sigma);
  n.lambda = s.lambda + st.sigma * (Axbar - n.y);
  n.v = n.x;
  n.w = n.y;
  n.u = n.x;
  return n;
}

void ErgodicAverage::add(const IterateState& s) {
  if (count_ == 0) {
    x_ = s.x;
    y_ = s.y;
    lambda_ = s.lambda;
  } else {
    x_ += s.x;
    y_ += s.y;
    lambda_ += s.lambda;
  }
  ++count_;
}

IterateState ErgodicAverage::mean() const {
  if (count_ == 0) throw std::logic_error("ErgodicAverage: no samples");
  IterateState s;
  const double c = static_cast<double>(count_);
  s.x = x_ / c;
  s.y = y_ / c;
  s.lambda = lambda_ / c;
  s.v = s.u = s.x;
  s.w = s.y;
  return s;
}

RunResult run_ladmm(const SeparableProblem& p, const Budget& budget, const LadmmConfig& cfg, const RunOptions& opts) {
  p.validate();
  require_prox(p, "LADMM");
  return run_baseline(p, budget, opts, "ladmm", [&](const IterateState& s) { return step_ladmm(p, s, cfg); });
}

RunResult run_cp(const SeparableProblem& p, const Budget& budget, const CpConfig& cfg, const RunOptions& opts,
                 ErgodicAverage* ergodic) {
  p.validate();
  require_prox(p, "CP");
  const CpSteps steps = resolve_cp_steps(p, cfg);
  return run_baseline(p, budget, opts, "cp", [&](const IterateState& s) {
    IterateState n = step_cp(p, s, steps);
    if (ergodic) ergodic->add(n);
    return n;
  });
}

OptimumEstimate approximate_optimum(const SeparableProblem& p, const OptimumOptions& opts) {
  if (opts.iters < 0) throw std::invalid_argument("approximate_optimum: iters must be nonnegative");
  p.validate();
  require_prox(p, "approximate_optimum");
  const bool composite = p.is_composite();
  IterateState s = initial_state(p, opts.x0.value_or(Vector::Zero(p.x_dim())), opts.y0.value_or(Vector::Zero(p.y_dim())));

  auto value = [&](const IterateState& st) { return composite ? composite_objective(p, st.x) : objective(p, st.x, st.y); };

  OptimumEstimate est;
  est.x = s.x;
  est.y = s.y;
  est.lambda = s.lambda;
  double best = value(s);
  est.fstar = objective(p, s.x, s.y);
  est.pstar = best;
  est.iters = opts.iters;
  if (opts.iters == 0) return est;

  const long half = opts.iters / 2;
  double at_half = best;
  for (long k = 1; k <= opts.iters; ++k) {
    s = step_ladmm(p, s, opts.ladmm);
    const double v = value(s);
    if (!composite || v < best) {
      best = v;
      est.x = s.x;
      est.y = composite ? p.A->apply(s.x) : s.y;
    }
    if (k == half) at_half = best;
  }
  est.lambda = s.lambda;
  est.pstar = best;
  est.fstar = composite ? best : objective(p, est.x, est.y);
  est.uncertainty = half > 0 ? std::abs(at_half - best) : kInfinity;
  return est;
}

}  // namespace apd
