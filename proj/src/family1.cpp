#include "apd/iterate.hpp"

#include <stdexcept>

namespace apd {

namespace {

void require_f1_oracles(const SeparableProblem& p) {
  if (!p.f.prox) throw std::invalid_argument("first-family scheme needs a prox oracle for f");
  if (!p.g.prox) throw std::invalid_argument("first-family scheme needs a prox oracle for g");
}

// Quantities shared by every first-family step.
struct Common {
  double theta, alpha, ratio;  // ratio = alpha/theta
  double eta_f, eta_g;
  Vector x_tilde, y_tilde;
};

Common common(const IterateState& s, const ParamState& ps, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("step size must be positive");
  Common c;
  c.theta = ps.theta;
  c.alpha = alpha;
  c.ratio = alpha / ps.theta;
  c.eta_f = (alpha + 1.0) * ps.gamma + ps.mu_f * alpha;
  c.eta_g = (alpha + 1.0) * ps.beta + ps.mu_g * alpha;
  c.x_tilde = s.x + (alpha * ps.gamma / c.eta_f) * (s.v - s.x);
  c.y_tilde = s.y + (alpha * ps.beta / c.eta_g) * (s.w - s.y);
  return c;
}

Vector extrapolate(const Vector& next, const Vector& prev, double alpha) { return next + (next - prev) / alpha; }

Vector prox_x(const SeparableProblem& p, const Common& c, const Vector& lambda_bar) {
  const double s = c.alpha * c.alpha / c.eta_f;
  return p.f.prox->prox(c.x_tilde - s * p.A->apply_adjoint(lambda_bar), s);
}

Vector prox_y(const SeparableProblem& p, const Common& c, const Vector& lambda_bar) {
  const double tau = c.alpha * c.alpha / c.eta_g;
  return p.g.prox->prox(c.y_tilde - tau * p.B->apply_adjoint(lambda_bar), tau);
}

}  // namespace

IterateState initial_state(const SeparableProblem& p, const Vector& x0, const Vector& y0,
                           const std::optional<Vector>& v0, const std::optional<Vector>& w0,
                           const std::optional<Vector>& lambda0) {
  if (x0.size() != p.x_dim() || y0.size() != p.y_dim()) throw std::invalid_argument("initial_state: dimension mismatch");
  IterateState s;
  s.x = x0;
  s.y = y0;
  s.v = v0.value_or(x0);
  s.w = w0.value_or(y0);
  s.lambda = lambda0.value_or(Vector::Zero(p.constraint_dim()));
  s.u = s.x;
  if (s.v.size() != s.x.size() || s.w.size() != s.y.size() || s.lambda.size() != p.constraint_dim()) {
    throw std::invalid_argument("initial_state: dimension mismatch");
  }
  return s;
}

IterateState zero_state(const SeparableProblem& p) {
  return initial_state(p, Vector::Zero(p.x_dim()), Vector::Zero(p.y_dim()));
}

StepResult step_f1_semiB(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts) {
  require_f1_oracles(p);
  const Common c = common(s, ps, alpha);
  const double sigma = 1.0 / (c.theta / (1.0 + alpha));

  const Vector By_b = p.B->apply(s.y) - p.b;
  const Vector lambda_hat =
      s.lambda - (p.A->apply(s.x) + By_b) / c.theta + c.ratio * p.B->apply(s.w - s.y);
  const Vector linear = p.A->apply_adjoint(lambda_hat);
  const AugmentedSubproblem sub{linear, *p.A, By_b, sigma, c.eta_f / (alpha * alpha), c.x_tilde};

  StepResult out;
  IterateState& n = out.state;
  n.x = solve_augmented_subproblem(*p.f.prox, p.f.augmented, sub, opts.inner);
  n.v = extrapolate(n.x, s.x, alpha);
  const Vector Av = p.A->apply(n.v);
  out.lambda_bar = s.lambda + c.ratio * (Av + p.B->apply(s.w) - p.b);
  n.y = prox_y(p, c, out.lambda_bar);
  n.w = extrapolate(n.y, s.y, alpha);
  n.lambda = s.lambda + c.ratio * (Av + p.B->apply(n.w) - p.b);
  n.u = n.x;
  return out;
}

StepResult step_f1_semiA(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts) {
  require_f1_oracles(p);
  const Common c = common(s, ps, alpha);
  const double sigma = 1.0 / (c.theta / (1.0 + alpha));

  const Vector Ax_b = p.A->apply(s.x) - p.b;
  const Vector lambda_hat =
      s.lambda - (Ax_b + p.B->apply(s.y)) / c.theta + c.ratio * p.A->apply(s.v - s.x);
  const Vector linear = p.B->apply_adjoint(lambda_hat);
  const AugmentedSubproblem sub{linear, *p.B, Ax_b, sigma, c.eta_g / (alpha * alpha), c.y_tilde};

  StepResult out;
  IterateState& n = out.state;
  n.y = solve_augmented_subproblem(*p.g.prox, p.g.augmented, sub, opts.inner);
  n.w = extrapolate(n.y, s.y, alpha);
  const Vector Bw = p.B->apply(n.w);
  out.lambda_bar = s.lambda + c.ratio * (p.A->apply(s.v) + Bw - p.b);
  n.x = prox_x(p, c, out.lambda_bar);
  n.v = extrapolate(n.x, s.x, alpha);
  n.lambda = s.lambda + c.ratio * (p.A->apply(n.v) + Bw - p.b);
  n.u = n.x;
  return out;
}

StepResult step_f1_explicit(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                            const StepOptions& opts) {
  require_f1_oracles(p);
  const Common c = common(s, ps, alpha);

  StepResult out;
  IterateState& n = out.state;
  out.lambda_bar = s.lambda + c.ratio * (p.A->apply(s.v) + p.B->apply(s.w) - p.b);
  if (opts.reverse_block_order) {
    n.y = prox_y(p, c, out.lambda_bar);
    n.x = prox_x(p, c, out.lambda_bar);
  } else {
    n.x = prox_x(p, c, out.lambda_bar);
    n.y = prox_y(p, c, out.lambda_bar);
  }
  n.v = extrapolate(n.x, s.x, alpha);
  n.w = extrapolate(n.y, s.y, alpha);
  n.lambda = s.lambda + c.ratio * (p.A->apply(n.v) + p.B->apply(n.w) - p.b);
  n.u = n.x;
  return out;
}

}  // namespace apd
