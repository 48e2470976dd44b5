#include "apd/iterate.hpp"

#include "apd/prox.hpp"

#include <stdexcept>

namespace apd {

namespace {

const ProxOracle& nonsmooth_part(const SeparableProblem& p) {
  static const ZeroFunction zero;
  return p.f.rest ? *p.f.rest : static_cast<const ProxOracle&>(zero);
}

void require_f2_oracles(const SeparableProblem& p) {
  if (!p.f.smooth) throw std::invalid_argument("second-family scheme needs a smooth oracle for f1");
  if (!p.g.prox) throw std::invalid_argument("second-family scheme needs a prox oracle for g");
}

struct Common {
  double theta, alpha, ratio;
  double eta_tilde, eta_g;
  Vector u, v_tilde, y_tilde;
};

Common common(const IterateState& s, const ParamState& ps, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("step size must be positive");
  Common c;
  c.theta = ps.theta;
  c.alpha = alpha;
  c.ratio = alpha / ps.theta;
  c.eta_tilde = ps.gamma + ps.mu_f * alpha;
  c.eta_g = (alpha + 1.0) * ps.beta + ps.mu_g * alpha;
  c.u = (s.x + alpha * s.v) / (1.0 + alpha);
  c.v_tilde = (ps.gamma * s.v + ps.mu_f * alpha * c.u) / c.eta_tilde;
  c.y_tilde = s.y + (alpha * ps.beta / c.eta_g) * (s.w - s.y);
  return c;
}

Vector extrapolate(const Vector& next, const Vector& prev, double alpha) { return next + (next - prev) / alpha; }
Vector correct(const Vector& x, const Vector& v_next, double alpha) { return (x + alpha * v_next) / (1.0 + alpha); }

Vector prox_v(const SeparableProblem& p, const Common& c, const Vector& lambda_bar) {
  const double s = c.alpha / c.eta_tilde;
  const Vector d = p.f.smooth->gradient(c.u) + p.A->apply_adjoint(lambda_bar);
  return nonsmooth_part(p).prox(c.v_tilde - s * d, s);
}

Vector prox_y(const SeparableProblem& p, const Common& c, const Vector& lambda_bar) {
  const double tau = c.alpha * c.alpha / c.eta_g;
  return p.g.prox->prox(c.y_tilde - tau * p.B->apply_adjoint(lambda_bar), tau);
}

}  // namespace

StepResult step_f2_semiB(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts) {
  require_f2_oracles(p);
  const Common c = common(s, ps, alpha);

  const Vector d = p.f.smooth->gradient(c.u) + p.A->apply_adjoint(s.lambda);
  const Vector Bw_b = p.B->apply(s.w) - p.b;
  const AugmentedSubproblem sub{d, *p.A, Bw_b, c.ratio, c.eta_tilde / alpha, c.v_tilde};

  StepResult out;
  IterateState& n = out.state;
  n.u = c.u;
  n.v = solve_augmented_subproblem(nonsmooth_part(p), p.f.augmented, sub, opts.inner);
  n.x = correct(s.x, n.v, alpha);
  const Vector Av = p.A->apply(n.v);
  out.lambda_bar = s.lambda + c.ratio * (Av + Bw_b);
  n.y = prox_y(p, c, out.lambda_bar);
  n.w = extrapolate(n.y, s.y, alpha);
  n.lambda = s.lambda + c.ratio * (Av + p.B->apply(n.w) - p.b);
  return out;
}

StepResult step_f2_semiA(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                         const StepOptions& opts) {
  require_f2_oracles(p);
  const Common c = common(s, ps, alpha);
  const double sigma = 1.0 / (c.theta / (1.0 + alpha));

  const Vector Ax_b = p.A->apply(s.x) - p.b;
  const Vector lambda_hat =
      s.lambda - (Ax_b + p.B->apply(s.y)) / c.theta + c.ratio * p.A->apply(s.v - s.x);
  const Vector linear = p.B->apply_adjoint(lambda_hat);
  const AugmentedSubproblem sub{linear, *p.B, Ax_b, sigma, c.eta_g / (alpha * alpha), c.y_tilde};

  StepResult out;
  IterateState& n = out.state;
  n.u = c.u;
  n.y = solve_augmented_subproblem(*p.g.prox, p.g.augmented, sub, opts.inner);
  n.w = extrapolate(n.y, s.y, alpha);
  const Vector Bw = p.B->apply(n.w);
  out.lambda_bar = s.lambda + c.ratio * (p.A->apply(s.v) + Bw - p.b);
  n.v = prox_v(p, c, out.lambda_bar);
  n.x = correct(s.x, n.v, alpha);
  n.lambda = s.lambda + c.ratio * (p.A->apply(n.v) + Bw - p.b);
  return out;
}

StepResult step_f2_explicit(const SeparableProblem& p, const IterateState& s, const ParamState& ps, double alpha,
                            const StepOptions& opts) {
  require_f2_oracles(p);
  const Common c = common(s, ps, alpha);

  StepResult out;
  IterateState& n = out.state;
  n.u = c.u;
  out.lambda_bar = s.lambda + c.ratio * (p.A->apply(s.v) + p.B->apply(s.w) - p.b);
  if (opts.reverse_block_order) {
    n.y = prox_y(p, c, out.lambda_bar);
    n.v = prox_v(p, c, out.lambda_bar);
  } else {
    n.v = prox_v(p, c, out.lambda_bar);
    n.y = prox_y(p, c, out.lambda_bar);
  }
  n.x = correct(s.x, n.v, alpha);
  n.w = extrapolate(n.y, s.y, alpha);
  n.lambda = s.lambda + c.ratio * (p.A->apply(n.v) + p.B->apply(n.w) - p.b);
  return out;
}

StepResult step(Scheme scheme, const SeparableProblem& p, const IterateState& s, const ParamState& ps,
                double alpha, const StepOptions& opts) {
  switch (scheme) {
    case Scheme::F1SemiB: return step_f1_semiB(p, s, ps, alpha, opts);
    case Scheme::F1SemiA: return step_f1_semiA(p, s, ps, alpha, opts);
    case Scheme::F1Explicit: return step_f1_explicit(p, s, ps, alpha, opts);
    case Scheme::F2SemiB: return step_f2_semiB(p, s, ps, alpha, opts);
    case Scheme::F2SemiA: return step_f2_semiA(p, s, ps, alpha, opts);
    case Scheme::F2Explicit: return step_f2_explicit(p, s, ps, alpha, opts);
  }
  throw std::logic_error("step: unknown scheme");
}

void validate_for_scheme(const SeparableProblem& p, Scheme scheme) {
  p.validate();
  if (!p.g.prox) throw std::invalid_argument("validate_for_scheme: g needs a prox oracle");
  if (is_family2(scheme)) {
    if (!p.f.smooth) throw std::invalid_argument("validate_for_scheme: second-family schemes need f = f1 + f2 with a smooth f1");
    if (p.mu_f > p.f.smooth->strong_convexity() * (1.0 + 1e-9) + 1e-12) {
      throw std::invalid_argument("validate_for_scheme: mu_f must be carried by the smooth part f1");
    }
  } else if (!p.f.prox) {
    throw std::invalid_argument("validate_for_scheme: first-family schemes need a prox oracle for f");
  }
}

StepSizeRule step_rule_for(const SeparableProblem& p, Scheme scheme) {
  StepSizeRule r;
  r.scheme = scheme;
  r.norm_A = safe_operator_norm(*p.A);
  r.norm_B = safe_operator_norm(*p.B);
  r.lipschitz_f = p.f.smooth ? p.f.smooth->lipschitz() : 0.0;
  return r;
}

}  // namespace apd
