#include "apd/ode.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace apd {

namespace {

void require_smooth(const SeparableProblem& p) {
  if (!p.f.is_smooth() || !p.g.is_smooth()) {
    throw std::invalid_argument("flow: both blocks need gradient oracles with no nonsmooth part");
  }
}

// s + h * d, with t advanced by h.
FlowState shifted(const FlowState& s, const FlowDerivative& d, double h) {
  FlowState o;
  o.t = s.t + h;
  o.x = s.x + h * d.x;
  o.y = s.y + h * d.y;
  o.v = s.v + h * d.v;
  o.w = s.w + h * d.w;
  o.lambda = s.lambda + h * d.lambda;
  o.theta = s.theta + h * d.theta;
  o.gamma = s.gamma + h * d.gamma;
  o.beta = s.beta + h * d.beta;
  return o;
}

double max_norm(const FlowState& s) {
  double m = std::max({s.x.norm(), s.y.norm(), s.v.norm(), s.w.norm(), s.lambda.norm()});
  return std::max({m, std::abs(s.theta), std::abs(s.gamma), std::abs(s.beta)});
}

}  // namespace

FlowState flow_initial_state(const SeparableProblem& p, const Vector& x0, const Vector& y0,
                             std::optional<double> gamma0, std::optional<double> beta0) {
  if (x0.size() != p.x_dim() || y0.size() != p.y_dim()) throw std::invalid_argument("flow_initial_state: dimension mismatch");
  const ParamState ps = initial_params(p.mu_f, p.mu_g, gamma0, beta0);
  FlowState s;
  s.x = s.v = x0;
  s.y = s.w = y0;
  s.lambda = Vector::Zero(p.constraint_dim());
  s.theta = ps.theta;
  s.gamma = ps.gamma;
  s.beta = ps.beta;
  return s;
}

FlowDerivative flow_rhs(const SeparableProblem& p, const FlowState& s) {
  require_smooth(p);
  if (!(s.theta > 0.0) || !(s.gamma > 0.0) || !(s.beta > 0.0)) {
    throw std::invalid_argument("flow_rhs: theta, gamma and beta must be positive");
  }
  FlowDerivative d;
  d.x = s.v - s.x;
  d.y = s.w - s.y;
  d.v = (p.mu_f * (s.x - s.v) - p.f.smooth->gradient(s.x) - p.A->apply_adjoint(s.lambda)) / s.gamma;
  d.w = (p.mu_g * (s.y - s.w) - p.g.smooth->gradient(s.y) - p.B->apply_adjoint(s.lambda)) / s.beta;
  d.lambda = (p.A->apply(s.v) + p.B->apply(s.w) - p.b) / s.theta;
  d.theta = -s.theta;
  d.gamma = p.mu_f - s.gamma;
  d.beta = p.mu_g - s.beta;
  return d;
}

std::vector<FlowState> integrate_flow(const SeparableProblem& p, const FlowState& initial, double T, double h,
                                      long sample_every) {
  if (!(h > 0.0) || T < 0.0 || sample_every < 1) throw std::invalid_argument("integrate_flow: need h > 0, T >= 0");
  require_smooth(p);
  const long steps = static_cast<long>(std::llround(T / h));
  std::vector<FlowState> out{initial};
  FlowState s = initial;
  for (long i = 1; i <= steps; ++i) {
    const FlowDerivative k1 = flow_rhs(p, s);
    const FlowDerivative k2 = flow_rhs(p, shifted(s, k1, 0.5 * h));
    const FlowDerivative k3 = flow_rhs(p, shifted(s, k2, 0.5 * h));
    const FlowDerivative k4 = flow_rhs(p, shifted(s, k3, h));
    FlowDerivative avg;
    avg.x = (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x) / 6.0;
    avg.y = (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y) / 6.0;
    avg.v = (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v) / 6.0;
    avg.w = (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w) / 6.0;
    avg.lambda = (k1.lambda + 2.0 * k2.lambda + 2.0 * k3.lambda + k4.lambda) / 6.0;
    avg.theta = (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta) / 6.0;
    avg.gamma = (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma) / 6.0;
    avg.beta = (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta) / 6.0;
    s = shifted(s, avg, h);
    // Pin t to the grid so long runs do not drift.
    s.t = initial.t + static_cast<double>(i) * h;
    const double m = max_norm(s);
    if (!(m <= 1e12)) throw FlowBlowUp(s.t, "integrate_flow: state norm exceeded 1e12 at t = " + std::to_string(s.t));
    if (i % sample_every == 0 || i == steps) out.push_back(s);
  }
  return out;
}

FlowState exact_scaling(const FlowState& initial, double mu_f, double mu_g, double t) {
  FlowState s = initial;
  const double e = std::exp(-(t - initial.t));
  s.t = t;
  s.theta = initial.theta * e;
  s.gamma = initial.gamma * e + mu_f * (1.0 - e);
  s.beta = initial.beta * e + mu_g * (1.0 - e);
  return s;
}

double flow_lyapunov(const SeparableProblem& p, const FlowState& s, const LyapunovInputs& in) {
  const double gap = lagrangian_gap(p, s.x, s.y, in);
  return gap + 0.5 * s.gamma * (s.v - in.saddle.x).squaredNorm() + 0.5 * s.beta * (s.w - in.saddle.y).squaredNorm() +
         0.5 * s.theta * (s.lambda - in.saddle.lambda).squaredNorm();
}

void write_flow_csv(const SeparableProblem& p, const std::vector<FlowState>& traj, const LyapunovInputs& in,
                    std::ostream& out) {
  out << "t,E,feas,obj_gap,theta,gamma,beta\n";
  for (const FlowState& s : traj) {
    out << format_double(s.t) << ',' << format_double(flow_lyapunov(p, s, in)) << ','
        << format_double(feasibility_residual(p, s.x, s.y)) << ','
        << format_double(std::abs(objective(p, s.x, s.y) - in.fstar)) << ',' << format_double(s.theta) << ','
        << format_double(s.gamma) << ',' << format_double(s.beta) << '\n';
  }
}

}  // namespace apd
