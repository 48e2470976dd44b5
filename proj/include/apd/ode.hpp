#pragma once

#include "apd/diagnostics.hpp"

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace apd {

/// Point of the continuous primal-dual flow together with its scaling
/// factors (theta, gamma, beta).
struct FlowState {
  double t = 0.0;
  Vector x, y, v, w, lambda;
  double theta = 1.0;
  double gamma = 1.0;
  double beta = 1.0;
};

/// Time derivative of every component of a FlowState (t excluded).
struct FlowDerivative {
  Vector x, y, v, w, lambda;
  double theta = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

class FlowBlowUp : public std::runtime_error {
 public:
  FlowBlowUp(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

/// Initial flow state: v = x0, w = y0, lambda = 0 unless given; theta = 1,
/// gamma0/beta0 default as for the discrete schemes.
FlowState flow_initial_state(const SeparableProblem& p, const Vector& x0, const Vector& y0,
                             std::optional<double> gamma0 = std::nullopt, std::optional<double> beta0 = std::nullopt);

///   x' = v - x,                   gamma v' = mu_f (x - v) - grad f(x) - A'lambda,
///   theta lambda' = Av + Bw - b,  beta w'  = mu_g (y - w) - grad g(y) - B'lambda,
///   y' = w - y,  theta' = -theta, gamma' = mu_f - gamma, beta' = mu_g - beta.
/// Both blocks must be smooth (gradient oracles without a nonsmooth part).
FlowDerivative flow_rhs(const SeparableProblem& p, const FlowState& s);

/// Classical fourth-order Runge-Kutta with fixed step h up to T. Returns
/// every `sample_every`-th state (plus the last). Throws FlowBlowUp when
/// any component norm exceeds 1e12.
std::vector<FlowState> integrate_flow(const SeparableProblem& p, const FlowState& initial, double T, double h,
                                      long sample_every = 1);

/// Closed-form scaling factors at time t.
FlowState exact_scaling(const FlowState& initial, double mu_f, double mu_g, double t);

double flow_lyapunov(const SeparableProblem& p, const FlowState& s, const LyapunovInputs& in);

/// CSV with columns t,E,feas,obj_gap,theta,gamma,beta.
void write_flow_csv(const SeparableProblem& p, const std::vector<FlowState>& traj, const LyapunovInputs& in,
                    std::ostream& out);

}  // namespace apd
