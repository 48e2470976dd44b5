#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apd/bench.hpp"
#include "apd/ode.hpp"
#include "apd/prox.hpp"
#include "apd/quadratic.hpp"

#include <sstream>

using namespace apd;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

SeparableProblem small_quadratic(double mu_f, double mu_g, std::uint64_t seed) {
  RandomQuadraticOptions o;
  o.m = o.n = o.r = 4;
  o.mu_f = mu_f;
  o.mu_g = mu_g;
  o.coupling = 0.05;
  o.curvature = 0.02;
  o.seed = seed;
  return generate_random_quadratic(o);
}

}  // namespace

TEST_CASE("rhs vanishes in X at the saddle; theta' = -theta") {
  const SeparableProblem p = small_quadratic(0.1, 0.2, 1);
  const auto& s = *p.saddle;
  FlowState st = flow_initial_state(p, s.x, s.y);
  st.lambda = s.lambda;
  st.theta = 0.37;
  const FlowDerivative d = flow_rhs(p, st);
  CHECK(d.x.norm() <= 1e-12);
  CHECK(d.y.norm() <= 1e-12);
  CHECK(d.v.norm() <= 1e-10);
  CHECK(d.w.norm() <= 1e-10);
  CHECK(d.lambda.norm() <= 1e-10);
  CHECK(d.theta == -0.37);
  CHECK(d.gamma == doctest::Approx(0.1 - st.gamma));
  CHECK(d.beta == doctest::Approx(0.2 - st.beta));
}

TEST_CASE("rhs on a 1-D problem matches the hand derivation") {
  // f = 2x^2/2 + x, g = 3y^2/2, A = [0.5], B = [-1], b = [0.2], mu_f = 1, mu_g = 2.
  SeparableProblem p;
  auto f = std::make_shared<QuadraticFunction>(Matrix::Constant(1, 1, 2.0), scalar(1.0));
  auto g = std::make_shared<QuadraticFunction>(Matrix::Constant(1, 1, 3.0), scalar(0.0));
  p.f.prox = f;
  p.f.smooth = f;
  p.g.prox = g;
  p.g.smooth = g;
  p.A = make_scaled_identity(1, 0.5);
  p.B = make_negated_identity(1);
  p.b = scalar(0.2);
  p.mu_f = 1.0;
  p.mu_g = 2.0;
  FlowState s;
  s.x = scalar(0.3);
  s.y = scalar(-0.4);
  s.v = scalar(1.1);
  s.w = scalar(0.6);
  s.lambda = scalar(-0.7);
  s.theta = 0.5;
  s.gamma = 1.5;
  s.beta = 2.5;
  const FlowDerivative d = flow_rhs(p, s);
  CHECK(d.x[0] == doctest::Approx(1.1 - 0.3));
  CHECK(d.y[0] == doctest::Approx(0.6 + 0.4));
  CHECK(d.v[0] == doctest::Approx((1.0 * (0.3 - 1.1) - (2 * 0.3 + 1) - 0.5 * -0.7) / 1.5));
  CHECK(d.w[0] == doctest::Approx((2.0 * (-0.4 - 0.6) - 3 * -0.4 - (-1) * -0.7) / 2.5));
  CHECK(d.lambda[0] == doctest::Approx((0.5 * 1.1 - 0.6 - 0.2) / 0.5));
  CHECK(d.gamma == doctest::Approx(1.0 - 1.5));
  CHECK(d.beta == doctest::Approx(2.0 - 2.5));
}

TEST_CASE("parameter subsystem follows its closed form") {
  const SeparableProblem p = small_quadratic(0.3, 0.0, 2);
  const FlowState init = flow_initial_state(p, Vector::Zero(4), Vector::Zero(4), 1.0, 2.0);
  const auto traj = integrate_flow(p, init, 1.0, 1e-3);
  const FlowState& end = traj.back();
  CHECK(end.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(end.theta - std::exp(-1.0)) <= 1e-10);
  const FlowState ex = exact_scaling(init, 0.3, 0.0, 1.0);
  CHECK(std::abs(end.gamma - ex.gamma) <= 1e-10);
  CHECK(std::abs(end.beta - ex.beta) <= 1e-10);

  // gamma0 = mu_f is a fixed point.
  const FlowState fixed = flow_initial_state(p, Vector::Zero(4), Vector::Zero(4));
  for (const FlowState& s : integrate_flow(p, fixed, 2.0, 1e-2, 20)) CHECK(s.gamma == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("continuous Lyapunov function") {
  const SeparableProblem p = small_quadratic(0.05, 0.05, 3);
  const auto in = *lyapunov_inputs(p);
  FlowState eq = flow_initial_state(p, in.saddle.x, in.saddle.y);
  eq.lambda = in.saddle.lambda;
  CHECK(std::abs(flow_lyapunov(p, eq, in)) <= 1e-12);

  const FlowState s0 = flow_initial_state(p, Vector::Constant(4, 0.2), Vector::Constant(4, -0.1));
  const double ref = lagrangian_gap(p, s0.x, s0.y, in) + s0.gamma / 2 * (s0.v - in.saddle.x).squaredNorm() +
                     s0.beta / 2 * (s0.w - in.saddle.y).squaredNorm() +
                     s0.theta / 2 * (s0.lambda - in.saddle.lambda).squaredNorm();
  CHECK(flow_lyapunov(p, s0, in) == doctest::Approx(ref).epsilon(1e-12));

  const auto traj = integrate_flow(p, s0, 10.0, 1e-3, 50);
  const double e0 = flow_lyapunov(p, traj.front(), in);
  for (const FlowState& s : traj) CHECK(std::exp(s.t) * flow_lyapunov(p, s, in) <= e0 * (1 + 1e-5));
}

TEST_CASE("flow needs smooth blocks and valid arguments") {
  SeparableProblem p = small_quadratic(0.0, 0.0, 4);
  const FlowState s0 = flow_initial_state(p, Vector::Zero(4), Vector::Zero(4));
  CHECK_THROWS_AS(integrate_flow(p, s0, 1.0, 0.0), std::invalid_argument);
  p.g.smooth = nullptr;
  CHECK_THROWS_AS(flow_rhs(p, s0), std::invalid_argument);
}

TEST_CASE("stiff flow reports blow-up with the time") {
  RandomQuadraticOptions o;
  o.m = o.n = o.r = 4;
  o.coupling = 5.0;
  o.curvature = 5.0;
  const SeparableProblem p = generate_random_quadratic(o);
  const FlowState s0 = flow_initial_state(p, Vector::Ones(4), Vector::Ones(4));
  try {
    integrate_flow(p, s0, 30.0, 0.05);
    FAIL("expected FlowBlowUp");
  } catch (const FlowBlowUp& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 30.0);
  }
}

TEST_CASE("flow CSV") {
  const SeparableProblem p = small_quadratic(0.1, 0.1, 5);
  const auto in = *lyapunov_inputs(p);
  const auto traj = integrate_flow(p, flow_initial_state(p, Vector::Zero(4), Vector::Zero(4)), 0.1, 0.05);
  std::ostringstream out;
  write_flow_csv(p, traj, in, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,E,feas,obj_gap,theta,gamma,beta");
  int count = 0;
  for (std::string l; std::getline(lines, l);) ++count;
  CHECK(count == 3);
}
