#include "apd/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace apd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// min{ a/(sqrt(c0) k), a^2/(mu k^2) }, the sublinear/strongly convex pair.
double norm_term(double a, double c0, double mu, double k) {
  const double lin = a / (std::sqrt(c0) * k);
  const double quad = mu > 0.0 ? a * a / (mu * k * k) : kInf;
  return std::min(lin, quad);
}

// min{ Q/(Q + sqrt(c0) k), 4Q^2/(2Q + sqrt(mu) k)^2 } with Q = a + sqrt(c0).
double exact_term(double a, double c0, double mu, double k) {
  const double Q = a + std::sqrt(c0);
  const double first = Q / (Q + std::sqrt(c0) * k);
  const double d = 2.0 * Q + std::sqrt(mu) * k;
  return std::min(first, 4.0 * Q * Q / (d * d));
}

double exp_term(double mu, double L, double k) {
  const double ratio = L > 0.0 ? mu / L : 0.0;
  return std::exp(-0.25 * k * std::sqrt(ratio));
}

double checked_sqrt(double radicand, const char* what) {
  if (!(radicand > 0.0) || !std::isfinite(radicand)) {
    throw std::domain_error(std::string("solve_step_size: ") + what);
  }
  return std::sqrt(radicand);
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::F1SemiB: return "f1-semib";
    case Scheme::F1SemiA: return "f1-semia";
    case Scheme::F1Explicit: return "f1-explicit";
    case Scheme::F2SemiB: return "f2-semib";
    case Scheme::F2SemiA: return "f2-semia";
    case Scheme::F2Explicit: return "f2-explicit";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

bool is_family2(Scheme s) {
  return s == Scheme::F2SemiB || s == Scheme::F2SemiA || s == Scheme::F2Explicit;
}

ParamState initial_params(double mu_f, double mu_g, std::optional<double> gamma0, std::optional<double> beta0) {
  if (mu_f < 0.0 || mu_g < 0.0) throw std::invalid_argument("initial_params: moduli must be nonnegative");
  ParamState ps;
  ps.mu_f = mu_f;
  ps.mu_g = mu_g;
  ps.gamma0 = gamma0.value_or(mu_f > 0.0 ? mu_f : 1.0);
  ps.beta0 = beta0.value_or(mu_g > 0.0 ? mu_g : 1.0);
  if (!(ps.gamma0 > 0.0) || !(ps.beta0 > 0.0)) throw std::invalid_argument("initial_params: gamma0 and beta0 must be positive");
  ps.theta = 1.0;
  ps.gamma = ps.gamma0;
  ps.beta = ps.beta0;
  ps.k = 0;
  return ps;
}

double solve_step_size(const ParamState& ps, const StepSizeRule& r) {
  const double a2 = r.norm_A * r.norm_A;
  const double b2 = r.norm_B * r.norm_B;
  const double th = ps.theta, ga = ps.gamma, be = ps.beta, L = r.lipschitz_f;
  switch (r.scheme) {
    case Scheme::F1SemiB:
      if (!(r.norm_B > 0.0)) throw std::domain_error("solve_step_size: ||B|| = 0, use a scheme without the B-coupled condition");
      return checked_sqrt(th * be / b2, "nonpositive radicand");
    case Scheme::F1SemiA:
      if (!(r.norm_A > 0.0)) throw std::domain_error("solve_step_size: ||A|| = 0, use a scheme without the A-coupled condition");
      return checked_sqrt(ga * th / a2, "nonpositive radicand");
    case Scheme::F1Explicit: {
      const double lhs = 2.0 * (be * a2 + ga * b2);
      if (!(lhs > 0.0)) throw std::domain_error("solve_step_size: ||A|| and ||B|| both vanish");
      return checked_sqrt(ga * be * th / lhs, "nonpositive radicand");
    }
    case Scheme::F2SemiB: {
      const double lhs = L * be * th + ga * b2;
      if (!(lhs > 0.0)) throw std::domain_error("solve_step_size: L_f and ||B|| both vanish");
      return checked_sqrt(ga * be * th / lhs, "nonpositive radicand");
    }
    case Scheme::F2SemiA: {
      const double lhs = L * th + a2;
      if (!(lhs > 0.0)) throw std::domain_error("solve_step_size: L_f and ||A|| both vanish");
      return checked_sqrt(ga * th / lhs, "nonpositive radicand");
    }
    case Scheme::F2Explicit: {
      const double lhs = L * be * th + 2.0 * be * a2 + 2.0 * ga * b2;
      if (!(lhs > 0.0)) throw std::domain_error("solve_step_size: L_f, ||A|| and ||B|| all vanish");
      return checked_sqrt(ga * be * th / lhs, "nonpositive radicand");
    }
  }
  throw std::logic_error("solve_step_size: unknown scheme");
}

ParamState advance(const ParamState& ps, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("advance: step size must be positive");
  ParamState next = ps;
  const double d = 1.0 + alpha;
  next.theta = ps.theta / d;
  next.gamma = (ps.gamma + ps.mu_f * alpha) / d;
  next.beta = (ps.beta + ps.mu_g * alpha) / d;
  next.k = ps.k + 1;
  return next;
}

ThetaBound theoretical_theta_bound(Scheme s, long k, const BoundConstants& c) {
  ThetaBound out;
  // Every estimate assumes gamma0 = mu_f when mu_f > 0 and beta0 = mu_g when mu_g > 0.
  out.applicable = (c.mu_f == 0.0 || c.gamma0 == c.mu_f) && (c.mu_g == 0.0 || c.beta0 == c.mu_g);
  const double a2 = c.norm_A * c.norm_A, b2 = c.norm_B * c.norm_B;
  const double g0 = c.gamma0, b0 = c.beta0, L = c.lipschitz_f;
  switch (s) {
    case Scheme::F1SemiB:
    case Scheme::F1SemiA:
      out.exact = true;
      break;
    case Scheme::F1Explicit:
      out.exact = false;
      out.applicable = out.applicable && g0 * b0 <= 2.0 * b0 * a2 + 2.0 * g0 * b2;
      break;
    case Scheme::F2SemiB:
      out.exact = false;
      out.applicable = out.applicable && g0 * b0 <= L * b0 + g0 * b2;
      break;
    case Scheme::F2SemiA:
      out.exact = false;
      out.applicable = out.applicable && g0 <= L + a2;
      break;
    case Scheme::F2Explicit:
      out.exact = false;
      out.applicable = out.applicable && g0 * b0 <= L * b0 + 2.0 * b0 * a2 + 2.0 * g0 * b2;
      break;
  }
  if (k <= 0) {
    out.value = 1.0;
    return out;
  }
  const double kk = static_cast<double>(k);
  const double semi_a_bracket = std::min(c.norm_A / (std::sqrt(g0) * kk) + L / (g0 * kk * kk),
                                         (c.mu_f > 0.0 ? a2 / (c.mu_f * kk * kk) : kInf) + exp_term(c.mu_f, L, kk));
  switch (s) {
    case Scheme::F1SemiB: out.value = exact_term(c.norm_B, b0, c.mu_g, kk); break;
    case Scheme::F1SemiA: out.value = exact_term(c.norm_A, g0, c.mu_f, kk); break;
    case Scheme::F1Explicit:
      out.value = norm_term(c.norm_A, g0, c.mu_f, kk) + norm_term(c.norm_B, b0, c.mu_g, kk);
      break;
    case Scheme::F2SemiB:
      out.value = norm_term(c.norm_B, b0, c.mu_g, kk) + std::min(L / (g0 * kk * kk), exp_term(c.mu_f, L, kk));
      break;
    case Scheme::F2SemiA: out.value = semi_a_bracket; break;
    case Scheme::F2Explicit: out.value = norm_term(c.norm_B, b0, c.mu_g, kk) + semi_a_bracket; break;
  }
  return out;
}

double decay_bound(DecayCase c, double sigma, double tau, double nu, double P, double Q, double R, long k) {
  if (!(sigma > 0.0) || !(tau > 0.0) || tau > 1.0) throw std::invalid_argument("decay_bound: need sigma > 0 and tau in (0, 1]");
  if (k <= 0) return 1.0;
  const double st = sigma * tau * static_cast<double>(k);
  switch (c) {
    case DecayCase::Power:
      if (!(nu > 0.0)) throw std::invalid_argument("decay_bound: nu must be positive");
      return std::pow(1.0 + st * nu, -1.0 / nu);
    case DecayCase::Mixed:
      if (nu < 0.5 || !(Q > 0.0) || R < 0.0) throw std::invalid_argument("decay_bound: need nu >= 1/2, Q > 0, R >= 0");
      if (nu == 0.5) return std::exp(-st / (2.0 * std::sqrt(Q))) + std::pow(R / st, 2.0);
      return std::pow(std::sqrt(Q) / st, 2.0 / (2.0 * nu - 1.0)) + std::pow(R / st, 1.0 / nu);
    case DecayCase::Exponential:
      if (!(P > 0.0) || Q < 0.0 || R < 0.0) throw std::invalid_argument("decay_bound: need P > 0, Q >= 0, R >= 0");
      return std::exp(-st / (2.0 * std::sqrt(P))) + 36.0 * Q / (st * st) + 6.0 * R / st;
  }
  throw std::logic_error("decay_bound: unknown case");
}

double theta_from_alphas(const std::vector<double>& alphas, std::size_t k) {
  if (k > alphas.size()) throw std::out_of_range("theta_from_alphas: k exceeds the log");
  double theta = 1.0;
  for (std::size_t i = 0; i < k; ++i) theta /= (1.0 + alphas[i]);
  return theta;
}

}  // namespace apd
