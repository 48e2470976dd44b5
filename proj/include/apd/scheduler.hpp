#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apd {

enum class Scheme { F1SemiB, F1SemiA, F1Explicit, F2SemiB, F2SemiA, F2Explicit };

inline constexpr Scheme kAllSchemes[] = {Scheme::F1SemiB, Scheme::F1SemiA, Scheme::F1Explicit,
                                         Scheme::F2SemiB, Scheme::F2SemiA, Scheme::F2Explicit};

/// "f1-semib", "f1-semia", "f1-explicit", "f2-semib", ...
std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
bool is_family2(Scheme s);

/// (theta, gamma, beta) at iteration k together with the moduli that drive
/// the recursion.
struct ParamState {
  double theta = 1.0;
  double gamma = 1.0;
  double beta = 1.0;
  long k = 0;
  double mu_f = 0.0;
  double mu_g = 0.0;
  double gamma0 = 1.0;
  double beta0 = 1.0;
};

/// theta = 1; gamma0 = mu_f when mu_f > 0 and 1 otherwise (beta0 likewise),
/// unless overridden.
ParamState initial_params(double mu_f, double mu_g, std::optional<double> gamma0 = std::nullopt,
                          std::optional<double> beta0 = std::nullopt);

struct StepSizeRule {
  Scheme scheme = Scheme::F1SemiB;
  double norm_A = 0.0;
  double norm_B = 0.0;
  double lipschitz_f = 0.0;
};

/// Closed-form alpha_k solving the scheme's step-size condition as an
/// equality at the current parameters. Throws std::domain_error when the
/// condition degenerates (e.g. ||B|| = 0 for F1SemiB).
double solve_step_size(const ParamState& ps, const StepSizeRule& rule);

/// theta+ = theta/(1+a), gamma+ = (gamma + mu_f a)/(1+a), beta+ likewise.
ParamState advance(const ParamState& ps, double alpha);

struct BoundConstants {
  double norm_A = 0.0;
  double norm_B = 0.0;
  double mu_f = 0.0;
  double mu_g = 0.0;
  double lipschitz_f = 0.0;
  double gamma0 = 1.0;
  double beta0 = 1.0;
};

struct ThetaBound {
  double value = 1.0;
  /// False when the constants violate the hypothesis under which the bound
  /// was derived; value is still the formula.
  bool applicable = true;
  /// True for bounds with explicit constant 1; false for shape-only bounds
  /// that hold up to an unspecified constant.
  bool exact = true;
};

/// Theoretical decay bound on theta_k for a scheme.
ThetaBound theoretical_theta_bound(Scheme s, long k, const BoundConstants& c);

/// Decay estimates for difference inequalities
///   Power:        theta+ - theta <= -sigma theta^nu theta+
///   Mixed:        theta+ - theta <= -sigma theta^nu theta+ / sqrt(Q theta + R^2)
///   Exponential:  theta+ - theta <= -sigma theta theta+ / sqrt(P theta^2 + Q theta + R^2)
/// with theta+/theta >= tau. Generic constants are taken as 1.
enum class DecayCase { Power, Mixed, Exponential };

double decay_bound(DecayCase c, double sigma, double tau, double nu, double P, double Q, double R, long k);

/// theta_k from a log of step sizes, by the product formula.
double theta_from_alphas(const std::vector<double>& alphas, std::size_t k);

}  // namespace apd
