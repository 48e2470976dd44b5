#pragma once

#include "apd/iterate.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace apd {

/// Reference data for Lyapunov and bound computations.
struct LyapunovInputs {
  SaddlePoint saddle;
  double fstar = 0.0;
  /// Lipschitz constant of g, for the composite objective bound.
  std::optional<double> lipschitz_g;
  /// False when fstar comes from an approximate reference run; bound
  /// reports are then labelled empirical.
  bool certified = true;
};

/// Inputs from the problem's reference saddle point; nullopt without one.
std::optional<LyapunovInputs> lyapunov_inputs(const SeparableProblem& p,
                                              std::optional<double> lipschitz_g = std::nullopt);

/// L(x, y, lambda*) - L(x*, y*, lambda) = F(x,y) + <lambda*, Ax+By-b> - F*.
double lagrangian_gap(const SeparableProblem& p, const Vector& x, const Vector& y, const LyapunovInputs& in);

/// gap + gamma/2 |v-x*|^2 + beta/2 |w-y*|^2 + theta/2 |lambda-lambda*|^2.
double lyapunov(const SeparableProblem& p, const IterateState& s, const ParamState& ps, const LyapunovInputs& in);
std::optional<double> lyapunov(const SeparableProblem& p, const IterateState& s, const ParamState& ps,
                               const std::optional<LyapunovInputs>& in);

/// sqrt(2 E0) + |lambda0 - lambda*| + |A x0 + B y0 - b|.
double r0(const SeparableProblem& p, const IterateState& s0, const ParamState& ps0, const LyapunovInputs& in);

/// Entries with |x_i| > threshold; default threshold 1e-6 * |x|_inf.
std::size_t sparsity(const Vector& x, std::optional<double> threshold = std::nullopt);

struct TraceRow {
  long k = 0;
  std::optional<double> theta;
  std::optional<double> alpha;
  double obj = 0.0;
  double feas = 0.0;
  std::optional<double> gap;
  std::optional<double> lyap;
  std::size_t sparsity = 0;
  std::optional<double> seconds;
  /// P(x_k) for composite problems; kept in memory, not serialized.
  std::optional<double> composite;
};

struct IterationTrace {
  std::string problem;
  std::string method;
  std::uint64_t config_hash = 0;
  std::vector<TraceRow> rows;
  std::optional<double> e0;
  std::optional<double> r0;
};

/// Diagnostics row for a state. `ps` may be absent (baselines), in which
/// case theta and the Lyapunov value are left empty.
TraceRow make_row(const SeparableProblem& p, long k, const IterateState& s, const std::optional<ParamState>& ps,
                  const std::optional<LyapunovInputs>& in, std::optional<double> sparsity_threshold = std::nullopt);

inline constexpr const char* kTraceHeader = "k,theta,alpha,obj,feas,gap,lyap,sparsity,seconds";

void write_trace_csv(const IterationTrace& trace, std::ostream& out);
std::string trace_to_csv(const IterationTrace& trace);
/// Shortest round-trip decimal form.
std::string format_double(double v);

struct BoundCheck {
  std::string name;
  bool applicable = false;
  /// Largest (value - bound)/(1 + |bound|) over rows; <= slack means satisfied.
  double max_violation = -kInfinity;
  std::vector<long> violating_rows;
};

struct BoundReport {
  bool applicable = false;
  /// "certified" with an exact saddle point, "empirical" otherwise.
  std::string label = "inapplicable";
  std::vector<BoundCheck> checks;
  bool ok() const;
  const BoundCheck* find(const std::string& name) const;
};

inline constexpr double kBoundSlack = 1e-8;

/// Row-wise checks of
///   feasibility  |Ax+By-b| <= theta R0
///   gap          L(x,y,lambda*) - L(x*,y*,lambda) <= theta E0
///   objective    |F - F*| <= theta (E0 + |lambda*| R0)
///   lyapunov     E_k <= theta E0
///   composite    0 <= P - P* <= theta (E0 + (|lambda*| + M_g) R0)   (when M_g is known)
/// with slack kBoundSlack * (1 + bound). Violations are reported, not thrown.
BoundReport certify_bounds(const IterationTrace& trace, const std::optional<LyapunovInputs>& in,
                           double slack = kBoundSlack);

}  // namespace apd
