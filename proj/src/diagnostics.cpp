#include "apd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace apd {

std::optional<LyapunovInputs> lyapunov_inputs(const SeparableProblem& p, std::optional<double> lipschitz_g) {
  if (!p.saddle) return std::nullopt;
  LyapunovInputs in;
  in.saddle = *p.saddle;
  in.fstar = objective(p, p.saddle->x, p.saddle->y);
  in.lipschitz_g = lipschitz_g;
  in.certified = true;
  return in;
}

double lagrangian_gap(const SeparableProblem& p, const Vector& x, const Vector& y, const LyapunovInputs& in) {
  return lagrangian_value(p, x, y, in.saddle.lambda) - in.fstar;
}

double lyapunov(const SeparableProblem& p, const IterateState& s, const ParamState& ps, const LyapunovInputs& in) {
  const double gap = lagrangian_gap(p, s.x, s.y, in);
  return gap + 0.5 * ps.gamma * (s.v - in.saddle.x).squaredNorm() + 0.5 * ps.beta * (s.w - in.saddle.y).squaredNorm() +
         0.5 * ps.theta * (s.lambda - in.saddle.lambda).squaredNorm();
}

std::optional<double> lyapunov(const SeparableProblem& p, const IterateState& s, const ParamState& ps,
                               const std::optional<LyapunovInputs>& in) {
  if (!in) return std::nullopt;
  return lyapunov(p, s, ps, *in);
}

double r0(const SeparableProblem& p, const IterateState& s0, const ParamState& ps0, const LyapunovInputs& in) {
  const double e0 = std::max(0.0, lyapunov(p, s0, ps0, in));
  return std::sqrt(2.0 * e0) + (s0.lambda - in.saddle.lambda).norm() + feasibility_residual(p, s0.x, s0.y);
}

std::size_t sparsity(const Vector& x, std::optional<double> threshold) {
  if (x.size() == 0) return 0;
  const double t = threshold ? *threshold : 1e-6 * x.cwiseAbs().maxCoeff();
  if (t < 0.0) throw std::invalid_argument("sparsity: threshold must be nonnegative");
  return static_cast<std::size_t>((x.array().abs() > t).count());
}

TraceRow make_row(const SeparableProblem& p, long k, const IterateState& s, const std::optional<ParamState>& ps,
                  const std::optional<LyapunovInputs>& in, std::optional<double> sparsity_threshold) {
  TraceRow row;
  row.k = k;
  row.obj = objective(p, s.x, s.y);
  row.feas = feasibility_residual(p, s.x, s.y);
  row.sparsity = sparsity(s.x, sparsity_threshold);
  if (ps) row.theta = ps->theta;
  if (in && in->certified) {
    row.gap = lagrangian_gap(p, s.x, s.y, *in);
    if (ps) row.lyap = lyapunov(p, s, *ps, *in);
  }
  if (p.is_composite()) row.composite = composite_objective(p, s.x);
  return row;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.k << ',' << opt(r.theta) << ',' << opt(r.alpha) << ',' << format_double(r.obj) << ','
        << format_double(r.feas) << ',' << opt(r.gap) << ',' << opt(r.lyap) << ',' << r.sparsity << ','
        << opt(r.seconds) << '\n';
  }
}

std::string trace_to_csv(const IterationTrace& trace) {
  std::ostringstream os;
  write_trace_csv(trace, os);
  return os.str();
}

bool BoundReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return !c.applicable || c.violating_rows.empty(); });
}

const BoundCheck* BoundReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

BoundReport certify_bounds(const IterationTrace& trace, const std::optional<LyapunovInputs>& in, double slack) {
  BoundReport report;
  if (!in || !trace.e0 || !trace.r0) return report;
  report.applicable = true;
  report.label = in->certified ? "certified" : "empirical";

  const double E0 = *trace.e0, R0 = *trace.r0;
  const double lam = in->saddle.lambda.norm();
  auto check = [&](const std::string& name, auto value_of, auto bound_of) {
    BoundCheck c;
    c.name = name;
    for (const TraceRow& r : trace.rows) {
      if (!r.theta) continue;
      const std::optional<double> value = value_of(r);
      if (!value) continue;
      c.applicable = true;
      const double bound = bound_of(*r.theta);
      const double viol = (*value - bound) / (1.0 + std::abs(bound));
      c.max_violation = std::max(c.max_violation, viol);
      if (viol > slack) c.violating_rows.push_back(r.k);
    }
    report.checks.push_back(std::move(c));
  };

  check("feasibility", [](const TraceRow& r) { return std::optional<double>(r.feas); },
        [&](double th) { return th * R0; });
  check("gap", [](const TraceRow& r) { return r.gap; }, [&](double th) { return th * E0; });
  check("objective", [&](const TraceRow& r) { return std::optional<double>(std::abs(r.obj - in->fstar)); },
        [&](double th) { return th * (E0 + lam * R0); });
  check("lyapunov", [](const TraceRow& r) { return r.lyap; }, [&](double th) { return th * E0; });
  if (in->lipschitz_g) {
    const double Mg = *in->lipschitz_g;
    check("composite", [&](const TraceRow& r) -> std::optional<double> {
            if (!r.composite) return std::nullopt;
            return *r.composite - in->fstar;
          },
          [&](double th) { return th * (E0 + (lam + Mg) * R0); });
    // Lower half of the composite bound: P - P* >= 0.
    check("composite-lower", [&](const TraceRow& r) -> std::optional<double> {
            if (!r.composite) return std::nullopt;
            return in->fstar - *r.composite;
          },
          [](double) { return 0.0; });
  }
  return report;
}

}  // namespace apd
