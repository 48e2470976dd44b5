// Python bindings: prox operators, the parameter schedule, the benchmark
// driver (JSON in, JSON plus CSV text out) and the continuous flow.

#include "apd/bench.hpp"
#include "apd/ode.hpp"
#include "apd/prox.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

namespace {

apd::Scheme scheme_or_throw(const std::string& name) {
  const auto s = apd::parse_scheme(name);
  if (!s) throw py::value_error("unknown scheme '" + name + "'");
  return *s;
}

py::dict schedule(const std::string& scheme, double norm_A, double norm_B, double lipschitz_f, double mu_f,
                  double mu_g, long iters, std::optional<double> gamma0, std::optional<double> beta0) {
  if (iters < 0) throw py::value_error("iters must be nonnegative");
  const apd::StepSizeRule rule{scheme_or_throw(scheme), norm_A, norm_B, lipschitz_f};
  apd::ParamState ps = apd::initial_params(mu_f, mu_g, gamma0, beta0);
  std::vector<double> theta{ps.theta}, gamma{ps.gamma}, beta{ps.beta}, alpha;
  for (long k = 0; k < iters; ++k) {
    const double a = apd::solve_step_size(ps, rule);
    ps = apd::advance(ps, a);
    alpha.push_back(a);
    theta.push_back(ps.theta);
    gamma.push_back(ps.gamma);
    beta.push_back(ps.beta);
  }
  py::dict out;
  out["theta"] = theta;
  out["gamma"] = gamma;
  out["beta"] = beta;
  out["alpha"] = alpha;
  return out;
}

py::tuple benchmark(const std::string& config_json) {
  const apd::BenchmarkResult res = apd::run_benchmark_in_memory(apd::config_from_json(config_json));
  py::dict traces;
  for (const auto& mo : res.methods) {
    if (!mo.error) traces[py::str(mo.method)] = apd::trace_to_csv(mo.trace);
  }
  return py::make_tuple(res.summary_json, traces);
}

std::string flow_csv(long dim, double mu_f, double mu_g, double coupling, std::uint64_t seed, double T, double step,
                     long every) {
  apd::RandomQuadraticOptions o;
  o.m = o.n = o.r = dim;
  o.mu_f = mu_f;
  o.mu_g = mu_g;
  o.coupling = coupling;
  o.curvature = 0.02;
  o.seed = seed;
  const apd::SeparableProblem p = apd::generate_random_quadratic(o);
  const auto traj =
      apd::integrate_flow(p, apd::flow_initial_state(p, apd::Vector::Zero(dim), apd::Vector::Zero(dim)), T, step, every);
  std::ostringstream out;
  apd::write_flow_csv(p, traj, *apd::lyapunov_inputs(p), out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_apd, m) {
  m.doc() = "Accelerated primal-dual splitting: native core";

  m.def("prox_l1", &apd::prox_l1, py::arg("z"), py::arg("t"));
  m.def("prox_shifted_l1", &apd::prox_shifted_l1, py::arg("z"), py::arg("shift"), py::arg("t"));
  m.def("prox_elastic_net", &apd::prox_elastic_net, py::arg("z"), py::arg("lam"), py::arg("mu"), py::arg("tau"));
  m.def("prox_hinge_sum", &apd::prox_hinge_sum, py::arg("z"), py::arg("labels"), py::arg("bias"), py::arg("weight"),
        py::arg("tau"));
  m.def("project_box", &apd::project_box, py::arg("z"), py::arg("lo"), py::arg("hi"));

  m.def("schemes", [] {
    std::vector<std::string> out;
    for (apd::Scheme s : {apd::Scheme::F1SemiB, apd::Scheme::F1SemiA, apd::Scheme::F1Explicit, apd::Scheme::F2SemiB,
                          apd::Scheme::F2SemiA, apd::Scheme::F2Explicit}) {
      out.emplace_back(apd::scheme_name(s));
    }
    return out;
  });
  m.def("available_methods", &apd::available_methods);
  m.def("schedule", &schedule, py::arg("scheme"), py::arg("norm_A"), py::arg("norm_B"), py::arg("lipschitz_f") = 0.0,
        py::arg("mu_f") = 0.0, py::arg("mu_g") = 0.0, py::arg("iters") = 100, py::arg("gamma0") = py::none(),
        py::arg("beta0") = py::none());
  m.def("benchmark_json", &benchmark, py::arg("config_json"));
  m.def("default_config_json", [] { return apd::config_to_json(apd::RunConfig{}); });
  m.def("flow_csv", &flow_csv, py::arg("dim") = 6, py::arg("mu_f") = 0.0, py::arg("mu_g") = 0.0,
        py::arg("coupling") = 0.05, py::arg("seed") = 1, py::arg("T") = 10.0, py::arg("step") = 1e-3,
        py::arg("every") = 100);

  py::register_exception<apd::FlowBlowUp>(m, "FlowBlowUp", PyExc_RuntimeError);
}
