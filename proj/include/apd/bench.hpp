#pragma once

#include "apd/baselines.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace apd {

enum class ProblemKind { LadCase1, LadCase2, SvmL1, SvmElastic, QuadraticSynthetic };

std::string_view problem_name(ProblemKind k);
std::optional<ProblemKind> parse_problem(std::string_view name);

struct RunConfig {
  ProblemKind problem = ProblemKind::LadCase1;
  long m = 400;
  long n = 4000;
  std::uint64_t seed = 1;
  double sparsity = 0.1;
  double noise_variance = 0.01;
  double lad_lambda = 2.0;
  double lad_mu = 0.1;
  double svm_rho = 0.2;
  double svm_rho1 = 0.05;
  double svm_rho2 = 0.5;
  double svm_flip = 0.1;
  std::vector<std::string> methods{"f1-semia"};
  long iters = 1000;
  long reference_iters = 10000;
  double ladmm_sigma = 1.0;
  std::optional<double> cp_tau;
  std::optional<double> cp_sigma;
  bool inner_loop = true;
  bool timing = false;
  std::string out_dir = "bench_out";
};

/// Methods accepted by run_benchmark: the six schemes plus "ladmm" and "cp".
std::vector<std::string> available_methods();
/// Names reserved in the summary for traces computed elsewhere.
std::vector<std::string> reserved_methods();

/// Generated instance plus what the benchmark needs to start and score it.
struct Instance {
  SeparableProblem problem;
  Vector x0;
  Vector y0;
  /// Ground-truth signal where the generator has one (LAD x#, SVM separator).
  std::optional<Vector> truth;
  /// Lipschitz constant of g when finite.
  std::optional<double> lipschitz_g;
};

/// min f(x) + ||Ax - b||_1 as f(x) + g(y), Ax - y = 0, g = ||. - b||_1.
/// Case 1: f = lambda|x|_1. Case 2: f = lambda|x|_1 + mu/2|x|^2.
/// f carries both the whole-prox form and the (smooth, rest) split.
Instance generate_lad(const RunConfig& cfg);

/// min f(x) + (1/m) sum_j max(0, 1 - c_j (w_j'x - bias_j)) with the hinge sum
/// on the y-block of Ax - y = 0 (rows of A are the samples w_j).
Instance generate_svm(const RunConfig& cfg);

/// Composite quadratic f(x) + 1/2|Ax - c|^2 with the saddle point from the
/// optimality system; every block is smooth so the flow applies too.
Instance generate_quadratic_synthetic(const RunConfig& cfg);

Instance generate_instance(const RunConfig& cfg);

/// Random quadratic problem min 1/2x'Px + p'x + 1/2y'Qy + q'y s.t. Ax + By = b
/// whose saddle point is planted. P has smallest eigenvalue mu_f (singular
/// when mu_f = 0), Q likewise with mu_g.
struct RandomQuadraticOptions {
  long m = 8, n = 8, r = 8;
  double mu_f = 0.0;
  double mu_g = 0.0;
  std::uint64_t seed = 1;
  /// Weight of an l1 term added to f as the nonsmooth part f2 (second-family
  /// form only; the whole-f prox is then unavailable).
  double l1_f = 0.0;
  /// Scale of the coupling matrices.
  double coupling = 1.0;
  /// Scale of the rank-deficient Gram part of P and Q (mu*I is added after).
  double curvature = 1.0;
};
SeparableProblem generate_random_quadratic(const RandomQuadraticOptions& o);

/// Composite problem min 1/2x'Px + p'x + w|Ax|_1 (B = -I, b = 0) with planted
/// saddle point; g is w*sqrt(r)-Lipschitz.
SeparableProblem generate_quadratic_l1_composite(long m, long r, double mu_f, double weight, std::uint64_t seed);

/// Log-spaced checkpoints 0, 1, 2, 5, 10, 20, 50, ... up to and including iters.
std::vector<long> checkpoints(long iters);

/// FNV-1a over the canonical JSON form of the configuration.
std::uint64_t config_hash(const RunConfig& cfg);

/// Reads a JSON object; unknown keys are an error. Missing keys keep defaults.
RunConfig config_from_json(const std::string& text, RunConfig base = {});
std::string config_to_json(const RunConfig& cfg);

struct MethodOutcome {
  std::string method;
  IterationTrace trace;
  std::optional<std::string> error;
  std::size_t final_sparsity = 0;
};

struct BenchmarkResult {
  RunConfig config;
  OptimumEstimate reference;
  std::vector<MethodOutcome> methods;
  std::string summary_json;
};

/// Runs every requested method; a failing method is recorded and the rest
/// still run.
BenchmarkResult run_benchmark_in_memory(const RunConfig& cfg);

/// As above, then writes <out_dir>/<method>.csv and <out_dir>/summary.json.
/// Throws std::runtime_error naming the path on I/O failure.
BenchmarkResult run_benchmark(const RunConfig& cfg);

}  // namespace apd
