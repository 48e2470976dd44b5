#include "apd/bench.hpp"

#include "apd/prox.hpp"
#include "apd/quadratic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

namespace apd {

namespace {

using Json = nlohmann::ordered_json;

Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> normal;
  Matrix M(rows, cols);
  // Fill row by row so the draw order does not depend on Eigen's storage order.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) M(i, j) = scale * normal(rng);
  }
  return M;
}

Vector gaussian_vector(std::mt19937_64& rng, Index n, double scale = 1.0) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * normal(rng);
  return v;
}

std::vector<Index> random_subset(std::mt19937_64& rng, Index n, Index k) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  // Partial Fisher-Yates with an explicit uniform draw keeps this portable.
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

// PSD matrix with smallest eigenvalue exactly mu: a rank-deficient Gram
// matrix plus mu*I.
Matrix psd_with_floor(std::mt19937_64& rng, Index n, double mu, double scale = 1.0) {
  const Index rank = std::max<Index>(1, n / 2);
  const Matrix G = gaussian_matrix(rng, n, rank, 1.0 / std::sqrt(static_cast<double>(n)));
  Matrix P = scale * (G * G.transpose());
  P.diagonal().array() += mu;
  return P;
}

void require_dims(long m, long n) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("generator: dimensions must be positive");
}

}  // namespace

std::string_view problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::LadCase1: return "lad-case1";
    case ProblemKind::LadCase2: return "lad-case2";
    case ProblemKind::SvmL1: return "svm-l1";
    case ProblemKind::SvmElastic: return "svm-elastic";
    case ProblemKind::QuadraticSynthetic: return "quadratic-synthetic";
  }
  return "unknown";
}

std::optional<ProblemKind> parse_problem(std::string_view name) {
  for (auto k : {ProblemKind::LadCase1, ProblemKind::LadCase2, ProblemKind::SvmL1, ProblemKind::SvmElastic,
                 ProblemKind::QuadraticSynthetic}) {
    if (problem_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string> available_methods() {
  std::vector<std::string> out;
  for (Scheme s : kAllSchemes) out.emplace_back(scheme_name(s));
  out.emplace_back("ladmm");
  out.emplace_back("cp");
  return out;
}

std::vector<std::string> reserved_methods() { return {"aladmm", "fast-ama", "aladmm-ne", "new-pd"}; }

Instance generate_lad(const RunConfig& cfg) {
  require_dims(cfg.m, cfg.n);
  if (cfg.m >= cfg.n) throw std::invalid_argument("generate_lad: need m < n");
  if (!(cfg.sparsity > 0.0) || cfg.sparsity > 1.0) throw std::invalid_argument("generate_lad: sparsity must be in (0, 1]");
  if (cfg.noise_variance < 0.0) throw std::invalid_argument("generate_lad: noise variance must be nonnegative");
  const bool case2 = cfg.problem == ProblemKind::LadCase2;

  std::mt19937_64 rng(cfg.seed);
  const Matrix A = gaussian_matrix(rng, cfg.m, cfg.n);
  const Index nnz = std::max<Index>(1, static_cast<Index>(std::llround(cfg.sparsity * static_cast<double>(cfg.n))));
  Vector truth = Vector::Zero(cfg.n);
  std::normal_distribution<double> normal;
  for (Index i : random_subset(rng, cfg.n, nnz)) truth[i] = normal(rng);
  const Vector noise = gaussian_vector(rng, cfg.m, std::sqrt(cfg.noise_variance));
  const Vector b = A * truth + (cfg.noise_variance > 0.0 ? noise : Vector::Zero(cfg.m));

  Instance inst;
  SeparableProblem& p = inst.problem;
  p.name = std::string(problem_name(cfg.problem));
  p.A = make_dense(A);
  p.B = make_negated_identity(cfg.m);
  p.b = Vector::Zero(cfg.m);
  p.mu_f = case2 ? cfg.lad_mu : 0.0;
  p.mu_g = 0.0;
  if (case2) {
    p.f.prox = std::make_shared<ElasticNet>(cfg.lad_lambda, cfg.lad_mu);
  } else {
    p.f.prox = std::make_shared<L1Norm>(cfg.lad_lambda);
  }
  p.f.smooth = std::make_shared<SquaredL2>(p.mu_f);
  p.f.rest = std::make_shared<L1Norm>(cfg.lad_lambda);
  p.g.prox = std::make_shared<ShiftedL1Norm>(b);
  inst.x0 = Vector::Zero(cfg.n);
  inst.y0 = b;
  inst.truth = truth;
  inst.lipschitz_g = std::sqrt(static_cast<double>(cfg.m));
  return inst;
}

Instance generate_svm(const RunConfig& cfg) {
  require_dims(cfg.m, cfg.n);
  if (cfg.svm_flip < 0.0 || cfg.svm_flip > 1.0) throw std::invalid_argument("generate_svm: flip fraction must be in [0, 1]");
  const bool elastic = cfg.problem == ProblemKind::SvmElastic;

  std::mt19937_64 rng(cfg.seed);
  const Matrix W = gaussian_matrix(rng, cfg.m, cfg.n);
  const Vector separator = gaussian_vector(rng, cfg.n);
  const Vector bias = gaussian_vector(rng, cfg.m);
  Vector labels = (W * separator - bias).unaryExpr([](double s) { return s >= 0.0 ? 1.0 : -1.0; });
  const Index flips = static_cast<Index>(std::floor(cfg.svm_flip * static_cast<double>(cfg.m)));
  for (Index j : random_subset(rng, cfg.m, flips)) labels[j] = -labels[j];

  Instance inst;
  SeparableProblem& p = inst.problem;
  p.name = std::string(problem_name(cfg.problem));
  p.A = make_dense(W);
  p.B = make_negated_identity(cfg.m);
  p.b = Vector::Zero(cfg.m);
  p.mu_g = 0.0;
  if (elastic) {
    p.mu_f = cfg.svm_rho1;
    p.f.prox = std::make_shared<ElasticNet>(cfg.svm_rho2, cfg.svm_rho1);
    p.f.smooth = std::make_shared<SquaredL2>(cfg.svm_rho1);
    p.f.rest = std::make_shared<L1Norm>(cfg.svm_rho2);
  } else {
    p.mu_f = 0.0;
    p.f.prox = std::make_shared<L1Norm>(cfg.svm_rho);
    p.f.smooth = std::make_shared<SquaredL2>(0.0);
    p.f.rest = std::make_shared<L1Norm>(cfg.svm_rho);
  }
  const double weight = 1.0 / static_cast<double>(cfg.m);
  p.g.prox = std::make_shared<HingeSum>(labels, bias, weight);
  inst.x0 = Vector::Zero(cfg.n);
  // Zero-loss point of the hinge sum, so the starting residual is nonzero.
  inst.y0 = bias + labels;
  inst.truth = separator;
  inst.lipschitz_g = weight * std::sqrt(static_cast<double>(cfg.m));
  return inst;
}

Instance generate_quadratic_synthetic(const RunConfig& cfg) {
  require_dims(cfg.m, cfg.n);
  std::mt19937_64 rng(cfg.seed);
  const double sn = std::sqrt(static_cast<double>(cfg.n));
  const Matrix A = gaussian_matrix(rng, cfg.m, cfg.n, 1.0 / sn);
  Matrix P = gaussian_matrix(rng, cfg.n, cfg.n, 1.0 / sn);
  P = P * P.transpose();
  P.diagonal().array() += 0.5;
  const Vector p = gaussian_vector(rng, cfg.n);
  const Vector c = gaussian_vector(rng, cfg.m);

  // Optimality: (P + A'A) x = A'c - p, y = Ax, lambda = y - c.
  const Matrix K = P + A.transpose() * A;
  const Vector xs = K.ldlt().solve(A.transpose() * c - p);
  const Vector ys = A * xs;

  Instance inst;
  SeparableProblem& pr = inst.problem;
  pr.name = std::string(problem_name(ProblemKind::QuadraticSynthetic));
  auto f = std::make_shared<QuadraticFunction>(P, p);
  auto g = std::make_shared<QuadraticFunction>(Matrix::Identity(cfg.m, cfg.m), -c, 0.5 * c.squaredNorm());
  pr.f.prox = f;
  pr.f.smooth = f;
  pr.g.prox = g;
  pr.g.smooth = g;
  pr.A = make_dense(A);
  pr.B = make_negated_identity(cfg.m);
  pr.b = Vector::Zero(cfg.m);
  pr.mu_f = f->strong_convexity();
  pr.mu_g = 1.0;
  pr.saddle = SaddlePoint{xs, ys, ys - c};
  inst.x0 = Vector::Zero(cfg.n);
  inst.y0 = c;
  return inst;
}

Instance generate_instance(const RunConfig& cfg) {
  switch (cfg.problem) {
    case ProblemKind::LadCase1:
    case ProblemKind::LadCase2: return generate_lad(cfg);
    case ProblemKind::SvmL1:
    case ProblemKind::SvmElastic: return generate_svm(cfg);
    case ProblemKind::QuadraticSynthetic: return generate_quadratic_synthetic(cfg);
  }
  throw std::logic_error("generate_instance: unknown problem");
}

SeparableProblem generate_random_quadratic(const RandomQuadraticOptions& o) {
  require_dims(o.m, o.n);
  if (o.r <= 0) throw std::invalid_argument("generate_random_quadratic: r must be positive");
  std::mt19937_64 rng(o.seed);
  const double sr = std::sqrt(static_cast<double>(o.r));
  const Matrix A = gaussian_matrix(rng, o.r, o.m, o.coupling / sr);
  const Matrix B = gaussian_matrix(rng, o.r, o.n, o.coupling / sr);
  const Matrix P = psd_with_floor(rng, o.m, o.mu_f, o.curvature);
  const Matrix Q = psd_with_floor(rng, o.n, o.mu_g, o.curvature);
  Vector xs = gaussian_vector(rng, o.m);
  const Vector ys = gaussian_vector(rng, o.n);
  const Vector ls = gaussian_vector(rng, o.r);

  Vector p = -P * xs - A.transpose() * ls;
  SeparableProblem pr;
  if (o.l1_f > 0.0) {
    // Half of x* sits at the kink; the subgradient there is drawn inside [-1, 1].
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (Index i = 0; i < o.m; i += 2) xs[i] = 0.0;
    p = -P * xs - A.transpose() * ls;
    for (Index i = 0; i < o.m; ++i) {
      const double s = xs[i] == 0.0 ? unit(rng) : (xs[i] > 0.0 ? 1.0 : -1.0);
      p[i] -= o.l1_f * s;
    }
    pr.f.smooth = std::make_shared<QuadraticFunction>(P, p);
    pr.f.rest = std::make_shared<L1Norm>(o.l1_f);
  } else {
    auto f = std::make_shared<QuadraticFunction>(P, p);
    pr.f.prox = f;
    pr.f.smooth = f;
  }
  auto g = std::make_shared<QuadraticFunction>(Q, Vector(-Q * ys - B.transpose() * ls));
  pr.g.prox = g;
  pr.g.smooth = g;
  pr.A = make_dense(A);
  pr.B = make_dense(B);
  pr.b = A * xs + B * ys;
  pr.mu_f = o.mu_f;
  pr.mu_g = o.mu_g;
  pr.saddle = SaddlePoint{xs, ys, ls};
  pr.name = "random-quadratic";
  return pr;
}

SeparableProblem generate_quadratic_l1_composite(long m, long r, double mu_f, double weight, std::uint64_t seed) {
  require_dims(m, r);
  std::mt19937_64 rng(seed);
  const Matrix A = gaussian_matrix(rng, r, m, 1.0 / std::sqrt(static_cast<double>(r)));
  const Matrix P = psd_with_floor(rng, m, mu_f);
  const Vector xs = gaussian_vector(rng, m);
  const Vector ys = A * xs;
  const Vector ls = weight * ys.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
  const Vector p = -P * xs - A.transpose() * ls;

  SeparableProblem pr;
  auto f = std::make_shared<QuadraticFunction>(P, p);
  pr.f.prox = f;
  pr.f.smooth = f;
  pr.g.prox = std::make_shared<L1Norm>(weight);
  pr.A = make_dense(A);
  pr.B = make_negated_identity(r);
  pr.b = Vector::Zero(r);
  pr.mu_f = mu_f;
  pr.mu_g = 0.0;
  pr.saddle = SaddlePoint{xs, ys, ls};
  pr.name = "quadratic-l1-composite";
  return pr;
}

std::vector<long> checkpoints(long iters) {
  std::vector<long> out{0};
  for (long decade = 1; decade <= iters; decade *= 10) {
    for (long mult : {1L, 2L, 5L}) {
      if (mult * decade <= iters) out.push_back(mult * decade);
    }
    if (decade > iters / 10) break;
  }
  if (iters > 0 && out.back() != iters) out.push_back(iters);
  return out;
}

namespace {

Json config_json(const RunConfig& c) {
  Json j;
  j["problem"] = std::string(problem_name(c.problem));
  j["m"] = c.m;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["sparsity"] = c.sparsity;
  j["noise_variance"] = c.noise_variance;
  j["lad_lambda"] = c.lad_lambda;
  j["lad_mu"] = c.lad_mu;
  j["svm_rho"] = c.svm_rho;
  j["svm_rho1"] = c.svm_rho1;
  j["svm_rho2"] = c.svm_rho2;
  j["svm_flip"] = c.svm_flip;
  j["methods"] = c.methods;
  j["iters"] = c.iters;
  j["reference_iters"] = c.reference_iters;
  j["ladmm_sigma"] = c.ladmm_sigma;
  j["cp_tau"] = c.cp_tau ? Json(*c.cp_tau) : Json(nullptr);
  j["cp_sigma"] = c.cp_sigma ? Json(*c.cp_sigma) : Json(nullptr);
  j["inner_loop"] = c.inner_loop;
  j["timing"] = c.timing;
  j["out_dir"] = c.out_dir;
  return j;
}

std::vector<std::string> split_methods(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string text = config_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

RunConfig config_from_json(const std::string& text, RunConfig c) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    try {
      if (key == "problem") {
        auto k = parse_problem(v.get<std::string>());
        if (!k) throw std::invalid_argument("config: unknown problem '" + v.get<std::string>() + "'");
        c.problem = *k;
      } else if (key == "m") c.m = v.get<long>();
      else if (key == "n") c.n = v.get<long>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "sparsity") c.sparsity = v.get<double>();
      else if (key == "noise_variance") c.noise_variance = v.get<double>();
      else if (key == "lad_lambda") c.lad_lambda = v.get<double>();
      else if (key == "lad_mu") c.lad_mu = v.get<double>();
      else if (key == "svm_rho") c.svm_rho = v.get<double>();
      else if (key == "svm_rho1") c.svm_rho1 = v.get<double>();
      else if (key == "svm_rho2") c.svm_rho2 = v.get<double>();
      else if (key == "svm_flip") c.svm_flip = v.get<double>();
      else if (key == "methods") c.methods = v.is_string() ? split_methods(v.get<std::string>()) : v.get<std::vector<std::string>>();
      else if (key == "iters") c.iters = v.get<long>();
      else if (key == "reference_iters") c.reference_iters = v.get<long>();
      else if (key == "ladmm_sigma") c.ladmm_sigma = v.get<double>();
      else if (key == "cp_tau") c.cp_tau = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "cp_sigma") c.cp_sigma = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "inner_loop") c.inner_loop = v.get<bool>();
      else if (key == "timing") c.timing = v.get<bool>();
      else if (key == "out_dir") c.out_dir = v.get<std::string>();
      else throw std::invalid_argument("config: unknown key '" + key + "'");
    } catch (const Json::type_error& e) {
      throw std::invalid_argument("config: wrong type for '" + key + "': " + e.what());
    }
  }
  return c;
}

BenchmarkResult run_benchmark_in_memory(const RunConfig& cfg) {
  if (cfg.iters < 0) throw std::invalid_argument("run_benchmark: iters must be nonnegative");
  if (cfg.methods.empty()) throw std::invalid_argument("run_benchmark: no methods requested");
  const auto known = available_methods();
  for (const auto& m : cfg.methods) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw std::invalid_argument("run_benchmark: unknown method '" + m + "'");
    }
  }

  BenchmarkResult res;
  res.config = cfg;
  const Instance inst = generate_instance(cfg);
  const SeparableProblem& p = inst.problem;
  const std::uint64_t hash = config_hash(cfg);

  OptimumOptions oo;
  oo.iters = cfg.reference_iters;
  oo.ladmm.sigma = cfg.ladmm_sigma;
  oo.x0 = inst.x0;
  oo.y0 = inst.y0;
  res.reference = approximate_optimum(p, oo);
  if (p.saddle) {
    // A planted saddle point beats any iterative estimate.
    res.reference.fstar = res.reference.pstar = objective(p, p.saddle->x, p.saddle->y);
    res.reference.uncertainty = 0.0;
  }

  RunOptions ro;
  ro.x0 = inst.x0;
  ro.y0 = inst.y0;
  ro.step.inner.enabled = cfg.inner_loop;
  ro.record_time = cfg.timing;
  ro.lipschitz_g = inst.lipschitz_g;
  const Budget budget{cfg.iters, std::nullopt, std::nullopt};

  for (const std::string& method : cfg.methods) {
    MethodOutcome out;
    out.method = method;
    try {
      RunResult rr;
      if (auto s = parse_scheme(method)) {
        rr = run(p, *s, budget, ro);
      } else if (method == "ladmm") {
        rr = run_ladmm(p, budget, LadmmConfig{cfg.ladmm_sigma}, ro);
      } else {
        rr = run_cp(p, budget, CpConfig{cfg.cp_tau, cfg.cp_sigma}, ro);
      }
      out.trace = std::move(rr.trace);
      out.final_sparsity = out.trace.rows.back().sparsity;
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    out.trace.problem = p.name;
    out.trace.method = method;
    out.trace.config_hash = hash;
    res.methods.push_back(std::move(out));
  }

  // Summary.
  const double Fs = res.reference.fstar, Ps = res.reference.pstar;
  auto ratio = [](double num, double den) -> Json {
    if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) return Json(nullptr);
    return Json(num / den);
  };
  Json summary;
  summary["config"] = config_json(cfg);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  summary["config_hash"] = hex;
  summary["reference"] = {{"fstar", Fs},
                          {"pstar", Ps},
                          {"uncertainty", std::isfinite(res.reference.uncertainty) ? Json(res.reference.uncertainty) : Json(nullptr)},
                          {"iters", res.reference.iters},
                          {"exact", p.saddle.has_value()}};
  if (inst.truth) summary["truth_nonzeros"] = sparsity(*inst.truth, 0.0);
  Json methods = Json::object();
  for (const MethodOutcome& mo : res.methods) {
    Json m;
    if (mo.error) {
      m["error"] = *mo.error;
      methods[mo.method] = m;
      continue;
    }
    const auto& rows = mo.trace.rows;
    const TraceRow& r0row = rows.front();
    const double P0 = r0row.composite ? *r0row.composite : r0row.obj;
    Json cps = Json::array();
    for (long k : checkpoints(static_cast<long>(rows.size()) - 1)) {
      const TraceRow& r = rows[static_cast<std::size_t>(k)];
      const double Pk = r.composite ? *r.composite : r.obj;
      Json cp;
      cp["k"] = k;
      cp["obj_rel"] = ratio(std::abs(r.obj - Fs), std::abs(r0row.obj - Fs));
      cp["feas_rel"] = ratio(r.feas, r0row.feas);
      cp["composite_rel"] = ratio(std::abs(Pk - Ps), std::abs(P0 - Ps));
      cp["sparsity"] = r.sparsity;
      cps.push_back(cp);
    }
    m["checkpoints"] = cps;
    m["final_sparsity"] = mo.final_sparsity;
    m["fstar_uncertainty"] = std::isfinite(res.reference.uncertainty) ? Json(res.reference.uncertainty) : Json(nullptr);
    methods[mo.method] = m;
  }
  summary["methods"] = methods;
  summary["reserved_methods"] = reserved_methods();
  res.summary_json = summary.dump(2) + "\n";
  return res;
}

BenchmarkResult run_benchmark(const RunConfig& cfg) {
  BenchmarkResult res = run_benchmark_in_memory(cfg);
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  auto write = [](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
  };
  for (const MethodOutcome& mo : res.methods) {
    if (!mo.error) write(dir / (mo.method + ".csv"), trace_to_csv(mo.trace));
  }
  write(dir / "summary.json", res.summary_json);
  return res;
}

}  // namespace apd
