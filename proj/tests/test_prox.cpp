#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "apd/prox.hpp"
#include "apd/quadratic.hpp"
#include "apd/subproblem.hpp"

#include <random>

using namespace apd;
using LD = long double;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vector randn(Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * d(rng);
  return v;
}

void check_against_oracle(const Vector& got, const Vector& z, double tau, const std::function<LD(Index, LD)>& h) {
  for (Index i = 0; i < z.size(); ++i) {
    const double ref = oracle::scalar_prox([&](LD t) { return h(i, t); }, z[i], tau, 20.0 + 2.0 * std::abs(z[i]));
    CHECK(std::abs(got[i] - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
  }
}

}  // namespace

TEST_CASE("soft thresholding examples") {
  CHECK(prox_l1(vec({3, -0.5}), 1.0).isApprox(vec({2, 0})));
  CHECK(prox_l1(Vector::Zero(4), 0.7).isZero(0));
  std::mt19937_64 rng(1);
  const Vector z = randn(12, rng, 2);
  check_against_oracle(prox_l1(z, 0.3), z, 1.0, [](Index, LD t) { return 0.3L * std::fabs(t); });
}

TEST_CASE("shifted l1") {
  std::mt19937_64 rng(2);
  const Vector b = randn(6, rng);
  CHECK(prox_shifted_l1(b, b, 0.8).isApprox(b));
  const Vector z = randn(6, rng, 2);
  CHECK(prox_shifted_l1(z, Vector::Zero(6), 0.4).isApprox(prox_l1(z, 0.4)));
  check_against_oracle(prox_shifted_l1(z, b, 0.4), z, 1.0, [&](Index i, LD t) { return 0.4L * std::fabs(t - b[i]); });
  ShiftedL1Norm h(b, 2.0);
  check_against_oracle(h.prox(z, 0.3), z, 0.3, [&](Index i, LD t) { return 2.0L * std::fabs(t - b[i]); });
}

TEST_CASE("elastic net") {
  std::mt19937_64 rng(3);
  const Vector z = randn(8, rng, 2);
  CHECK(prox_elastic_net(z, 0.5, 0.0, 0.6).isApprox(prox_l1(z, 0.3)));
  CHECK(prox_elastic_net(vec({2}), 0.0, 1.0, 1.0).isApprox(vec({1})));
  check_against_oracle(prox_elastic_net(z, 0.5, 1.5, 0.7), z, 0.7,
                       [](Index, LD t) { return 0.5L * std::fabs(t) + 0.75L * t * t; });
  CHECK_THROWS(ElasticNet(-1.0, 1.0));
}

TEST_CASE("hinge sum regions and oracle") {
  const double m = 4.0, tau = 0.5, w = 1.0 / m;
  const Vector c = vec({1, -1, 1, -1});
  const Vector bias = vec({0.2, -0.1, 0.0, 0.3});
  // Coordinate 0 satisfies c(y - bias) = 2 >= 1 with margin; coordinate 1 is a deep violation.
  const Vector z = vec({2.2, 3.0, 1.0 + 0.5 * tau * w, 0.3});
  const Vector p = prox_hinge_sum(z, c, bias, w, tau);
  CHECK(p[0] == doctest::Approx(2.2));
  CHECK(p[1] == doctest::Approx(3.0 + tau * w * c[1]));
  check_against_oracle(p, z, tau, [&](Index i, LD t) { return w * std::max(0.0L, 1.0L - c[i] * (t - bias[i])); });

  // Boundary cases: exactly at the kink and exactly at the edge of the linear region.
  const Vector z2 = vec({1.2, -1.1 + tau * w * -1.0 + 0.0, 1.0 - tau * w, 0.3 - 1.0});
  check_against_oracle(prox_hinge_sum(z2, c, bias, w, tau), z2, tau,
                       [&](Index i, LD t) { return w * std::max(0.0L, 1.0L - c[i] * (t - bias[i])); });
  CHECK_THROWS_AS(HingeSum(vec({1, 0.5}), vec({0, 0}), 1.0), std::invalid_argument);
}

TEST_CASE("box projection, membership and box-constrained prox") {
  const Vector lo = vec({-1, 0, 2}), hi = vec({1, 0.5, 3});
  Box box(lo, hi);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Vector z = randn(3, rng, 3);
    const Vector p = box.prox(z, 0.9);
    CHECK(box.contains(p));
    CHECK(box.value(p) == 0.0);
    BoxConstrained bl(std::make_shared<L1Norm>(0.4), lo, hi);
    const Vector q = bl.prox(z, 0.9);
    CHECK(bl.contains(q));
    check_against_oracle(q, z, 0.9, [&](Index i, LD s) {
      const LD d = s < lo[i] ? lo[i] - s : (s > hi[i] ? s - hi[i] : 0.0L);
      return 0.4L * std::fabs(s) + 1e12L * d;
    });
  }
  CHECK(box.value(vec({5, 0, 2})) == kInfinity);
  CHECK_FALSE(box.contains(vec({5, 0, 2})));
  CHECK_THROWS(Box(vec({1}), vec({0})));
}

TEST_CASE("firm nonexpansiveness of every builtin prox") {
  std::mt19937_64 rng(6);
  const Index n = 5;
  const Vector c = vec({1, -1, 1, 1, -1});
  const std::vector<ProxPtr> ops = {
      std::make_shared<ZeroFunction>(),
      std::make_shared<L1Norm>(0.7),
      std::make_shared<ShiftedL1Norm>(randn(n, rng)),
      std::make_shared<SquaredL2>(1.3),
      std::make_shared<ElasticNet>(0.4, 0.9),
      std::make_shared<HingeSum>(c, randn(n, rng), 0.2),
      std::make_shared<Box>(Vector::Constant(n, -1), Vector::Constant(n, 1)),
      std::make_shared<QuadraticFunction>(Matrix::Identity(n, n) * 2.0, randn(n, rng))};
  for (const auto& op : ops) {
    for (int t = 0; t < 30; ++t) {
      const Vector a = randn(n, rng, 3), b = randn(n, rng, 3);
      const Vector d = op->prox(a, 0.6) - op->prox(b, 0.6);
      CHECK(d.squaredNorm() <= d.dot(a - b) + 1e-12);
      CHECK(d.norm() <= (a - b).norm() + 1e-12);
    }
  }
}

TEST_CASE("nonpositive step is rejected") {
  CHECK_THROWS_AS(L1Norm(1.0).prox(vec({1}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_l1(vec({1}), -1.0), std::invalid_argument);
}

TEST_CASE("quadratic prox solves (P + I/tau) z = z0/tau - p") {
  std::mt19937_64 rng(7);
  const Matrix M = Matrix::Random(4, 4);
  const Matrix P = M * M.transpose();
  const Vector p = randn(4, rng), z = randn(4, rng);
  QuadraticFunction q(P, p);
  const Vector got = q.prox(z, 0.3);
  CHECK((P * got + p + (got - z) / 0.3).norm() <= 1e-10);
}

TEST_CASE("augmented subproblem: closed form, exact quadratic and inner loop agree") {
  std::mt19937_64 rng(8);
  const Index n = 4;
  const Vector lin = randn(n, rng), off = randn(n, rng), ctr = randn(n, rng);
  const double sigma = 1.7, rho = 0.8;

  SUBCASE("scaled identity with l1 matches the scalar minimizer") {
    auto op = make_scaled_identity(n, -1.5);
    const AugmentedSubproblem sub{lin, *op, off, sigma, rho, ctr};
    L1Norm h(0.6);
    const Vector z = solve_augmented_subproblem(h, {}, sub, {});
    for (Index i = 0; i < n; ++i) {
      auto obj = [&](LD t) {
        const LD r = -1.5L * t + off[i];
        return 0.6L * std::fabs(t) + lin[i] * t + sigma / 2 * r * r + rho / 2 * (t - ctr[i]) * (t - ctr[i]);
      };
      const double ref = static_cast<double>(oracle::golden_section_min(obj, -50, 50));
      CHECK(z[i] == doctest::Approx(ref).epsilon(1e-8));
    }
  }

  SUBCASE("dense operator, quadratic h: exact solve satisfies stationarity; inner loop agrees") {
    const Matrix C = Matrix::Random(3, n);
    auto op = make_dense(C);
    const Vector off3 = randn(3, rng);
    const AugmentedSubproblem sub{lin, *op, off3, sigma, rho, ctr};
    const Matrix P = Matrix::Identity(n, n) * 0.5;
    const Vector p = randn(n, rng);
    QuadraticFunction h(P, p);
    const Vector z = solve_augmented_subproblem(h, {}, sub, {});
    const Vector grad = P * z + p + lin + sigma * C.transpose() * (C * z + off3) + rho * (z - ctr);
    CHECK(grad.norm() <= 1e-10);
    InnerSolverOptions inner;
    inner.enabled = true;
    inner.tol = 1e-13;
    inner.max_iters = 20000;
    CHECK((inner_prox_gradient(h, sub, inner) - z).norm() <= 1e-8);
  }

  SUBCASE("dense operator with l1 needs the inner loop or a hook") {
    const Matrix C = Matrix::Random(3, n);
    auto op = make_dense(C);
    const Vector off3 = randn(3, rng);
    const AugmentedSubproblem sub{lin, *op, off3, sigma, rho, ctr};
    L1Norm h(0.3);
    CHECK_THROWS_AS(solve_augmented_subproblem(h, {}, sub, {}), SubproblemUnavailable);
    InnerSolverOptions inner;
    inner.enabled = true;
    inner.tol = 1e-13;
    inner.max_iters = 50000;
    const Vector z = solve_augmented_subproblem(h, {}, sub, inner);
    // Prox fixed-point residual of the composite objective.
    const double L = sigma * C.squaredNorm() + rho;
    const Vector smooth_grad = lin + sigma * C.transpose() * (C * z + off3) + rho * (z - ctr);
    CHECK((h.prox(z - smooth_grad / L, 1.0 / L) - z).norm() <= 1e-8);
    bool called = false;
    AugmentedSolver hook = [&](const ProxOracle&, const AugmentedSubproblem&) {
      called = true;
      return Vector(Vector::Zero(n));
    };
    CHECK(solve_augmented_subproblem(h, hook, sub, {}).isZero(0));
    CHECK(called);
  }
}
