#include "apd/prox.hpp"

#include "apd/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace apd {

namespace {

void require_positive(double tau, const char* where) {
  if (!(tau > 0.0)) throw std::invalid_argument(std::string(where) + ": step must be positive");
}

}  // namespace

Vector prox_l1(const Vector& z, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_l1: threshold must be nonnegative");
  return z.unaryExpr([t](double zi) { return std::copysign(std::max(std::abs(zi) - t, 0.0), zi); });
}

Vector prox_shifted_l1(const Vector& z, const Vector& shift, double t) {
  if (z.size() != shift.size()) throw std::invalid_argument("prox_shifted_l1: dimension mismatch");
  return shift + prox_l1(z - shift, t);
}

Vector prox_elastic_net(const Vector& z, double lambda, double mu, double tau) {
  if (lambda < 0.0 || mu < 0.0) throw std::invalid_argument("prox_elastic_net: weights must be nonnegative");
  require_positive(tau, "prox_elastic_net");
  return prox_l1(z, tau * lambda) / (1.0 + tau * mu);
}

Vector prox_hinge_sum(const Vector& z, const Vector& labels, const Vector& bias, double weight,
                      double tau) {
  if (z.size() != labels.size() || z.size() != bias.size()) {
    throw std::invalid_argument("prox_hinge_sum: dimension mismatch");
  }
  require_positive(tau, "prox_hinge_sum");
  const double t = tau * weight;
  Vector out(z.size());
  for (Index j = 0; j < z.size(); ++j) {
    const double c = labels[j];
    if (std::abs(c) != 1.0) throw std::invalid_argument("prox_hinge_sum: labels must be +1 or -1");
    // Work in the margin coordinate s = c (y - bias); |c| = 1 keeps distances.
    const double s = c * (z[j] - bias[j]);
    double ps;
    if (s >= 1.0) {
      ps = s;
    } else if (s <= 1.0 - t) {
      ps = s + t;
    } else {
      ps = 1.0;
    }
    out[j] = bias[j] + c * ps;
  }
  return out;
}

Vector project_box(const Vector& z, const Vector& lo, const Vector& hi) {
  if (z.size() != lo.size() || z.size() != hi.size()) throw std::invalid_argument("project_box: dimension mismatch");
  return z.cwiseMax(lo).cwiseMin(hi);
}

Vector ZeroFunction::prox(const Vector& z, double /*tau*/) const { return z; }
double ZeroFunction::value(const Vector& /*x*/) const { return 0.0; }
std::optional<Vector> ZeroFunction::solve_augmented(const AugmentedSubproblem& sub) const {
  const Index n = sub.center.size();
  return solve_quadratic_augmented(Matrix::Zero(n, n), Vector::Zero(n), sub);
}

L1Norm::L1Norm(double lambda) : lambda_(lambda) {
  if (lambda < 0.0) throw std::invalid_argument("L1Norm: weight must be nonnegative");
}
Vector L1Norm::prox(const Vector& z, double tau) const {
  require_positive(tau, "L1Norm::prox");
  return prox_l1(z, tau * lambda_);
}
double L1Norm::value(const Vector& x) const { return lambda_ * x.lpNorm<1>(); }

ShiftedL1Norm::ShiftedL1Norm(Vector shift, double lambda) : shift_(std::move(shift)), lambda_(lambda) {
  if (lambda < 0.0) throw std::invalid_argument("ShiftedL1Norm: weight must be nonnegative");
}
Vector ShiftedL1Norm::prox(const Vector& z, double tau) const {
  require_positive(tau, "ShiftedL1Norm::prox");
  return prox_shifted_l1(z, shift_, tau * lambda_);
}
double ShiftedL1Norm::value(const Vector& x) const { return lambda_ * (x - shift_).lpNorm<1>(); }

SquaredL2::SquaredL2(double mu) : mu_(mu) {
  if (mu < 0.0) throw std::invalid_argument("SquaredL2: weight must be nonnegative");
}
Vector SquaredL2::prox(const Vector& z, double tau) const {
  require_positive(tau, "SquaredL2::prox");
  return z / (1.0 + tau * mu_);
}
double SquaredL2::value(const Vector& x) const { return 0.5 * mu_ * x.squaredNorm(); }
std::optional<Vector> SquaredL2::solve_augmented(const AugmentedSubproblem& sub) const {
  const Index n = sub.center.size();
  return solve_quadratic_augmented(mu_ * Matrix::Identity(n, n), Vector::Zero(n), sub);
}

ElasticNet::ElasticNet(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (lambda < 0.0 || mu < 0.0) throw std::invalid_argument("ElasticNet: weights must be nonnegative");
}
Vector ElasticNet::prox(const Vector& z, double tau) const { return prox_elastic_net(z, lambda_, mu_, tau); }
double ElasticNet::value(const Vector& x) const {
  return lambda_ * x.lpNorm<1>() + 0.5 * mu_ * x.squaredNorm();
}

HingeSum::HingeSum(Vector labels, Vector bias, double weight)
    : labels_(std::move(labels)), bias_(std::move(bias)), weight_(weight) {
  if (labels_.size() != bias_.size()) throw std::invalid_argument("HingeSum: dimension mismatch");
  if (weight < 0.0) throw std::invalid_argument("HingeSum: weight must be nonnegative");
  for (Index j = 0; j < labels_.size(); ++j) {
    if (std::abs(labels_[j]) != 1.0) throw std::invalid_argument("HingeSum: labels must be +1 or -1");
  }
}
Vector HingeSum::prox(const Vector& z, double tau) const {
  return prox_hinge_sum(z, labels_, bias_, weight_, tau);
}
double HingeSum::value(const Vector& x) const {
  const Vector margin = labels_.cwiseProduct(x - bias_);
  return weight_ * (1.0 - margin.array()).max(0.0).sum();
}

Box::Box(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw std::invalid_argument("Box: dimension mismatch");
  if ((lo_.array() > hi_.array()).any()) throw std::invalid_argument("Box: empty box");
}
Vector Box::prox(const Vector& z, double /*tau*/) const { return project_box(z, lo_, hi_); }
double Box::value(const Vector& x) const { return contains(x) ? 0.0 : kInfinity; }
bool Box::contains(const Vector& x, double tol) const {
  return x.size() == lo_.size() && (x.array() >= lo_.array() - tol).all() && (x.array() <= hi_.array() + tol).all();
}

BoxConstrained::BoxConstrained(ProxPtr inner, Vector lo, Vector hi)
    : inner_(std::move(inner)), box_(std::move(lo), std::move(hi)) {
  if (!inner_) throw std::invalid_argument("BoxConstrained: inner function required");
}
Vector BoxConstrained::prox(const Vector& z, double tau) const { return box_.prox(inner_->prox(z, tau), tau); }
double BoxConstrained::value(const Vector& x) const {
  return box_.contains(x) ? inner_->value(x) : kInfinity;
}
bool BoxConstrained::contains(const Vector& x, double tol) const { return box_.contains(x, tol); }

}  // namespace apd
