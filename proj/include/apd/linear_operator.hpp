#pragma once

#include <Eigen/Dense>

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace apd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Linear map R^cols -> R^rows with its adjoint.
///
/// The spectral-norm cache is the only mutable piece and may be set exactly
/// once; everything else is fixed at construction, so a shared operator can
/// be read from several threads.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;

  virtual Vector apply(const Vector& v) const = 0;
  virtual Vector apply_adjoint(const Vector& w) const = 0;

  /// Factor c when the operator is c*I (square), nullopt otherwise.
  virtual std::optional<double> scaled_identity_factor() const { return std::nullopt; }

  /// Dense copy, built column by column from apply().
  virtual Matrix to_dense() const;

  std::optional<double> cached_norm() const;
  /// Stores the norm; later calls are ignored once a value is set.
  void set_cached_norm(double value) const;

 private:
  mutable std::mutex norm_mutex_;
  mutable std::optional<double> norm_;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Matrix m) : m_(std::move(m)) {}

  Index rows() const override { return m_.rows(); }
  Index cols() const override { return m_.cols(); }
  Vector apply(const Vector& v) const override { return m_ * v; }
  Vector apply_adjoint(const Vector& w) const override { return m_.transpose() * w; }
  Matrix to_dense() const override { return m_; }

  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

class DiagonalOperator final : public LinearOperator {
 public:
  explicit DiagonalOperator(Vector d) : d_(std::move(d)) {}

  Index rows() const override { return d_.size(); }
  Index cols() const override { return d_.size(); }
  Vector apply(const Vector& v) const override { return d_.cwiseProduct(v); }
  Vector apply_adjoint(const Vector& w) const override { return d_.cwiseProduct(w); }
  std::optional<double> scaled_identity_factor() const override;

  const Vector& diagonal() const { return d_; }

 private:
  Vector d_;
};

/// c*I on R^n. NegatedIdentity below is the c = -1 case used by the
/// composite splitting Ax - y = 0.
class ScaledIdentityOperator : public LinearOperator {
 public:
  ScaledIdentityOperator(Index n, double c) : n_(n), c_(c) {}

  Index rows() const override { return n_; }
  Index cols() const override { return n_; }
  Vector apply(const Vector& v) const override { return c_ * v; }
  Vector apply_adjoint(const Vector& w) const override { return c_ * w; }
  std::optional<double> scaled_identity_factor() const override { return c_; }

  double factor() const { return c_; }

 private:
  Index n_;
  double c_;
};

class NegatedIdentityOperator final : public ScaledIdentityOperator {
 public:
  explicit NegatedIdentityOperator(Index n) : ScaledIdentityOperator(n, -1.0) {}
};

OperatorPtr make_dense(Matrix m);
OperatorPtr make_diagonal(Vector d);
OperatorPtr make_scaled_identity(Index n, double c);
OperatorPtr make_identity(Index n);
OperatorPtr make_negated_identity(Index n);

/// Thrown when power iteration does not settle; carries the last estimate.
class NormEstimationError : public std::runtime_error {
 public:
  NormEstimationError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

struct NormEstimateOptions {
  double tol = 1e-8;
  int max_iters = 5000;
  unsigned long long seed = 0x5eed'a11c'e5u;
};

/// Largest singular value by power iteration on A^T A from a seeded random
/// start. Caches the result on the operator. Returns exactly 0 for the zero
/// operator.
double estimate_operator_norm(const LinearOperator& op, const NormEstimateOptions& opts = {});

/// Multiplicative margin applied to estimated norms before they enter
/// step-size conditions.
inline constexpr double kNormSafetyFactor = 1.0 + 1e-6;

/// Cached norm if present (otherwise estimated), times kNormSafetyFactor.
double safe_operator_norm(const LinearOperator& op);

}  // namespace apd
