#pragma once

// Pointwise multilinear algebra for maps between a Lorentzian base and a
// Riemannian target: metrics, pullbacks, the strain operator and its
// characteristic-polynomial invariants.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

#include "hyperlab/errors.hpp"

namespace hyperlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Elementary symmetric polynomials sigma_0..sigma_N of the eigenvalues of a
/// square matrix, read off the characteristic polynomial with the
/// Faddeev-LeVerrier recursion. Real arithmetic only.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> faddeev_leverrier_sigmas(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  eigen_assert(a.cols() == n);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sigma(n + 1);
  sigma(0) = Scalar(1);
  Mat m = Mat::Zero(n, n);
  Scalar c = Scalar(1);  // coefficient of lambda^(n-k+1)
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    m.diagonal().array() += c;
    c = -(a * m).trace() / Scalar(k);
    sigma(k) = (k % 2 == 0) ? c : -c;
  }
  return sigma;
}

/// Same invariants through power sums p_i = tr(A^i) and Newton's identities.
/// Kept as an independent cross-check of faddeev_leverrier_sigmas.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> newton_sigmas(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  eigen_assert(a.cols() == n);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p(n + 1);
  Mat power = Mat::Identity(n, n);
  for (Eigen::Index i = 1; i <= n; ++i) {
    power = power * a;
    p(i) = power.trace();
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sigma(n + 1);
  sigma(0) = Scalar(1);
  for (Eigen::Index j = 1; j <= n; ++j) {
    Scalar acc = Scalar(0);
    for (Eigen::Index i = 1; i <= j; ++i) {
      const Scalar term = sigma(j - i) * p(i);
      acc += (i % 2 == 1) ? term : -term;
    }
    sigma(j) = acc / Scalar(j);
  }
  return sigma;
}

/// (phi^* h)_ab = d_a phi^A h_AB d_b phi^B for dphi stored (base) x (target).
template <typename DerivedJ, typename DerivedH>
auto pullback(const Eigen::MatrixBase<DerivedJ>& dphi, const Eigen::MatrixBase<DerivedH>& h) {
  return (dphi * h * dphi.transpose()).eval();
}

/// Number of singular values of dphi above 1e-9 of the largest.
int numeric_rank(const Matrix& dphi, double rel_tol = 1e-9);

class BaseMetric {
 public:
  /// Validates symmetry and a (-,+,...,+) signature; throws InvalidInput.
  explicit BaseMetric(Matrix components);

  static BaseMetric minkowski(int dim);

  int dim() const { return static_cast<int>(components_.rows()); }
  const Matrix& components() const { return components_; }
  const Matrix& inverse() const { return inverse_; }
  double norm() const { return norm_; }

  /// Columns form a g-orthonormal frame, column 0 timelike.
  const Matrix& orthonormal_frame() const { return frame_; }

  double operator()(const Vector& u, const Vector& v) const { return u.dot(components_ * v); }

 private:
  Matrix components_;
  Matrix inverse_;
  Matrix frame_;
  double norm_ = 0.0;
};

class TargetMetric {
 public:
  /// Validates symmetric positive definiteness; throws InvalidInput.
  explicit TargetMetric(Matrix components);

  static TargetMetric identity(int dim);

  int dim() const { return static_cast<int>(components_.rows()); }
  const Matrix& components() const { return components_; }

 private:
  Matrix components_;
};

/// Pointwise data (g, h, d phi, s). dphi(a, A) = d_a phi^A.
class FieldJet {
 public:
  FieldJet(BaseMetric g, TargetMetric h, Matrix dphi, double s = 0.0);

  const BaseMetric& g() const { return g_; }
  const TargetMetric& h() const { return h_; }
  const Matrix& dphi() const { return dphi_; }
  double s() const { return s_; }

  int base_dim() const { return g_.dim(); }
  int target_dim() const { return h_.dim(); }

  FieldJet with_dphi(Matrix dphi) const { return FieldJet(g_, h_, std::move(dphi), s_); }

 private:
  BaseMetric g_;
  TargetMetric h_;
  Matrix dphi_;
  double s_;
};

struct StrainData {
  Matrix pullback;  // (phi^* h)_ab
  Matrix strain;    // (D^phi)^a_b = g^ac (phi^* h)_cb
  Vector sigmas;    // sigma_0 .. sigma_{m+1}
  int rank = 0;     // numeric rank of dphi
};

Matrix pullback_metric(const FieldJet& jet);

/// sigma_j from the Faddeev-LeVerrier recursion, with sigma_j := 0 for
/// j > rank(dphi).
StrainData strain_invariants(const FieldJet& jet);

/// Invariants for an explicit inverse metric, used when differentiating
/// with respect to g^{-1}.
Vector strain_sigmas(const Matrix& inverse_metric, const Matrix& pullback, int rank);

/// Oracle path: sigma_j through power sums and Newton's identities.
Vector newton_sigma_oracle(const Matrix& strain);

enum class FrameKind { Generic, DegenerateKernel };

struct AdaptedFrame {
  FrameKind kind = FrameKind::Generic;
  Matrix vectors;     // columns e_0..e_m, empty for DegenerateKernel
  Vector lambdas_sq;  // (phi^* h)(e_i, e_i)
};

/// g-orthonormal frame diagonalizing phi^* h. A frame with no timelike
/// eigenvector of D^phi (null kernel, Jordan block, complex pair) is tagged
/// DegenerateKernel and not constructed.
AdaptedFrame adapted_frame(const FieldJet& jet, double tol = 1e-8);

enum class CausalCharacter { Timelike, Null, Spacelike };

CausalCharacter causal_character(const BaseMetric& g, const Vector& v, double tol = 1e-12);

const char* to_string(CausalCharacter c);
const char* to_string(FrameKind k);

}  // namespace hyperlab
