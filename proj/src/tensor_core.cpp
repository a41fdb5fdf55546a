#include "hyperlab/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace hyperlab {

namespace {

constexpr double kMetricTol = 1e-12;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
}

// Index of the largest-magnitude component, used to order and orient frames.
Eigen::Index dominant_index(const Vector& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  return idx;
}

void orient(Vector& v) {
  if (v(dominant_index(v)) < 0) v = -v;
}

}  // namespace

int numeric_rank(const Matrix& dphi, double rel_tol) {
  if (dphi.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(dphi);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_tol * sv(0);
  return static_cast<int>((sv.array() > cut).count());
}

BaseMetric::BaseMetric(Matrix components) : components_(std::move(components)) {
  const auto n = components_.rows();
  if (n < 2 || components_.cols() != n) throw InvalidInput("metric must be square with dim >= 2");
  require_finite(components_, "metric");
  const double scale = components_.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw InvalidInput("metric not Lorentzian");
  if ((components_ - components_.transpose()).cwiseAbs().maxCoeff() > kMetricTol * scale) {
    throw InvalidInput("metric not symmetric");
  }
  components_ = 0.5 * (components_ + components_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(components_);
  const Vector& ev = es.eigenvalues();
  norm_ = ev.cwiseAbs().maxCoeff();
  const double cut = kMetricTol * norm_;
  const auto negative = (ev.array() < -cut).count();
  const auto positive = (ev.array() > cut).count();
  if (negative != 1 || positive != n - 1) throw InvalidInput("metric not Lorentzian");

  inverse_ = components_.partialPivLu().inverse();
  const double cond = norm_ / ev.cwiseAbs().minCoeff();
  const double residual = (components_ * inverse_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > kMetricTol * std::max(1.0, cond)) throw InvalidInput("metric inverse is inaccurate");

  frame_.resize(n, n);
  std::vector<Vector> spatial;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector v = es.eigenvectors().col(i) / std::sqrt(std::abs(ev(i)));
    orient(v);
    if (i == 0) {
      frame_.col(0) = v;  // eigenvalues ascend, so the single negative one is first
    } else {
      spatial.push_back(std::move(v));
    }
  }
  std::stable_sort(spatial.begin(), spatial.end(),
                   [](const Vector& a, const Vector& b) { return dominant_index(a) < dominant_index(b); });
  for (Eigen::Index i = 1; i < n; ++i) frame_.col(i) = spatial[i - 1];
}

BaseMetric BaseMetric::minkowski(int dim) {
  Matrix g = Matrix::Identity(dim, dim);
  g(0, 0) = -1.0;
  return BaseMetric(std::move(g));
}

TargetMetric::TargetMetric(Matrix components) : components_(std::move(components)) {
  const auto n = components_.rows();
  if (n < 1 || components_.cols() != n) throw InvalidInput("target metric must be square with dim >= 1");
  require_finite(components_, "target metric");
  const double scale = components_.cwiseAbs().maxCoeff();
  if ((components_ - components_.transpose()).cwiseAbs().maxCoeff() > kMetricTol * scale) {
    throw InvalidInput("target metric not symmetric");
  }
  components_ = 0.5 * (components_ + components_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(components_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= kMetricTol * scale) {
    throw InvalidInput("target metric not positive definite");
  }
}

TargetMetric TargetMetric::identity(int dim) { return TargetMetric(Matrix::Identity(dim, dim)); }

FieldJet::FieldJet(BaseMetric g, TargetMetric h, Matrix dphi, double s)
    : g_(std::move(g)), h_(std::move(h)), dphi_(std::move(dphi)), s_(s) {
  if (dphi_.rows() != g_.dim() || dphi_.cols() != h_.dim()) {
    throw InvalidInput("dphi must be (m+1) x n");
  }
  require_finite(dphi_, "dphi");
  if (!std::isfinite(s_) || s_ < 0.0) throw InvalidInput("s must be a finite nonnegative scalar");
}

Matrix pullback_metric(const FieldJet& jet) {
  Matrix p = pullback(jet.dphi(), jet.h().components());
  return 0.5 * (p + p.transpose());
}

Vector strain_sigmas(const Matrix& inverse_metric, const Matrix& pullback, int rank) {
  Vector sigmas = faddeev_leverrier_sigmas(inverse_metric * pullback);
  for (Eigen::Index j = rank + 1; j < sigmas.size(); ++j) sigmas(j) = 0.0;
  return sigmas;
}

StrainData strain_invariants(const FieldJet& jet) {
  StrainData out;
  out.pullback = pullback_metric(jet);
  out.strain = jet.g().inverse() * out.pullback;
  out.rank = numeric_rank(jet.dphi());
  out.sigmas = strain_sigmas(jet.g().inverse(), out.pullback, out.rank);
  return out;
}

Vector newton_sigma_oracle(const Matrix& strain) { return newton_sigmas(strain); }

AdaptedFrame adapted_frame(const FieldJet& jet, double tol) {
  const int n = jet.base_dim();
  const Matrix& g = jet.g().components();
  const Matrix p = pullback_metric(jet);
  const Matrix d = jet.g().inverse() * p;
  const double scale = std::max(1.0, d.norm());
  const double cluster_tol = std::max(1e-6, tol) * scale;

  AdaptedFrame degenerate;
  degenerate.kind = FrameKind::DegenerateKernel;

  Eigen::EigenSolver<Matrix> es(d, /*computeEigenvectors=*/false);
  std::vector<double> values;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > cluster_tol) return degenerate;
    values.push_back(z.real());
  }
  std::sort(values.begin(), values.end());

  std::vector<std::vector<double>> clusters;
  for (double v : values) {
    if (clusters.empty() || v - clusters.back().back() > cluster_tol) clusters.emplace_back();
    clusters.back().push_back(v);
  }

  Vector timelike;
  std::vector<Vector> spacelike;
  for (const auto& cluster : clusters) {
    const double mu = std::accumulate(cluster.begin(), cluster.end(), 0.0) / cluster.size();
    Matrix shifted = d - mu * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sv(i) <= cluster_tol) null_cols.push_back(i);
    }
    if (null_cols.size() != cluster.size()) return degenerate;  // defective eigenspace

    Matrix basis(n, static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t k = 0; k < null_cols.size(); ++k) basis.col(k) = svd.matrixV().col(null_cols[k]);
    Eigen::SelfAdjointEigenSolver<Matrix> restricted(basis.transpose() * g * basis);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      const double lam = restricted.eigenvalues()(k);
      if (std::abs(lam) <= tol * jet.g().norm()) return degenerate;  // null direction in the eigenspace
      Vector e = basis * restricted.eigenvectors().col(k) / std::sqrt(std::abs(lam));
      if (lam < 0) {
        if (timelike.size() != 0) return degenerate;
        timelike = std::move(e);
      } else {
        spacelike.push_back(std::move(e));
      }
    }
  }
  if (timelike.size() == 0) return degenerate;

  // Time orientation follows the metric's own frame.
  const Vector& tau = jet.g().orthonormal_frame().col(0);
  if (timelike.dot(g * tau) > 0) timelike = -timelike;
  for (auto& e : spacelike) orient(e);

  std::vector<double> lsq(spacelike.size());
  std::vector<std::size_t> order(spacelike.size());
  for (std::size_t i = 0; i < spacelike.size(); ++i) {
    lsq[i] = spacelike[i].dot(p * spacelike[i]);
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ia = dominant_index(spacelike[a]);
    const auto ib = dominant_index(spacelike[b]);
    if (ia != ib) return ia < ib;
    return lsq[a] > lsq[b];
  });

  AdaptedFrame out;
  out.vectors.resize(n, n);
  out.vectors.col(0) = timelike;
  for (int i = 1; i < n; ++i) out.vectors.col(i) = spacelike[order[i - 1]];

  Matrix eta = Matrix::Identity(n, n);
  eta(0, 0) = -1.0;
  const Matrix gram = out.vectors.transpose() * g * out.vectors;
  const Matrix diag = out.vectors.transpose() * p * out.vectors;
  const double pscale = std::max(1.0, p.norm());
  Matrix off = diag;
  off.diagonal().setZero();
  if ((gram - eta).cwiseAbs().maxCoeff() > std::max(tol, 1e-10) * scale * 10.0 ||
      off.cwiseAbs().maxCoeff() > std::max(tol, 1e-10) * pscale * 10.0) {
    throw DefectiveFrame("adapted frame orthonormalization residual exceeds tolerance");
  }
  out.lambdas_sq = diag.diagonal().cwiseMax(0.0);
  return out;
}

CausalCharacter causal_character(const BaseMetric& g, const Vector& v, double tol) {
  const double vv = v.squaredNorm();
  if (vv == 0.0) throw ZeroVector("causal character of the zero vector");
  const double q = g(v, v);
  const double cut = tol * g.norm() * vv;
  if (q < -cut) return CausalCharacter::Timelike;
  if (q > cut) return CausalCharacter::Spacelike;
  return CausalCharacter::Null;
}

const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
    case CausalCharacter::Spacelike: return "spacelike";
  }
  return "?";
}

const char* to_string(FrameKind k) {
  return k == FrameKind::Generic ? "generic" : "degenerate-kernel";
}

}  // namespace hyperlab
