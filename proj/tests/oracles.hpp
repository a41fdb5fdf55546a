#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's algebra.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Elementary symmetric polynomials of the (complex) eigenvalues.
inline Vector sigmas_from_eigenvalues(const Matrix& a) {
  const Eigen::Index n = a.rows();
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix>(a, false).eigenvalues();
  std::vector<std::complex<double>> e(static_cast<std::size_t>(n + 1), 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k >= 1; --k) e[k] += e[k - 1] * ev(i);
  Vector out(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) out(k) = e[k].real();
  return out;
}

// L = sigma_1:  T = P - sigma_1 g / 2.
inline Matrix t_sigma1(const Matrix& g, const Matrix& p) {
  const double s1 = (g.inverse() * p).trace();
  return p - 0.5 * s1 * g;
}

// L = sigma_2 = (tr(D)^2 - tr(D^2)) / 2:  dL/dg^{ab} = s1 P - P g^{-1} P.
inline Matrix t_sigma2(const Matrix& g, const Matrix& p) {
  const Matrix gi = g.inverse();
  const Matrix d = gi * p;
  const double s1 = d.trace();
  const double s2 = 0.5 * (s1 * s1 - (d * d).trace());
  return s1 * p - p * gi * p - 0.5 * s2 * g;
}

// Roots of an ascending coefficient vector through the companion matrix.
inline Eigen::VectorXcd companion_roots(const Vector& p) {
  const Eigen::Index d = p.size() - 1;
  Matrix comp = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -p(i) / p(d);
  for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  return Eigen::EigenSolver<Matrix>(comp, false).eigenvalues();
}

// Lorentzian metric L^T eta L with a well-conditioned random L.
inline Matrix random_lorentzian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix eta = Matrix::Identity(n, n);
  eta(0, 0) = -1.0;
  while (true) {
    Matrix l = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) l(i, k) += 0.25 * normal(rng);
    const Vector sv = Eigen::JacobiSVD<Matrix>(l).singularValues();
    if (sv(n - 1) * 5.0 < sv(0)) continue;
    const Matrix g = l.transpose() * eta * l;
    return 0.5 * (g + g.transpose());
  }
}

inline Matrix random_spd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = 0.5 * normal(rng);
  return a.transpose() * a + 0.5 * Matrix::Identity(n, n);
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix a(rows, cols);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  return a;
}

// Smallest eigenvalue of a symmetric matrix.
inline double min_eig(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

inline double max_eig(const Matrix& m) {
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
  return ev(ev.size() - 1);
}

}  // namespace oracle
