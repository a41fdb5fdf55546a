#include "hyperlab/symbol.hpp"

#include <cmath>

namespace hyperlab {

PrincipalSymbol::PrincipalSymbol(int base_dim, int target_dim, Matrix blocks)
    : base_dim_(base_dim), target_dim_(target_dim), blocks_(std::move(blocks)) {
  const int k = base_dim * target_dim;
  if (blocks_.rows() != k || blocks_.cols() != k) throw InvalidInput("symbol block matrix has wrong size");
  Matrix sym(k, k);
  for (int a = 0; a < base_dim; ++a)
    for (int b = 0; b < base_dim; ++b)
      for (int A = 0; A < target_dim; ++A)
        for (int B = 0; B < target_dim; ++B) {
          auto at = [&](int x, int y, int X, int Y) { return blocks_(x * target_dim + X, y * target_dim + Y); };
          sym(a * target_dim + A, b * target_dim + B) =
              0.25 * (at(a, b, A, B) + at(b, a, A, B) + at(a, b, B, A) + at(b, a, B, A));
        }
  blocks_ = std::move(sym);
}

double PrincipalSymbol::norm() const {
  if (blocks_.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(blocks_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

PrincipalSymbol principal_symbol_fd(const LagrangianModel& model, const FieldJet& jet) {
  const int nb = jet.base_dim();
  const int nt = jet.target_dim();
  const int k = nb * nt;
  const Matrix& base = jet.dphi();
  const double h = 1e-4 * std::max(1.0, base.norm());

  auto f = [&](int i, double di, int j, double dj) {
    Matrix x = base;
    x(i / nt, i % nt) += di;
    x(j / nt, j % nt) += dj;
    return lagrangian_value(model, jet.with_dphi(std::move(x)));
  };

  const double f0 = lagrangian_value(model, jet);
  Matrix hess(k, k);
  for (int i = 0; i < k; ++i) {
    hess(i, i) = (f(i, h, i, 0) - 2 * f0 + f(i, -h, i, 0)) / (h * h);
    for (int j = i + 1; j < k; ++j) {
      hess(i, j) = hess(j, i) = (f(i, h, j, h) - f(i, h, j, -h) - f(i, -h, j, h) + f(i, -h, j, -h)) / (4 * h * h);
    }
  }
  return PrincipalSymbol(nb, nt, std::move(hess));
}

PrincipalSymbol skyrme_symbol(const FieldJet& jet, double c1, double c2) {
  const int nb = jet.base_dim();
  const int nt = jet.target_dim();
  const Matrix& ginv = jet.g().inverse();
  const Matrix& h = jet.h().components();
  const Matrix lowered = jet.dphi() * h;           // d_c phi_A
  const Matrix raised = ginv * lowered;            // d^a phi_A
  const Matrix k = lowered.transpose() * raised;   // g^{cd} d_c phi_A d_d phi_B
  const Matrix p = pullback_metric(jet);
  const Matrix w = ginv * p * ginv;                // (phi^* h)^{ab}
  const double sigma1 = (ginv * p).trace();

  Matrix blocks(nb * nt, nb * nt);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int A = 0; A < nt; ++A)
        for (int B = 0; B < nt; ++B) {
          const double quartic = sigma1 * ginv(a, b) * h(A, B) +
                                 0.5 * (raised(a, A) * raised(b, B) + raised(b, A) * raised(a, B)) -
                                 ginv(a, b) * k(A, B) - h(A, B) * w(a, b);
          blocks(a * nt + A, b * nt + B) = 2 * c1 * ginv(a, b) * h(A, B) + 2 * c2 * quartic;
        }
  return PrincipalSymbol(nb, nt, std::move(blocks));
}

PrincipalSymbol semilinear_symbol(const Matrix& inverse_metric, const Matrix& h, double c) {
  const int nb = static_cast<int>(inverse_metric.rows());
  const int nt = static_cast<int>(h.rows());
  Matrix blocks(nb * nt, nb * nt);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) blocks.block(a * nt, b * nt, nt, nt) = c * inverse_metric(a, b) * h;
  return PrincipalSymbol(nb, nt, std::move(blocks));
}

PrincipalSymbol scalar_symbol(const Matrix& coefficients) {
  return PrincipalSymbol(static_cast<int>(coefficients.rows()), 1, coefficients);
}

Matrix contract_symbol(const PrincipalSymbol& sym, const Vector& xi, const Vector& eta) {
  const int nb = sym.base_dim();
  const int nt = sym.target_dim();
  if (xi.size() != nb || eta.size() != nb) throw InvalidInput("covector dimension mismatch");
  Matrix out = Matrix::Zero(nt, nt);
  for (int a = 0; a < nb; ++a) {
    if (xi(a) == 0.0) continue;
    for (int b = 0; b < nb; ++b) {
      if (eta(b) == 0.0) continue;
      out += xi(a) * eta(b) * sym.blocks().block(a * nt, b * nt, nt, nt);
    }
  }
  return out;
}

ZTensor::ZTensor(int base_dim, int target_dim)
    : base_dim_(base_dim),
      target_dim_(target_dim),
      data_(static_cast<std::size_t>(base_dim) * base_dim * base_dim * base_dim * target_dim * target_dim, 0.0) {}

ZTensor z_tensor(const PrincipalSymbol& sym) {
  const int nb = sym.base_dim();
  const int nt = sym.target_dim();
  ZTensor z(nb, nt);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int A = 0; A < nt; ++A)
        for (int B = 0; B < nt; ++B)
          for (int c = 0; c < nb; ++c)
            for (int d = 0; d < nb; ++d) {
              double v = 0.0;
              if (c == d) v += sym(a, b, A, B);
              if (a == d) v -= sym(c, b, A, B);
              if (b == d) v -= sym(a, c, A, B);
              z(a, b, A, B, c, d) = v;
            }
  return z;
}

CanonicalStress canonical_stress_linearized(const PrincipalSymbol& sym, const Matrix& dpsi) {
  const int nb = sym.base_dim();
  const int nt = sym.target_dim();
  if (dpsi.rows() != nb || dpsi.cols() != nt) throw InvalidInput("dpsi must be (m+1) x n");
  Vector flat(nb * nt);
  for (int a = 0; a < nb; ++a)
    for (int A = 0; A < nt; ++A) flat(a * nt + A) = dpsi(a, A);
  const Vector mpsi = sym.blocks() * flat;  // m^{cb}_{AB} d_b psi^B, row c*n + A
  const double q = flat.dot(mpsi);

  Matrix out = -q * Matrix::Identity(nb, nb);
  for (int c = 0; c < nb; ++c)
    for (int d = 0; d < nb; ++d) out(c, d) += 2 * dpsi.row(d).dot(mpsi.segment(c * nt, nt));
  return {out};
}

CanonicalStress canonical_stress_from_z(const ZTensor& z, const Matrix& dpsi) {
  const int nb = z.base_dim();
  const int nt = z.target_dim();
  if (dpsi.rows() != nb || dpsi.cols() != nt) throw InvalidInput("dpsi must be (m+1) x n");
  Matrix out = Matrix::Zero(nb, nb);
  for (int c = 0; c < nb; ++c)
    for (int d = 0; d < nb; ++d) {
      double acc = 0.0;
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b)
          for (int A = 0; A < nt; ++A)
            for (int B = 0; B < nt; ++B) acc += z(a, b, A, B, c, d) * dpsi(a, A) * dpsi(b, B);
      out(c, d) = -acc;
    }
  return {out};
}

CanonicalStress canonical_stress_noether(const LagrangianModel& model, const FieldJet& jet) {
  const int nb = jet.base_dim();
  const int nt = jet.target_dim();
  const Matrix& base = jet.dphi();
  const double h = 1e-5 * std::max(1.0, base.norm());
  Matrix momentum(nb, nt);
  for (int c = 0; c < nb; ++c)
    for (int A = 0; A < nt; ++A) {
      Matrix up = base, dn = base;
      up(c, A) += h;
      dn(c, A) -= h;
      momentum(c, A) =
          (lagrangian_value(model, jet.with_dphi(std::move(up))) - lagrangian_value(model, jet.with_dphi(std::move(dn)))) /
          (2 * h);
    }
  const double l = lagrangian_value(model, jet);
  return {momentum * base.transpose() - l * Matrix::Identity(nb, nb)};
}

double energy_density(const PrincipalSymbol& sym, const Matrix& dpsi, const Vector& t_covector, const Vector& x) {
  if (!(t_covector.dot(x) > 0)) throw InvalidInput("energy_density requires t(X) > 0");
  const CanonicalStress q = canonical_stress_linearized(sym, dpsi);
  return -t_covector.dot(q.components * x);
}

}  // namespace hyperlab
