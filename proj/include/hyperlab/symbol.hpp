#pragma once

// Principal symbol m^{ab}_{AB}, Z-tensor and canonical stresses.

#include <vector>

#include "hyperlab/lagrangian.hpp"

namespace hyperlab {

/// m^{ab}_{AB} held as an (N n) x (N n) matrix, row a*n + A, column b*n + B,
/// with N = m+1 base and n target dimensions. Both target indices are down.
class PrincipalSymbol {
 public:
  PrincipalSymbol() = default;
  /// Symmetrizes in (ab) and in (AB).
  PrincipalSymbol(int base_dim, int target_dim, Matrix blocks);

  int base_dim() const { return base_dim_; }
  int target_dim() const { return target_dim_; }
  const Matrix& blocks() const { return blocks_; }

  double operator()(int a, int b, int A, int B) const {
    return blocks_(a * target_dim_ + A, b * target_dim_ + B);
  }

  /// Largest |eigenvalue| of the block matrix; the scale for tolerances.
  double norm() const;

  PrincipalSymbol scaled(double c) const { return PrincipalSymbol(base_dim_, target_dim_, c * blocks_); }

 private:
  int base_dim_ = 0;
  int target_dim_ = 0;
  Matrix blocks_;
};

/// Second central-difference Hessian of L in the entries of dphi, step
/// 1e-4 max(1, |dphi|). Reference path for every symbol.
PrincipalSymbol principal_symbol_fd(const LagrangianModel& model, const FieldJet& jet);

/// Closed form for L = c1 sigma_1 + c2 sigma_2 (+ s):
///   2 c1 g^{ab} h_AB + 2 c2 [ sigma_1 g^{ab} h_AB + d^(a phi_A d^b) phi_B
///                             - g^{ab} g^{cd} d_c phi_A d_d phi_B - h_AB (phi^* h)^{ab} ]
PrincipalSymbol skyrme_symbol(const FieldJet& jet, double c1 = 0.5, double c2 = 0.5);

/// c g^{ab} h_AB, the symbol of a semilinear wave map scaled by c/2.
PrincipalSymbol semilinear_symbol(const Matrix& inverse_metric, const Matrix& h, double c = 2.0);

/// Scalar-target symbol from a symmetric N x N coefficient matrix.
PrincipalSymbol scalar_symbol(const Matrix& coefficients);

/// m^{ab}_{AB} xi_a eta_b.
Matrix contract_symbol(const PrincipalSymbol& sym, const Vector& xi, const Vector& eta);

/// Z^{ab}_{AB}|^c_d = m^{ab}_{AB} delta^c_d - m^{cb}_{AB} delta^a_d - m^{ac}_{AB} delta^b_d.
class ZTensor {
 public:
  ZTensor(int base_dim, int target_dim);

  int base_dim() const { return base_dim_; }
  int target_dim() const { return target_dim_; }

  double& operator()(int a, int b, int A, int B, int c, int d) { return data_[index(a, b, A, B, c, d)]; }
  double operator()(int a, int b, int A, int B, int c, int d) const { return data_[index(a, b, A, B, c, d)]; }

 private:
  std::size_t index(int a, int b, int A, int B, int c, int d) const {
    const std::size_t nb = base_dim_, nt = target_dim_;
    return ((((a * nb + b) * nt + A) * nt + B) * nb + c) * nb + d;
  }

  int base_dim_;
  int target_dim_;
  std::vector<double> data_;
};

ZTensor z_tensor(const PrincipalSymbol& sym);

/// Q^c_d with rows c (up) and columns d (down).
struct CanonicalStress {
  Matrix components;
};

/// Q[psi]^c_d = -Z^{ab}_{AB}|^c_d d_a psi^A d_b psi^B, evaluated directly as
/// -(m psi psi) delta^c_d + 2 m^{cb}_{AB} d_d psi^A d_b psi^B.
CanonicalStress canonical_stress_linearized(const PrincipalSymbol& sym, const Matrix& dpsi);

/// Same quantity by contracting an assembled Z-tensor.
CanonicalStress canonical_stress_from_z(const ZTensor& z, const Matrix& dpsi);

/// Noether form (dL/d(d_c phi^A)) d_d phi^A - delta^c_d L, with the momentum
/// by central differences.
CanonicalStress canonical_stress_noether(const LagrangianModel& model, const FieldJet& jet);

/// E = -Q^c_d X^d t_c. Positive (psi_t^2 + psi_x^2) for the 1+1 wave
/// equation with X = d_t, t = dt. Requires t(X) > 0.
double energy_density(const PrincipalSymbol& sym, const Matrix& dpsi, const Vector& t_covector, const Vector& x);

}  // namespace hyperlab
