#include <doctest.h>

#include <random>

#include "hyperlab/case_studies.hpp"
#include "hyperlab/symbol.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

TEST_CASE("skyrme m33 in the adapted frame") {
  // by hand: m33 is diagonal with entries 1 + sigma_1 - g^{cc} lambda_c^2, sigma_1 = 2
  const Vector l = (Vector(4) << 1.5, 0.5, 2.0, 0.0).finished();
  const Vector f3 = Vector::Unit(4, 3);
  const Matrix m = contract_symbol(skyrme_symbol(adapted_frame_jet(l, 4)), f3, f3);
  const Vector expected = (Vector(4) << 5.25, 2.75, -1.0, 3.0).finished();
  CHECK((m - Matrix(expected.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed-form skyrme symbol matches the FD Hessian") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 40; ++trial) {
    const FieldJet jet(BaseMetric(oracle::random_lorentzian(rng, 4)), TargetMetric(oracle::random_spd(rng, 3)),
                       oracle::random_matrix(rng, 4, 3));
    const PrincipalSymbol a = skyrme_symbol(jet, 0.3, 0.7);
    const PrincipalSymbol b = principal_symbol_fd(models::Skyrme{0.3, 0.7}, jet);
    CHECK((a.blocks() - b.blocks()).cwiseAbs().maxCoeff() <= 1e-6 * a.norm());
  }
}

TEST_CASE("symbol symmetries") {
  std::mt19937_64 rng(21);
  const FieldJet jet(BaseMetric(oracle::random_lorentzian(rng, 3)), TargetMetric(oracle::random_spd(rng, 2)),
                     oracle::random_matrix(rng, 3, 2));
  const PrincipalSymbol s = principal_symbol_fd(models::BornInfeld{2.0}, jet);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
          CHECK(s(a, b, A, B) == doctest::Approx(s(b, a, A, B)));
          CHECK(s(a, b, A, B) == doctest::Approx(s(a, b, B, A)));
        }
  const Vector xi = oracle::random_matrix(rng, 3, 1).col(0), eta = oracle::random_matrix(rng, 3, 1).col(0);
  CHECK((contract_symbol(s, xi, eta) - contract_symbol(s, eta, xi)).norm() < 1e-12 * s.norm());
  CHECK(s.scaled(2.0).norm() == doctest::Approx(2.0 * s.norm()));
}

TEST_CASE("semilinear symbol is c g^{-1} h") {
  const Matrix gi = BaseMetric::minkowski(3).inverse();
  const Matrix h = (Matrix(2, 2) << 2, 0.5, 0.5, 1).finished();
  const PrincipalSymbol s = semilinear_symbol(gi, h, 3.0);
  const Vector xi = (Vector(3) << 1, 0.2, -0.4).finished();
  const Matrix m = contract_symbol(s, xi, xi);
  CHECK((m - 3.0 * xi.dot(gi * xi) * h).cwiseAbs().maxCoeff() < 1e-12);
  // the wave map's symbol (L = sigma_1) is the c = 2 case
  const FieldJet jet(BaseMetric::minkowski(3), TargetMetric(h), Matrix::Zero(3, 2));
  CHECK((principal_symbol_fd(sigma_model(1), jet).blocks() - semilinear_symbol(gi, h).blocks()).cwiseAbs().maxCoeff() <
        1e-6);
}

TEST_CASE("Z-tensor and direct canonical stress agree") {
  std::mt19937_64 rng(22);
  const FieldJet jet(BaseMetric(oracle::random_lorentzian(rng, 3)), TargetMetric(oracle::random_spd(rng, 2)),
                     oracle::random_matrix(rng, 3, 2));
  const PrincipalSymbol s = skyrme_symbol(jet);
  const Matrix dpsi = oracle::random_matrix(rng, 3, 2);
  const Matrix direct = canonical_stress_linearized(s, dpsi).components;
  const Matrix viaz = canonical_stress_from_z(z_tensor(s), dpsi).components;
  CHECK((direct - viaz).norm() < 1e-12 * (1 + direct.norm()));
}

TEST_CASE("wave-equation energy density") {
  // m = g^{-1} on 1+1: E = psi_t^2 + psi_x^2
  const PrincipalSymbol s = scalar_symbol(BaseMetric::minkowski(2).inverse());
  const Matrix dpsi = (Matrix(2, 1) << 0.3, -1.2).finished();
  const Vector dt = Vector::Unit(2, 0), x = Vector::Unit(2, 0);
  CHECK(energy_density(s, dpsi, dt, x) == doctest::Approx(0.09 + 1.44));
  CHECK_THROWS_AS(energy_density(s, dpsi, dt, -x), InvalidInput);
}

TEST_CASE("Noether stress at j = 1 is twice the mixed stress-energy") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldJet jet(BaseMetric(oracle::random_lorentzian(rng, 4)), TargetMetric(oracle::random_spd(rng, 3)),
                       oracle::random_matrix(rng, 4, 3));
    const Matrix q = canonical_stress_noether(sigma_model(1), jet).components;
    const Matrix p = jet.dphi() * jet.h().components() * jet.dphi().transpose();
    const Matrix ref = 2.0 * jet.g().inverse() * oracle::t_sigma1(jet.g().components(), p);
    CHECK((q - ref).norm() <= 1e-8 * ref.norm());
  }
}
