#include <doctest.h>

#include <random>

#include "hyperlab/tensor_core.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

TEST_CASE("faddeev-leverrier matches the eigenvalue oracle") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix a = oracle::random_matrix(rng, n, n);
    const Vector fl = faddeev_leverrier_sigmas(a);
    const Vector ev = oracle::sigmas_from_eigenvalues(a);
    const double scale = std::max(1.0, std::pow(a.norm(), n));
    CHECK((fl - ev).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    CHECK((fl - newton_sigmas(a)).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("sigmas of a diagonal strain") {
  const Matrix d = (Vector(4) << -2.25, 0.25, 4.0, 0.0).finished().asDiagonal();
  const Vector s = faddeev_leverrier_sigmas(d);
  // e1 = 2, e2 = -0.5625 - 9 + 1 = -8.5625, e3 = -2.25
  CHECK(s(1) == doctest::Approx(2.0));
  CHECK(s(2) == doctest::Approx(-8.5625));
  CHECK(s(3) == doctest::Approx(-2.25));
  CHECK(s(4) == doctest::Approx(0.0));
}

TEST_CASE("metric validation") {
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = bad(1, 1) = -1.0;
  CHECK_THROWS_WITH_AS(BaseMetric{bad}, "metric not Lorentzian", InvalidInput);
  CHECK_THROWS_AS(BaseMetric{Matrix::Identity(3, 3)}, InvalidInput);
  Matrix asym = BaseMetric::minkowski(3).components();
  asym(0, 1) = 0.3;
  CHECK_THROWS_AS(BaseMetric{asym}, InvalidInput);
  CHECK_THROWS_AS(TargetMetric{-Matrix::Identity(2, 2)}, InvalidInput);
  CHECK_THROWS_AS(FieldJet(BaseMetric::minkowski(3), TargetMetric::identity(2), Matrix::Zero(2, 2)), InvalidInput);
}

TEST_CASE("orthonormal frame of a random Lorentzian metric") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const BaseMetric g(oracle::random_lorentzian(rng, 4));
    const Matrix f = g.orthonormal_frame();
    Matrix eta = Matrix::Identity(4, 4);
    eta(0, 0) = -1;
    CHECK((f.transpose() * g.components() * f - eta).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((g.inverse() * g.components() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("rank truncation of the invariants") {
  std::mt19937_64 rng(3);
  const Matrix dphi = oracle::random_matrix(rng, 4, 1) * oracle::random_matrix(rng, 1, 3);
  const FieldJet jet(BaseMetric::minkowski(4), TargetMetric::identity(3), dphi);
  const StrainData sd = strain_invariants(jet);
  CHECK(sd.rank == 1);
  CHECK(sd.sigmas(2) == 0.0);
  CHECK(sd.sigmas(3) == 0.0);
  CHECK(sd.sigmas(1) == doctest::Approx(sd.strain.trace()));
}

TEST_CASE("adapted frame diagonalizes the pullback") {
  Matrix dphi = Matrix::Zero(4, 3);
  dphi(0, 0) = 1.5;
  dphi(1, 1) = 0.5;
  dphi(2, 2) = 2.0;
  const FieldJet jet(BaseMetric::minkowski(4), TargetMetric::identity(3), dphi);
  const AdaptedFrame f = adapted_frame(jet);
  REQUIRE(f.kind == FrameKind::Generic);
  CHECK(f.lambdas_sq(0) == doctest::Approx(2.25));
  CHECK(f.lambdas_sq(1) == doctest::Approx(0.25));
  CHECK(f.lambdas_sq(2) == doctest::Approx(4.0));
  CHECK(f.lambdas_sq(3) == doctest::Approx(0.0));
  CHECK(std::abs(f.vectors(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("null kernel gives a degenerate frame") {
  // d phi = dt + dx on a scalar target: pullback (1,1;1,1), null strain direction
  Matrix dphi = Matrix::Zero(2, 1);
  dphi(0, 0) = 1.0;
  dphi(1, 0) = 1.0;
  const FieldJet jet(BaseMetric::minkowski(2), TargetMetric::identity(1), dphi);
  CHECK(adapted_frame(jet).kind == FrameKind::DegenerateKernel);
}

TEST_CASE("causal character") {
  const BaseMetric g = BaseMetric::minkowski(3);
  CHECK(causal_character(g, Vector::Unit(3, 0)) == CausalCharacter::Timelike);
  CHECK(causal_character(g, Vector::Unit(3, 1)) == CausalCharacter::Spacelike);
  CHECK(causal_character(g, (Vector(3) << 1, 1, 0).finished()) == CausalCharacter::Null);
  CHECK_THROWS_AS(causal_character(g, Vector::Zero(3)), ZeroVector);
}

TEST_CASE("numeric rank") {
  CHECK(numeric_rank(Matrix::Zero(3, 2)) == 0);
  CHECK(numeric_rank(Matrix::Identity(3, 2)) == 2);
}
