#include <doctest.h>

#include <random>

#include "hyperlab/case_studies.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

namespace {

SearchConfig quick() {
  SearchConfig s;
  s.n_dirs = 512;
  s.n_spatial = 32;
  return s;
}

Vector lam(double a, double b, double c, double d) { return (Vector(4) << a, b, c, d).finished(); }

}  // namespace

TEST_CASE("skyrme regime predictions") {
  CHECK(skyrme_predict(lam(0, 1, 2, 0)).predicted == SkyrmeRegimeKind::TimelikeKernel);
  CHECK(skyrme_predict(lam(0.5, 1, 2, 0)).predicted == SkyrmeRegimeKind::SubcriticalEigenvalue);
  CHECK(skyrme_predict(lam(1.5, 0.5, 2, 0)).predicted == SkyrmeRegimeKind::Breakdown);
  CHECK(skyrme_predict(lam(1, 0.5, 2, 0)).predicted == SkyrmeRegimeKind::Marginal);
  CHECK(skyrme_predict(lam(1.5, 0.5, 2, 0), 1.0, 0.25).predicted == SkyrmeRegimeKind::SubcriticalEigenvalue);
  CHECK_THROWS_AS(skyrme_predict(lam(1, 1, 1, 1)), RankConstraintViolation);
  CHECK_THROWS_AS(adapted_frame_jet(lam(1, 1, 1, 1)), RankConstraintViolation);
  CHECK_THROWS_AS(skyrme_predict(lam(1, 0, 0, 0), -1.0), InvalidInput);
  CHECK(expected_verdict(SkyrmeRegimeKind::Breakdown) == Verdict::UltrahyperbolicType);
  CHECK_FALSE(expected_verdict(SkyrmeRegimeKind::Marginal).has_value());
}

TEST_CASE("jet-based prediction reads the adapted frame") {
  const FieldJet jet = adapted_frame_jet(lam(1.5, 0.5, 2, 0));
  CHECK(skyrme_predict(jet).predicted == SkyrmeRegimeKind::Breakdown);
  // d phi^0 = dt + dx: null kernel of the strain
  Matrix dphi = Matrix::Zero(4, 3);
  dphi(0, 0) = dphi(1, 0) = 1.0;
  const FieldJet null_jet(BaseMetric::minkowski(4), TargetMetric::identity(3), dphi);
  CHECK(skyrme_predict(null_jet).predicted == SkyrmeRegimeKind::DegenerateKernel);
}

TEST_CASE("classified skyrme points agree with the predictions") {
  for (const Vector& l : {lam(0, 1, 2, 0), lam(0.5, 1.5, 0, 0), lam(1.5, 0.5, 2, 0), lam(3, 2, 0, 0)}) {
    const SkyrmePoint p = skyrme_classify_point(l, 0.5, 0.5, quick());
    CHECK_FALSE(p.excluded);
    CHECK(p.agrees);
  }
}

TEST_CASE("counterexample quantities") {
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, quick());
  CHECK(r.m00 == Definiteness::NegDef);
  CHECK(r.observer.positive);
  CHECK(std::abs(r.tilde_contraction) < 1e-14);
  // d_t psi = 0, so E reduces to m(dpsi, dpsi) = 0 - eps |dpsi|^2 = -2 eps
  CHECK(r.energy_density == doctest::Approx(-0.02).epsilon(1e-12));
  CHECK_THROWS_AS(constant_coefficient_counterexample(10.0, quick()), EpsilonTooLarge);
  CHECK_THROWS_AS(constant_coefficient_counterexample(-1.0, quick()), InvalidInput);
}

TEST_CASE("tachyonic fluid") {
  const TachyonicReport r = tachyonic_fluid_demo(2.0, quick(), 100);
  // strain diag(-1, 1, 1, 0)
  CHECK((r.sigmas - lam(1, -1, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.dec.holds);
  CHECK(r.classification.verdict != Verdict::RegularlyHyperbolic);
  CHECK_THROWS_AS(tachyonic_fluid_demo(0.5, quick()), DomainError);
}

TEST_CASE("power-law fluid causality windows") {
  // L = s^p: 2 s L'' = 2 (p - 1) L', so concave iff p < 1 and hyperbolic iff p > 1/2
  for (double p : {0.3, 0.5, 0.6, 0.75, 0.9, 1.0, 1.4}) {
    const FluidCausality fc = fluid_causality_check(models::Fluid{3, 0.0, p}, 3, 1.7);
    CHECK(fc.concave_ok == (p < 1.0));
    CHECK(fc.hyperbolic_ok == (p > 0.5));
    CHECK(fc.marginal == (p == 0.5));
  }
  CHECK_THROWS_AS(fluid_causality_check(models::Fluid{3, 0.0, 0.7}, 3, -1.0), DomainError);
}

TEST_CASE("canonical stresses at j = 1 fit 2 and 4 times the mixed T") {
  std::mt19937_64 rng(50);
  std::vector<FieldJet> jets;
  for (int i = 0; i < 20; ++i) jets.push_back(random_jet(rng, 4, 3));
  const StressEquivalence se = stress_equivalence(1, jets);
  CHECK(se.jets == 20);
  CHECK(se.noether_ratio == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(se.z_ratio == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(se.noether_residual < 1e-6);
  CHECK(se.z_residual < 1e-6);
}

TEST_CASE("random jets are well formed") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 20; ++i) {
    const FieldJet jet = random_low_rank_jet(rng, 4, 3, 1 + i % 3);
    CHECK(numeric_rank(jet.dphi()) == 1 + i % 3);
    const Vector sv = Eigen::JacobiSVD<Matrix>(jet.g().orthonormal_frame()).singularValues();
    CHECK(sv(0) / sv(sv.size() - 1) <= 10.0 + 1e-9);
  }
}

TEST_CASE("small DEC suite") {
  for (const DecSuiteEntry& e : dec_suite(20, 9)) {
    CHECK(e.jets > 0);
    CHECK(e.passed == e.jets);
  }
}
