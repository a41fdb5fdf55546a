#include <doctest.h>

#include <random>

#include "hyperlab/case_studies.hpp"
#include "hyperlab/stress_energy.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

namespace {

FieldJet oracle_jet(std::mt19937_64& rng, int nb, int nt) {
  return FieldJet(BaseMetric(oracle::random_lorentzian(rng, nb)), TargetMetric(oracle::random_spd(rng, nt)),
                  oracle::random_matrix(rng, nb, nt));
}

}  // namespace

TEST_CASE("closed-form sigma_1 and sigma_2 stresses") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const FieldJet jet = oracle_jet(rng, 4, 3);
    const Matrix p = jet.dphi() * jet.h().components() * jet.dphi().transpose();
    const Matrix& g = jet.g().components();
    const Matrix t1 = oracle::t_sigma1(g, p), t2 = oracle::t_sigma2(g, p);
    CHECK((stress_energy_sigma(jet, 1).components - t1).norm() <= 1e-10 * (1 + t1.norm()));
    CHECK((stress_energy_sigma(jet, 2).components - t2).norm() <= 1e-10 * (1 + t2.norm()));
    CHECK((stress_energy_fd(sigma_model(2), jet).components - t2).norm() <= 1e-6 * (1 + t2.norm()));
  }
}

TEST_CASE("chain rule against finite differences") {
  std::mt19937_64 rng(11);
  const LagrangianModel models_[] = {models::Skyrme{0.5, 0.5}, models::BornInfeld{2.0}, models::Fluid{3, 2.0, 0.5},
                                     models::Membrane{}};
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const FieldJet jet = oracle_jet(rng, 4, 3).with_dphi(oracle::random_matrix(rng, 4, 3, 0.4));
    for (const auto& m : models_) {
      if (!m.in_domain(0.0, strain_invariants(jet).sigmas.tail(4))) continue;
      const Matrix exact = stress_energy(m, jet).components;
      const Matrix fd = stress_energy_fd(m, jet).components;
      CHECK((exact - fd).norm() <= 1e-6 * (1 + exact.norm()));
      ++compared;
    }
  }
  CHECK(compared > 150);
}

TEST_CASE("stress-energy is symmetric and vanishes at zero dphi") {
  std::mt19937_64 rng(12);
  const FieldJet jet = oracle_jet(rng, 3, 2);
  const Matrix t = stress_energy(models::Skyrme{}, jet).components;
  CHECK((t - t.transpose()).cwiseAbs().maxCoeff() < 1e-12 * t.norm());
  const FieldJet zero = jet.with_dphi(Matrix::Zero(3, 2));
  CHECK(stress_energy(models::Skyrme{}, zero).components.norm() == 0.0);
}

TEST_CASE("dominant energy on a hand-built stress") {
  const BaseMetric g = BaseMetric::minkowski(4);
  // dust: T = rho dt dt
  StressEnergy dust{Matrix::Zero(4, 4)};
  dust.components(0, 0) = 2.0;
  CHECK(check_dec(dust, g, 200, 1).holds);
  // negative energy density
  StressEnergy neg{-dust.components};
  const DecReport r = check_dec(neg, g, 200, 1);
  CHECK_FALSE(r.holds);
  CHECK(r.witness.size() == 4);
  // pressure exceeding density: flux becomes spacelike
  StressEnergy stiff{Matrix::Identity(4, 4) * 3.0};
  stiff.components(0, 0) = 1.0;
  CHECK_FALSE(check_dec(stiff, g, 200, 1).holds);
}

TEST_CASE("sufficient conditions on sigma_1 and a convex counterexample") {
  ProbeBox box;
  box.sigmas.assign(4, {-1.0, 1.0});
  const SufficientConditionReport ok = check_sufficient_conditions(sigma_model(1), box, 200);
  CHECK(ok.nondecreasing);
  CHECK(ok.concave);
  CHECK(ok.nonneg_at_zero);
  models::Custom c;
  c.value = [](double, const Vector& s) { return s(0) + s(0) * s(0); };
  const SufficientConditionReport bad = check_sufficient_conditions(c, box, 200);
  CHECK_FALSE(bad.concave);
}

TEST_CASE("vanishing above the rank") {
  std::mt19937_64 rng(13);
  for (int rank = 0; rank <= 2; ++rank) {
    const FieldJet jet = random_low_rank_jet(rng, 4, 3, rank);
    for (int j = rank + 1; j <= 4; ++j) CHECK(stress_energy_sigma(jet, j).components.norm() < 1e-10 * (1 + std::pow(jet.dphi().norm(), 2 * j)));
  }
}
