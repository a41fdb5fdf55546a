#include <doctest.h>

#include <random>

#include "hyperlab/lagrangian.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

namespace {

// central-difference gradient and Hessian of model.value as an oracle
void check_partials(const LagrangianModel& model, const Vector& sigmas, double tol) {
  const ModelEval e = model.evaluate(0.0, sigmas);
  const auto n = sigmas.size();
  const double h = 1e-5;
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector up = sigmas, dn = sigmas;
    up(j) += h;
    dn(j) -= h;
    const double fd = (model.value(0.0, up) - model.value(0.0, dn)) / (2 * h);
    CHECK(e.grad(j) == doctest::Approx(fd).epsilon(tol));
    const Vector gfd = (model.evaluate(0.0, up).grad - model.evaluate(0.0, dn).grad) / (2 * h);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(e.hessian(i, j) == doctest::Approx(gfd(i)).epsilon(tol).scale(1.0));
  }
}

}  // namespace

TEST_CASE("catalog partials agree with central differences") {
  const Vector s = (Vector(4) << 0.7, -0.3, 0.2, 0.05).finished();
  check_partials(models::Skyrme{0.5, 0.5}, s, 1e-8);
  check_partials(models::BornInfeld{2.0}, s, 1e-7);
  check_partials(models::Membrane{}, s, 1e-7);
  check_partials(models::Fluid{3, 2.0, 0.5}, s, 1e-7);
  check_partials(sigma_model(2), s, 1e-8);
}

TEST_CASE("born-infeld vanishes at zero strain and matches the determinant") {
  const LagrangianModel bi = models::BornInfeld{2.0};
  CHECK(bi.value(0.0, Vector::Zero(4)) == doctest::Approx(0.0).scale(1.0));
  // D = diag(0.5, 0.1, 0, 0): det(2 I + D) = 2.5 * 2.1 * 4
  const Vector sig = oracle::sigmas_from_eigenvalues((Vector(4) << 0.5, 0.1, 0, 0).finished().asDiagonal());
  CHECK(bi.value(0.0, sig.tail(4)) == doctest::Approx(std::sqrt(2.5 * 2.1 * 4) - 4.0));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(LagrangianModel(models::Fluid{3, 0.0, 0.5}).evaluate(0.0, Vector::Zero(4)), DomainError);
  CHECK_THROWS_AS(LagrangianModel(models::Membrane{}).evaluate(0.0, (Vector(1) << -2.0).finished()), DomainError);
  CHECK_THROWS_AS(LagrangianModel(models::BornInfeld{1.0}).evaluate(0.0, (Vector(2) << -3.0, 0.0).finished()),
                  DomainError);
  CHECK_FALSE(LagrangianModel(models::Fluid{3, 0.0, 0.5}).in_domain(0.0, Vector::Zero(4)));
}

TEST_CASE("catalog lookup") {
  CHECK(model_from_name("skyrme", {{"c1", 1.0}}).name() == "skyrme");
  CHECK(model_from_name("sigma-combo", {{"c2", 1.0}}).evaluate(0.0, (Vector(3) << 1, 2, 3).finished()).value == 2.0);
  CHECK_THROWS_AS(model_from_name("nosuch"), InvalidInput);
  CHECK_THROWS_AS(model_from_name("skyrme", {{"c3", 1.0}}), InvalidInput);
  CHECK_THROWS_AS(model_from_name("skyrme", {{"c1", -1.0}}), InvalidInput);
  CHECK_THROWS_AS(model_from_name("fluid", {{"index", 1.5}}), InvalidInput);
}

TEST_CASE("custom model falls back to differences") {
  models::Custom c;
  c.value = [](double s, const Vector& sg) { return sg(0) * sg(0) + 3.0 * sg(1) + s; };
  const ModelEval e = LagrangianModel(c).evaluate(0.5, (Vector(2) << 1.5, 0.0).finished());
  CHECK(e.grad(0) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(e.grad(1) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(e.d_ds == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e.hessian(0, 0) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::abs(e.hessian(0, 1)) < 1e-5);
}
