#include <doctest.h>

#include <random>

#include "hyperlab/polynomial.hpp"
#include "../oracles.hpp"

using namespace hyperlab;

TEST_CASE("basic polynomial arithmetic") {
  const Poly p = from_roots({1.0, -2.0});  // s^2 + s - 2
  CHECK(p(0) == -2.0);
  CHECK(p(1) == 1.0);
  CHECK(p(2) == 1.0);
  CHECK(evaluate(p, 1.0) == 0.0);
  CHECK(degree(p) == 1 + 1);
  CHECK(degree(Poly()) == -1);
  const PolyDivision d = divide(multiply(p, from_roots({3.0})), from_roots({3.0}));
  CHECK((d.quotient - p).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(d.remainder.size() == 0);
  CHECK_THROWS_AS(divide(p, Poly()), ZeroPolynomial);
  CHECK(derivative(p).size() == 2);
}

TEST_CASE("gcd and square-free part") {
  const Poly p = from_roots({1.0, 1.0, 2.0}, {{0.0, 1.0}});
  const Poly q = square_free_part(p);
  CHECK(degree(q) == 4);
  const Poly g = gcd(p, derivative(p));
  CHECK(degree(g) == 1);
  CHECK(std::abs(-g(0) / g(1) - 1.0) < 1e-8);
}

TEST_CASE("sturm counts of known root sets") {
  CHECK(real_root_count(from_roots({-1.0, 0.5, 2.0})).sturm_count == 3);
  CHECK(real_root_count(from_roots({}, {{0.0, 1.0}})).sturm_count == 0);
  const RootCount rc = real_root_count(from_roots({1.0, 1.0, -3.0}, {{2.0, 0.5}}));
  CHECK(rc.sturm_count == 2);
  CHECK(rc.degree == 5);
  CHECK(rc.square_free_degree == 4);
  CHECK_FALSE(rc.all_real);
  CHECK(real_root_count(from_roots({2.0, 2.0, 2.0, -1.0})).all_real);
  CHECK_THROWS_AS(real_root_count(Poly::Zero(3)), ZeroPolynomial);
}

TEST_CASE("chain division relations hold") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly p = oracle::random_matrix(rng, 2 + trial % 8, 1).col(0);
    CHECK(sturm_chain(p).residual() < 1e-10);
  }
}

TEST_CASE("property: companion oracle and Descartes bound") {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 1 + trial % 8;
    Poly p = oracle::random_matrix(rng, d + 1, 1).col(0);
    if (std::abs(p(d)) < 1e-2) continue;
    const Eigen::VectorXcd z = oracle::companion_roots(p);
    bool clustered = false;
    int real = 0, positive = 0;
    for (int i = 0; i < d; ++i) {
      if (z(i).imag() != 0.0 && std::abs(z(i).imag()) < 1e-6) clustered = true;
      for (int k = i + 1; k < d; ++k) clustered = clustered || std::abs(z(i) - z(k)) < 1e-6;
      if (z(i).imag() == 0.0) {
        ++real;
        positive += z(i).real() > 0;
      }
    }
    if (clustered) continue;
    const RootCount rc = real_root_count(p);
    CHECK(rc.sturm_count == real);
    CHECK(positive <= rc.descartes_bound);
    ++compared;
  }
  CHECK(compared > 350);
}

TEST_CASE("sign variations and cauchy bound") {
  CHECK(sign_variations((Poly(4) << 1, -1, 0, 1).finished()) == 2);
  const Poly p = from_roots({-5.0, 3.0});
  CHECK(cauchy_bound(p) > 5.0);
}
