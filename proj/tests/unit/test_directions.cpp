#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "hyperlab/directions.hpp"

using namespace hyperlab;

TEST_CASE("sphere lattice: unit columns, axes first, deterministic") {
  for (int dim : {2, 3, 4, 6}) {
    const Matrix a = sphere_lattice(dim, 300);
    CHECK(a.rows() == dim);
    CHECK(a.cols() == 300);
    for (int k = 0; k < a.cols(); ++k) CHECK(a.col(k).norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(a.col(0).cwiseAbs().maxCoeff() - 1.0) < 1e-15);
    CHECK((a - sphere_lattice(dim, 300)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lattice covers the sphere") {
  const Matrix a = sphere_lattice(3, 2048);
  const Vector probe = Vector::Constant(3, 1.0 / std::sqrt(3.0));
  CHECK((a.transpose() * probe).maxCoeff() > 0.99);
}

TEST_CASE("hyperplane basis is orthonormal and orthogonal to x") {
  const Vector x = (Vector(4) << 1.0, -2.0, 0.5, 3.0).finished();
  const Matrix b = hyperplane_basis(x);
  CHECK(b.cols() == 3);
  CHECK((b.transpose() * b - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((b.transpose() * x).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("parallel_for fills every slot and rethrows the first failure") {
  std::vector<int> out(1000, -1);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i % 97));

  std::atomic<int> ran{0};
  try {
    parallel_for(50, [&](std::size_t i) {
      ++ran;
      if (i == 7 || i == 30) throw std::runtime_error("task " + std::to_string(i));
    });
    FAIL("no exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "task 7");
  }
}

TEST_CASE("HYPERLAB_THREADS caps the worker count") {
  const char* old = std::getenv("HYPERLAB_THREADS");
  const std::string saved = old ? old : "";
  setenv("HYPERLAB_THREADS", "3", 1);
  CHECK(worker_count(100) == 3);
  CHECK(worker_count(2) == 2);
  setenv("HYPERLAB_THREADS", "1", 1);
  CHECK(worker_count(100) == 1);
  setenv("HYPERLAB_THREADS", "bogus", 1);
  CHECK(worker_count(100) >= 1);
  if (old)
    setenv("HYPERLAB_THREADS", saved.c_str(), 1);
  else
    unsetenv("HYPERLAB_THREADS");
}
