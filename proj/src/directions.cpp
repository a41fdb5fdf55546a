#include "hyperlab/directions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace hyperlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Root of x^{d+1} = x + 1 (the generalized golden ratio).
double harmonious(int d) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

}  // namespace

Matrix sphere_lattice(int dim, int n_points) {
  if (dim < 1) throw InvalidInput("sphere_lattice needs dim >= 1");
  const int n = std::max(n_points, 2 * dim);
  Matrix out(dim, n);
  int k = 0;
  for (int i = 0; i < dim && k < n; ++i)
    for (double s : {1.0, -1.0}) {
      out.col(k).setZero();
      out(i, k++) = s;
    }
  if (dim == 1) return out.leftCols(2);

  const int rest = n - k;
  if (dim == 2) {
    for (int j = 0; j < rest; ++j) {
      const double th = 2 * kPi * (j + 0.5) / rest;
      out.col(k++) << std::cos(th), std::sin(th);
    }
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < rest; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / rest;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = golden * j;
      out.col(k++) << r * std::cos(th), r * std::sin(th), z;
    }
  } else {
    const double phi = harmonious(dim);
    Vector alpha(dim);
    for (int i = 0; i < dim; ++i) alpha(i) = std::fmod(std::pow(1.0 / phi, i + 1), 1.0);
    for (long j = 1; k < n; ++j) {
      Vector v(dim);
      for (int i = 0; i < dim; ++i) {
        double u = 0.5 + j * alpha(i);
        u -= std::floor(u);
        v(i) = 2 * u - 1;
      }
      const double r = v.norm();
      if (r > 1.0 || r < 1e-3) continue;
      out.col(k++) = v / r;
    }
  }
  return out;
}

Matrix hyperplane_basis(const Vector& x) {
  const double nx = x.norm();
  if (!(nx > 0)) throw ZeroVector("hyperplane normal is zero");
  const Eigen::Index n = x.size();
  Eigen::HouseholderQR<Matrix> qr(Matrix(x / nx));
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

int worker_count(std::size_t n_tasks) {
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("HYPERLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) cap = v;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(cap, n_tasks)));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const int workers = worker_count(n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hyperlab
