#pragma once

// Deterministic direction sets and an index-ordered parallel loop.

#include <cstddef>
#include <functional>
#include <vector>

#include "hyperlab/tensor_core.hpp"

namespace hyperlab {

/// n_points unit vectors in R^dim, columns of the result. The 2 dim signed
/// coordinate axes come first; then a uniform circle (dim 2), a Fibonacci
/// lattice (dim 3), or accepted points of an R_d Kronecker sequence in the
/// unit ball (dim >= 4), projected to the sphere.
Matrix sphere_lattice(int dim, int n_points);

/// Orthonormal (Euclidean) basis of {eta : eta . x = 0} as columns.
Matrix hyperplane_basis(const Vector& x);

/// Worker count: HYPERLAB_THREADS when set to a positive integer, otherwise
/// the hardware concurrency; never more than n_tasks.
int worker_count(std::size_t n_tasks);

/// Runs body(i) for i in [0, n). Callers write into slot i of a presized
/// output, so the reduction order never depends on scheduling. The first
/// exception by index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hyperlab
