#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperlab/lagrangian.hpp"

namespace hyperlab {

/// Einstein-Hilbert stress-energy T_ab (both indices down).
struct StressEnergy {
  Matrix components;

  /// Mixed form (g^{-1} o T)^a_b.
  Matrix raised(const BaseMetric& g) const { return g.inverse() * components; }
};

/// T = dL/dg^{-1} - (1/2) L g with dL/dg^{-1} by symmetric central
/// differences in the components of g^{-1}; sigmas are recomputed from each
/// perturbed inverse metric.
StressEnergy stress_energy_fd(const LagrangianModel& model, const FieldJet& jet, double step = 1e-5);

/// Chain rule through the closed-form sigma_j stresses:
///   T = sum_j dL/dsigma_j (T[sigma_j] + (1/2) sigma_j g) - (1/2) L g.
/// Exact up to rounding; the finite-difference path is its oracle.
StressEnergy stress_energy(const LagrangianModel& model, const FieldJet& jet);

/// The generalized-Kronecker contraction g^{a1[c1} ... g^{aj cj]} P ... P,
/// taken with unit-weight antisymmetrization (v ^ w = v (x) w - w (x) v),
/// equals this constant's reciprocal times sigma_j. Pinned against the
/// finite-difference path by a regression test.
double antisymmetrized_sigma_normalization(int j);

/// Closed-form T for L = sigma_j from the antisymmetrized contraction.
/// Requires 1 <= j <= m+1.
StressEnergy stress_energy_sigma(const FieldJet& jet, int j);

struct DecReport {
  bool holds = true;
  double worst_energy = 0.0;     // min T(X,X)
  double worst_causality = 0.0;  // max (T g^{-1} T)(X,X)
  Vector witness;                // empty when no violation was found
  int samples_used = 0;
  double tolerance = 0.0;
};

/// Samples future timelike X = e_0 + tanh(r) n in the metric's orthonormal
/// frame, over a rapidity grid (r <= 10, including near-null directions)
/// plus n_samples random draws. Deterministic in seed.
DecReport check_dec(const StressEnergy& t, const BaseMetric& g, int n_samples, std::uint64_t seed,
                    double tol = 1e-9);

struct ProbeBox {
  std::pair<double, double> s{0.0, 0.0};
  std::vector<std::pair<double, double>> sigmas;  // sigma_1..sigma_{m+1}
};

struct SufficientConditionReport {
  bool nondecreasing = true;
  bool concave = true;
  bool nonneg_at_zero = true;
  int probes = 0;
  double min_partial = 0.0;
  double max_hessian_eig = 0.0;
  double value_at_zero = 0.0;
};

/// Sampled certificate (not a proof) of: nonnegative partials, concavity in
/// the sigmas, and L(0) >= 0.
SufficientConditionReport check_sufficient_conditions(const LagrangianModel& model, const ProbeBox& box,
                                                      int k_probes, std::uint64_t seed = 7, double tol = 1e-9);

}  // namespace hyperlab
