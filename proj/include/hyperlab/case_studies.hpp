#pragma once

// Worked reproductions: Skyrme regimes, the constant-coefficient
// counterexample, the tachyonic fluid, fluid causality and stress identities.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperlab/hyperbolicity.hpp"
#include "hyperlab/stress_energy.hpp"

namespace hyperlab {

/// Minkowski base, flat target of dimension n, dphi(i, target(i)) = lambda_i.
/// With n < m+1 the first m+1-n vanishing lambdas get no target slot;
/// throws RankConstraintViolation when too few of them vanish.
FieldJet adapted_frame_jet(const Vector& lambdas, int n = 3, double s = 0.0);

enum class SkyrmeRegimeKind { TimelikeKernel, DegenerateKernel, SubcriticalEigenvalue, Breakdown, Marginal };
std::string to_string(SkyrmeRegimeKind k);

struct SkyrmeRegime {
  Vector lambdas;
  SkyrmeRegimeKind predicted = SkyrmeRegimeKind::TimelikeKernel;
  double threshold = 1.0;  // c1 / c2
};

/// lambda_0 = 0 -> timelike kernel; lambda_0^2 below c1/c2 -> subcritical;
/// above -> breakdown; equal (1e-12 relative) -> marginal, no verdict.
SkyrmeRegime skyrme_predict(const Vector& lambdas, double c1 = 0.5, double c2 = 0.5, int n = 3);

/// Same prediction read off a general jet through its adapted frame; a
/// degenerate kernel frame maps to DegenerateKernel.
SkyrmeRegime skyrme_predict(const FieldJet& jet, double c1 = 0.5, double c2 = 0.5);

/// Verdict the classifier should produce, or nullopt for Marginal.
std::optional<Verdict> expected_verdict(SkyrmeRegimeKind k);

struct SkyrmePoint {
  SkyrmeRegime regime;
  bool excluded = false;  // inside the threshold band or marginal; not classified
  ClassificationReport classification;
  bool agrees = false;
};

struct SkyrmeGridReport {
  std::vector<SkyrmePoint> points;  // grid order
  int compared = 0;
  int agreed = 0;
  int excluded = 0;  // inside the threshold band
  double agreement() const { return compared ? static_cast<double>(agreed) / compared : 0.0; }
};

/// Classifies every grid point (adapted jet, closed-form symbol, timelike
/// strain eigenvector as the preferred observer). Points with
/// |lambda_0^2 - c1/c2| < band are skipped. Runs in parallel; results stay
/// in grid order.
SkyrmeGridReport skyrme_verify_grid(const std::vector<Vector>& grid, double c1, double c2,
                                    const SearchConfig& search, double band = 0.05, int n = 3);

/// The cube {0, 0.5, 1.5, 2, 3}^3 in (lambda_0, lambda_1, lambda_2), lambda_3 = 0.
std::vector<Vector> default_skyrme_grid();

SkyrmePoint skyrme_classify_point(const Vector& lambdas, double c1, double c2, const SearchConfig& search, int n = 3);

struct SpanCheck {
  int samples = 0;
  int not_positive = 0;    // samples where eta in span(f0, f3), eta(X) = 0 fails positivity
  double max_min_eig = 0;  // largest min eigenvalue met (<= tol * scale when all fail)
};

/// For n_samples future timelike X, takes eta = X^3 f0 - X^0 f3 (the
/// span(f0, f3) covector annihilating X) and tests m(eta, eta).
SpanCheck skyrme_span_check(const PrincipalSymbol& sym, int n_samples, std::uint64_t seed, double tol = 1e-8);

struct CounterexampleReport {
  double epsilon = 0.0;
  PrincipalSymbol symbol;
  Definiteness m00 = Definiteness::Zero;
  ObserverResult observer;
  double tilde_contraction = 0.0;  // m~^{ab}_{AB} d_a psi^A d_b psi^B
  double energy_density = 0.0;
  Matrix dpsi;
};

/// m = m~ - epsilon delta^{ab} delta_AB on 2+1 dimensions, data psi^1 = y,
/// psi^2 = -x. psi_perturb rescales d psi^1 by (1 + psi_perturb).
/// Throws EpsilonTooLarge when d_t is no longer an observer.
CounterexampleReport constant_coefficient_counterexample(double epsilon, const SearchConfig& search, double psi_perturb = 0.0);

/// The unperturbed m~ of the counterexample.
PrincipalSymbol counterexample_tilde_symbol();

struct TachyonicReport {
  double b = 0.0;
  Vector sigmas;
  StressEnergy stress;
  DecReport dec;
  ClassificationReport classification;
};

/// L = sqrt(b + sigma_3) at phi(t,x,y,z) = (t,x,y); sigma_3 = -1 there.
TachyonicReport tachyonic_fluid_demo(double b, const SearchConfig& search, int dec_samples = 500,
                                     std::uint64_t seed = 11);

struct FluidCausality {
  double first = 0.0;   // L'
  double second = 0.0;  // L''
  bool concave_ok = false;     // 2 sigma L'' < 0
  bool hyperbolic_ok = false;  // 2 sigma L'' > -L'
  bool marginal = false;       // 2 sigma L'' = -L' to 1e-9 relative
};

/// Both inequalities for L as a function of sigma_index alone (other
/// sigmas zero). Requires sigma_n > 0 in the model domain.
FluidCausality fluid_causality_check(const LagrangianModel& model, int index, double sigma_n);

struct StressEquivalence {
  int j = 0;
  int jets = 0;
  bool all_zero = false;
  double noether_ratio = 0.0;  // fitted c in Noether = c g^{-1} T
  double noether_residual = 0.0;
  double z_ratio = 0.0;        // fitted c in Q[phi] = c g^{-1} T
  double z_residual = 0.0;
};

/// Fits both canonical stresses against g^{-1} o T for L = sigma_j.
StressEquivalence stress_equivalence(int j, const std::vector<FieldJet>& jets);

/// Random jet: boosted and sheared Minkowski metric (frame condition
/// number <= 10), random SPD target metric, Gaussian dphi scaled by dphi_scale.
FieldJet random_jet(std::mt19937_64& rng, int base_dim, int target_dim, double dphi_scale = 1.0);

/// A jet with rank(dphi) = rank exactly.
FieldJet random_low_rank_jet(std::mt19937_64& rng, int base_dim, int target_dim, int rank);

struct DecSuiteEntry {
  std::string model;
  int jets = 0;
  int passed = 0;
  double worst_relative_energy = 0.0;  // min over jets of T(X,X) / |T| (per unit |X|^2)
};

/// check_dec over random jets plus tachyonic adapted jets (lambda_0^2 up to
/// 9) for sigma_1..3, Skyrme, Born-Infeld(2) and sqrt(2 + sigma_3); jets
/// outside a model's domain are redrawn.
std::vector<DecSuiteEntry> dec_suite(int jets_per_model, std::uint64_t seed, double tol = 1e-9);

}  // namespace hyperlab
