#pragma once

// Definiteness, time-function and observer searches, breakdown taxonomy,
// and real-rootedness of det m(zeta + s eta, zeta + s eta).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "hyperlab/polynomial.hpp"
#include "hyperlab/symbol.hpp"

namespace hyperlab {

enum class Definiteness { PosDef, NegDef, PosSemi, NegSemi, Indefinite, Zero };

/// Eigenvalue signs relative to tol * spectral norm. Throws AsymmetricInput.
Definiteness definiteness(const Matrix& mat, double tol = 1e-8);
std::string to_string(Definiteness d);

struct SearchConfig {
  int n_dirs = 2048;
  int refine_iters = 50;
  double rapidity_max = 3.0;
  double rapidity_step = 0.25;
  int n_spatial = 64;
  double tol = 1e-8;
  std::uint64_t seed = 1;

  /// Same search with every resolution multiplied by factor.
  SearchConfig refined(int factor) const;
};

struct TimeFunctionResult {
  bool found = false;
  Vector xi;            // best covector, Euclidean unit, largest entry positive
  double margin = 0.0;  // -max eig m(xi, xi)
};

/// Maximizes -max eig m(xi, xi) over unit covectors (lattice + coordinate
/// descent from the three best lattice points). found iff the margin beats
/// tol * |sym|.
TimeFunctionResult find_time_function(const PrincipalSymbol& sym, const SearchConfig& search);

struct ObserverResult {
  bool positive = false;
  double min_eig = 0.0;  // min over unit eta with eta(X) = 0 of min eig m(eta, eta)
  Vector argmin_eta;
};

/// stop_below: the search returns as soon as some eta has min eig below
/// this value (pass -infinity for a full search).
ObserverResult observer_margin(const PrincipalSymbol& sym, const Vector& x, const SearchConfig& search,
                               double stop_below = -std::numeric_limits<double>::infinity(),
                               const Vector* first_guess = nullptr);

enum class Verdict { RegularlyHyperbolic, EllipticType, UltrahyperbolicType };
std::string to_string(Verdict v);

struct ClassificationReport {
  Verdict verdict = Verdict::EllipticType;
  Vector t_covector;            // best time-function candidate
  Vector x_vector;              // observer (RH) or reported candidate (UH)
  Vector violating_eta;         // UH only
  double time_margin = 0.0;     // raw -max eig m(t, t); max negativity found for EllipticType
  double observer_margin = 0.0; // raw min eig at x_vector
  double scale = 0.0;           // |sym|, the normalization of tol
  bool marginal = false;        // a deciding margin lies within tol * scale of zero
  int x_candidates_tried = 0;
  SearchConfig resolution;
};

/// X candidates: preferred_x first (e.g. the timelike strain eigenvector),
/// then cosh r e_0 + sinh r n over the rapidity grid and n_spatial
/// directions in g's orthonormal frame. Non-existence is resolution-qualified.
ClassificationReport classify(const PrincipalSymbol& sym, const BaseMetric& g, const SearchConfig& search,
                              const std::optional<Vector>& preferred_x = std::nullopt);

struct WitnessCheck {
  bool passed = false;
  Definiteness time_definiteness = Definiteness::Zero;
  double time_margin = 0.0;
  double observer_margin = 0.0;
};

/// Rechecks an RH verdict's (t, X) at factor times the search resolution.
WitnessCheck verify_witness(const PrincipalSymbol& sym, const ClassificationReport& rep, const SearchConfig& search,
                            int factor = 4);

/// Coefficients of M(s) = det m(zeta + s eta, zeta + s eta), ascending,
/// by interpolation at 2n+1 Chebyshev nodes.
Poly symbol_det_poly(const PrincipalSymbol& sym, const Vector& zeta, const Vector& eta);

enum class DirectionVerdict { AllRealRooted, CounterexampleZeta };

struct DirectionReport {
  DirectionVerdict verdict = DirectionVerdict::AllRealRooted;
  Vector zeta;  // first failing zeta
  Poly poly;    // its M(s)
  RootCount roots;
  int tried = 0;
};

/// Coordinate covectors projected off eta first, then n_transverse random
/// unit zeta transverse to eta. Throws DegenerateDirection when m(eta, eta)
/// is singular to tolerance.
DirectionReport hyperbolic_direction_test(const PrincipalSymbol& sym, const Vector& eta, int n_transverse,
                                          std::uint64_t seed, double tol = 1e-8);

}  // namespace hyperlab
