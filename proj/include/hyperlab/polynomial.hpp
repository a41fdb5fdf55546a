#pragma once

// Real polynomials as ascending coefficient vectors (a_0 + a_1 s + ...).
// The zero polynomial is the empty vector.

#include <vector>

#include "hyperlab/tensor_core.hpp"

namespace hyperlab {

using Poly = Vector;

int degree(const Poly& p);  // -1 for the zero polynomial

/// Drops leading coefficients with |a_i| <= rel * max|a|.
Poly trim(const Poly& p, double rel = 0.0);

double evaluate(const Poly& p, double s);
Poly derivative(const Poly& p);
Poly multiply(const Poly& a, const Poly& b);

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

/// Long division; remainder coefficients below rel_tol * max|num| are
/// treated as zero.
PolyDivision divide(const Poly& num, const Poly& den, double rel_tol = 0.0);

/// Monic-free gcd by a toleranced Euclid recursion; result scaled to max|.| = 1.
Poly gcd(const Poly& a, const Poly& b, double rel_tol = 1e-10);

/// p / gcd(p, p').
Poly square_free_part(const Poly& p, double rel_tol = 1e-10);

/// Sign-variation count of the coefficients (Descartes bound on positive roots).
int sign_variations(const Poly& p);

/// Cauchy bound 1 + max |a_i / a_deg|.
double cauchy_bound(const Poly& p);

/// p_0 = q, p_1 = q', p_{k+1} = -rem(p_{k-1}, p_k) / scale_k, every entry
/// rescaled to max|.| = 1. The stored quotients and scales reproduce
/// p_{k-1} = quotient_k p_k - scale_k p_{k+1}.
struct SturmChain {
  std::vector<Poly> polys;
  std::vector<Poly> quotients;
  std::vector<double> scales;
  int degree = -1;

  int sign_changes(double s) const;
  /// Distinct roots in (lo, hi]; lo and hi must not be roots.
  int count(double lo, double hi) const;
  /// Max relative residual of the division relations.
  double residual() const;
};

SturmChain sturm_chain(const Poly& p, double rel_tol = 1e-10);

struct RootCount {
  int sturm_count = 0;      // distinct real roots
  int descartes_bound = 0;  // sign variations of p
  int degree = 0;
  int square_free_degree = 0;
  bool all_real = false;    // every root real, multiplicities included
};

/// Throws ZeroPolynomial on the zero polynomial.
RootCount real_root_count(const Poly& p, double rel_tol = 1e-10);

/// Coefficients of prod (s - r_i) for real r_i and prod (s^2 - 2 re s + |z|^2)
/// for complex pairs.
Poly from_roots(const std::vector<double>& real_roots, const std::vector<std::pair<double, double>>& complex_pairs = {});

}  // namespace hyperlab
