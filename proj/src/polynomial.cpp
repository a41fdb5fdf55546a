#include "hyperlab/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace hyperlab {

namespace {

double max_abs(const Poly& p) { return p.size() == 0 ? 0.0 : p.cwiseAbs().maxCoeff(); }

Poly normalized(const Poly& p) {
  const double m = max_abs(p);
  return m > 0 ? Poly(p / m) : p;
}

int sign_of(double x) { return (x > 0) - (x < 0); }

// p(s + c) by repeated synthetic division.
Poly taylor_shift(Poly p, double c) {
  const Eigen::Index n = p.size() - 1;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = n - 1; i >= k; --i) p(i) += c * p(i + 1);
  return p;
}

}  // namespace

int degree(const Poly& p) { return static_cast<int>(trim(p).size()) - 1; }

Poly trim(const Poly& p, double rel) {
  const double cut = rel * max_abs(p);
  Eigen::Index n = p.size();
  while (n > 0 && std::abs(p(n - 1)) <= cut) --n;
  return p.head(n);
}

double evaluate(const Poly& p, double s) {
  double acc = 0.0;
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * s + p(i);
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly();
  Poly d(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) d(i - 1) = static_cast<double>(i) * p(i);
  return trim(d);
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.size() == 0 || b.size() == 0) return Poly();
  Poly out = Poly::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i, b.size()) += a(i) * b;
  return out;
}

PolyDivision divide(const Poly& num, const Poly& den, double rel_tol) {
  const Poly d = trim(den);
  if (d.size() == 0) throw ZeroPolynomial("division by the zero polynomial");
  Poly r = trim(num);
  const double scale = max_abs(r);
  const Eigen::Index dd = d.size() - 1;
  if (r.size() < d.size()) return {Poly(), r};

  Poly q = Poly::Zero(r.size() - dd);
  for (Eigen::Index k = r.size() - 1; k >= dd; --k) {
    const double c = r(k) / d(dd);
    q(k - dd) = c;
    r.segment(k - dd, dd + 1) -= c * d;
    r(k) = 0.0;
  }
  Poly rem = r.head(dd);
  for (Eigen::Index i = 0; i < rem.size(); ++i)
    if (std::abs(rem(i)) <= rel_tol * scale) rem(i) = 0.0;
  return {q, trim(rem)};
}

namespace {

// Euclid with separate cutoffs: a remainder below zero_tol ends the chain;
// leading coefficients below lead_tol are dropped as noise.
Poly euclid(const Poly& a, const Poly& b, double zero_tol, double lead_tol) {
  Poly x = normalized(trim(a));
  Poly y = normalized(trim(b));
  if (x.size() < y.size()) std::swap(x, y);
  if (y.size() == 0) return x;
  while (true) {
    Poly r = divide(x, y).remainder;
    if (r.size() == 0 || max_abs(r) <= zero_tol * max_abs(x)) return normalized(y);
    x = std::move(y);
    y = normalized(trim(r, lead_tol));
  }
}

// Product of (s - z) over eigenvalue clusters, one factor per extra member.
Poly cluster_gcd(const Poly& t) {
  const Eigen::Index n = t.size() - 1;
  Matrix comp = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -t(i) / t(n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  const Eigen::VectorXcd z = Eigen::EigenSolver<Matrix>(comp, false).eigenvalues();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Poly g = Poly::Ones(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[i] || z(i).imag() < 0) continue;
    used[i] = true;
    for (Eigen::Index k = i + 1; k < n; ++k) {
      if (used[k] || std::abs(z(k) - z(i)) > 1e-5 * (1.0 + std::abs(z(i)))) continue;
      used[k] = true;
      // a real double root may show up as a conjugate pair
      const std::complex<double> c = 0.5 * (z(i) + z(k));
      if (std::abs(c.imag()) <= 1e-5 * (1.0 + std::abs(c))) {
        g = multiply(g, (Poly(2) << -c.real(), 1.0).finished());
      } else {
        g = multiply(g, (Poly(3) << std::norm(c), -2 * c.real(), 1.0).finished());
      }
    }
  }
  return g;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b, double rel_tol) { return euclid(a, b, rel_tol, rel_tol); }

Poly square_free_part(const Poly& p, double rel_tol) {
  const Poly t = normalized(trim(p));
  if (t.size() <= 1) return t;
  const Poly dt = normalized(derivative(t));
  // Euclid's zero test is fragile for clustered roots, so walk a ladder of
  // cutoffs and keep the largest gcd that actually divides both t and t'.
  // A root error d leaves O(d^2) in t but O(d) in t', hence two cutoffs.
  auto divides = [](const Poly& num, const Poly& g, double cut) {
    const Poly r = divide(num, g).remainder;
    return r.size() == 0 || max_abs(r) <= cut * max_abs(num);
  };
  std::vector<double> rungs;
  for (double tol = std::max(rel_tol, 1e-14); tol <= 1e-5 * (1 + 1e-9); tol *= 10.0) rungs.push_back(tol);
  Poly best;
  for (double zero_tol : rungs)
    for (double lead_tol : rungs) {
      const Poly g = euclid(t, dt, zero_tol, lead_tol);
      if (g.size() > 1 && g.size() > best.size() && divides(t, g, 1e-9) && divides(dt, g, 1e-4)) best = g;
    }
  if (best.size() <= 1) {
    // Euclid can lose every rung on a nearly abnormal remainder sequence;
    // propose the gcd from clustered companion eigenvalues and let the same
    // divisibility test decide.
    const Poly g = cluster_gcd(t);
    if (g.size() > 1 && divides(t, g, 1e-9) && divides(dt, g, 1e-4)) best = g;
  }
  if (best.size() <= 1) return t;
  return normalized(divide(t, best).quotient);
}

int sign_variations(const Poly& p) {
  int changes = 0, last = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const int s = sign_of(p(i));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double cauchy_bound(const Poly& p) {
  const Poly t = trim(p);
  if (t.size() <= 1) return 1.0;
  const double lead = std::abs(t(t.size() - 1));
  return 1.0 + t.head(t.size() - 1).cwiseAbs().maxCoeff() / lead;
}

int SturmChain::sign_changes(double s) const {
  int changes = 0, last = 0;
  for (const Poly& p : polys) {
    const int sg = sign_of(evaluate(p, s));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

int SturmChain::count(double lo, double hi) const { return sign_changes(lo) - sign_changes(hi); }

double SturmChain::residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    const Poly& prev = polys[k];
    Poly rebuilt = multiply(quotients[k], polys[k + 1]);
    if (k + 2 < polys.size()) {
      const Poly& next = polys[k + 2];
      if (rebuilt.size() < next.size()) rebuilt.conservativeResizeLike(Poly::Zero(next.size()));
      rebuilt.head(next.size()) -= scales[k] * next;
    }
    Poly diff = Poly::Zero(std::max(prev.size(), rebuilt.size()));
    diff.head(prev.size()) += prev;
    diff.head(rebuilt.size()) -= rebuilt;
    worst = std::max(worst, max_abs(diff) / std::max(max_abs(prev), 1e-300));
  }
  return worst;
}

SturmChain sturm_chain(const Poly& p, double rel_tol) {
  SturmChain chain;
  const Poly p0 = normalized(trim(p));
  if (p0.size() == 0) throw ZeroPolynomial("Sturm chain of the zero polynomial");
  chain.degree = static_cast<int>(p0.size()) - 1;
  chain.polys.push_back(p0);
  Poly p1 = normalized(derivative(p0));
  if (p1.size() == 0) return chain;
  chain.polys.push_back(p1);
  while (chain.polys.back().size() > 1) {
    const Poly& a = chain.polys[chain.polys.size() - 2];
    const Poly& b = chain.polys.back();
    PolyDivision qr = divide(a, b, rel_tol);
    if (qr.remainder.size() == 0) {
      chain.quotients.push_back(qr.quotient);
      chain.scales.push_back(0.0);
      break;
    }
    const double s = max_abs(qr.remainder);
    chain.quotients.push_back(qr.quotient);
    chain.scales.push_back(s);
    chain.polys.push_back(Poly(-qr.remainder / s));
  }
  return chain;
}

RootCount real_root_count(const Poly& p, double rel_tol) {
  const Poly t = trim(p);
  if (t.size() == 0) throw ZeroPolynomial("real_root_count of the zero polynomial");
  RootCount rc;
  rc.degree = static_cast<int>(t.size()) - 1;
  rc.descartes_bound = sign_variations(t);
  const Poly q = square_free_part(t, rel_tol);
  rc.square_free_degree = static_cast<int>(q.size()) - 1;
  if (rc.square_free_degree <= 0) {
    rc.sturm_count = 0;
    rc.all_real = true;
    return rc;
  }
  // count around the root centroid; clustered roots otherwise cancel in the chain
  const Poly c = q;
  const double r = cauchy_bound(c);
  rc.sturm_count = sturm_chain(c, rel_tol).count(-r, r);
  rc.all_real = rc.sturm_count == rc.square_free_degree;
  return rc;
}

Poly from_roots(const std::vector<double>& real_roots, const std::vector<std::pair<double, double>>& complex_pairs) {
  Poly p = Poly::Ones(1);
  for (double r : real_roots) p = multiply(p, (Poly(2) << -r, 1.0).finished());
  for (const auto& [re, im] : complex_pairs)
    p = multiply(p, (Poly(3) << re * re + im * im, -2 * re, 1.0).finished());
  return p;
}

}  // namespace hyperlab
