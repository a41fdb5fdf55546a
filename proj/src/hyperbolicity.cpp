#include "hyperlab/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperlab/directions.hpp"

namespace hyperlab {

namespace {

Vector eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Coordinate descent on the unit sphere, maximizing f. Returns the number
// of evaluations; stops early once stop(value) holds.
template <typename F, typename Stop>
void refine(F&& f, Vector& v, double& value, int iters, Stop&& stop) {
  const Eigen::Index dim = v.size();
  double step = 0.25;
  for (int it = 0; it < iters && !stop(value); ++it) {
    bool improved = false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vector cand = v;
        cand(i) += sgn * step;
        const double n = cand.norm();
        if (n < 1e-12) continue;
        cand /= n;
        const double fc = f(cand);
        if (fc > value) {
          value = fc;
          v = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-12) break;
  }
}

std::vector<int> top_indices(const std::vector<double>& values, int k) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min<int>(k, static_cast<int>(idx.size()));
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](int a, int b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
  idx.resize(k);
  return idx;
}

void orient(Vector& v) {
  Eigen::Index i;
  v.cwiseAbs().maxCoeff(&i);
  if (v(i) < 0) v = -v;
}

}  // namespace

Definiteness definiteness(const Matrix& mat, double tol) {
  if (mat.rows() != mat.cols()) throw AsymmetricInput("definiteness needs a square matrix");
  const double scale = mat.cwiseAbs().maxCoeff();
  if (mat.size() == 0 || scale == 0.0) return Definiteness::Zero;
  if ((mat - mat.transpose()).cwiseAbs().maxCoeff() > tol * scale) throw AsymmetricInput("matrix is not symmetric");
  const Vector ev = eigenvalues(0.5 * (mat + mat.transpose()));
  const double cut = tol * ev.cwiseAbs().maxCoeff();
  const auto pos = (ev.array() > cut).count();
  const auto neg = (ev.array() < -cut).count();
  const auto n = ev.size();
  if (pos == 0 && neg == 0) return Definiteness::Zero;
  if (pos == n) return Definiteness::PosDef;
  if (neg == n) return Definiteness::NegDef;
  if (neg == 0) return Definiteness::PosSemi;
  if (pos == 0) return Definiteness::NegSemi;
  return Definiteness::Indefinite;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PosDef: return "positive-definite";
    case Definiteness::NegDef: return "negative-definite";
    case Definiteness::PosSemi: return "positive-semidefinite";
    case Definiteness::NegSemi: return "negative-semidefinite";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Zero: return "zero";
  }
  return "?";
}

SearchConfig SearchConfig::refined(int factor) const {
  SearchConfig s = *this;
  s.n_dirs *= factor;
  s.refine_iters *= factor;
  s.n_spatial *= factor;
  s.rapidity_step /= factor;
  return s;
}

TimeFunctionResult find_time_function(const PrincipalSymbol& sym, const SearchConfig& search) {
  const int nb = sym.base_dim();
  const double cut = search.tol * sym.norm();
  auto f = [&](const Vector& xi) { return -eigenvalues(contract_symbol(sym, xi, xi)).maxCoeff(); };

  const Matrix lattice = sphere_lattice(nb, search.n_dirs);
  std::vector<double> values(lattice.cols());
  for (Eigen::Index k = 0; k < lattice.cols(); ++k) values[k] = f(lattice.col(k));

  TimeFunctionResult best;
  best.margin = -std::numeric_limits<double>::infinity();
  for (int k : top_indices(values, 3)) {
    Vector v = lattice.col(k);
    double value = values[k];
    refine(f, v, value, search.refine_iters, [](double) { return false; });
    if (value > best.margin) {
      best.margin = value;
      best.xi = v;
    }
  }
  orient(best.xi);
  best.found = best.margin > cut;
  return best;
}

ObserverResult observer_margin(const PrincipalSymbol& sym, const Vector& x, const SearchConfig& search,
                               double stop_below, const Vector* first_guess) {
  if (x.size() != sym.base_dim()) throw InvalidInput("observer vector has the wrong dimension");
  if (!(x.norm() > 0)) throw ZeroVector("observer vector is zero");
  const Matrix basis = hyperplane_basis(x);
  const auto dim = static_cast<int>(basis.cols());
  const double cut = search.tol * sym.norm();

  ObserverResult out;
  if (dim == 0) {
    out.positive = false;
    return out;
  }
  // maximize -min eig so the shared refinement applies
  auto f = [&](const Vector& u) {
    const Vector eta = basis * u;
    return -eigenvalues(contract_symbol(sym, eta, eta)).minCoeff();
  };
  auto done = [&](double value) { return -value < stop_below; };

  double best = -std::numeric_limits<double>::infinity();
  Vector best_u;
  auto finish = [&](Vector u, double value) {
    out.min_eig = -value;
    out.argmin_eta = basis * u;
    orient(out.argmin_eta);
    out.positive = out.min_eig > cut;
    return out;
  };

  if (first_guess != nullptr && first_guess->size() == x.size()) {
    Vector u = basis.transpose() * *first_guess;
    if (u.norm() > 1e-8) {
      u.normalize();
      const double v = f(u);
      if (done(v)) return finish(u, v);
    }
  }

  const Matrix lattice = sphere_lattice(dim, search.n_dirs);
  std::vector<double> values(lattice.cols());
  for (Eigen::Index k = 0; k < lattice.cols(); ++k) {
    values[k] = f(lattice.col(k));
    if (done(values[k])) return finish(lattice.col(k), values[k]);
  }
  for (int k : top_indices(values, 3)) {
    Vector u = lattice.col(k);
    double value = values[k];
    refine(f, u, value, search.refine_iters, done);
    if (value > best) {
      best = value;
      best_u = u;
    }
    if (done(value)) break;
  }
  return finish(best_u, best);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::RegularlyHyperbolic: return "regularly-hyperbolic";
    case Verdict::EllipticType: return "elliptic";
    case Verdict::UltrahyperbolicType: return "ultrahyperbolic";
  }
  return "?";
}

ClassificationReport classify(const PrincipalSymbol& sym, const BaseMetric& g, const SearchConfig& search,
                              const std::optional<Vector>& preferred_x) {
  ClassificationReport rep;
  rep.resolution = search;
  rep.scale = sym.norm();
  const double cut = search.tol * rep.scale;

  const TimeFunctionResult tf = find_time_function(sym, search);
  rep.t_covector = tf.xi;
  rep.time_margin = tf.margin;
  if (!tf.found) {
    rep.verdict = Verdict::EllipticType;
    rep.marginal = std::abs(tf.margin) <= cut;
    return rep;
  }

  std::vector<Vector> candidates;
  if (preferred_x) candidates.push_back(*preferred_x);
  const int m = g.dim() - 1;
  const Matrix& frame = g.orthonormal_frame();
  candidates.push_back(frame.col(0));
  if (m > 0) {
    const Matrix dirs = sphere_lattice(m, search.n_spatial);
    const int steps = static_cast<int>(std::floor(search.rapidity_max / search.rapidity_step + 1e-9));
    for (int i = 1; i <= steps; ++i) {
      const double r = i * search.rapidity_step;
      for (Eigen::Index k = 0; k < dirs.cols(); ++k)
        candidates.push_back(std::cosh(r) * frame.col(0) + std::sinh(r) * (frame.rightCols(m) * dirs.col(k)));
    }
  }

  Vector last_eta;
  for (const Vector& x : candidates) {
    ++rep.x_candidates_tried;
    const ObserverResult res = observer_margin(sym, x, search, -cut, last_eta.size() ? &last_eta : nullptr);
    if (res.positive) {
      rep.verdict = Verdict::RegularlyHyperbolic;
      rep.x_vector = x;
      rep.observer_margin = res.min_eig;
      rep.marginal = std::abs(tf.margin) <= cut;
      return rep;
    }
    if (res.min_eig >= -cut) rep.marginal = true;
    last_eta = res.argmin_eta;
  }

  const ObserverResult full = observer_margin(sym, candidates.front(), search);
  rep.verdict = Verdict::UltrahyperbolicType;
  rep.x_vector = candidates.front();
  rep.violating_eta = full.argmin_eta;
  rep.observer_margin = full.min_eig;
  return rep;
}

WitnessCheck verify_witness(const PrincipalSymbol& sym, const ClassificationReport& rep, const SearchConfig& search,
                            int factor) {
  WitnessCheck wc;
  if (rep.verdict != Verdict::RegularlyHyperbolic) return wc;
  const double cut = search.tol * sym.norm();
  const Matrix mtt = contract_symbol(sym, rep.t_covector, rep.t_covector);
  wc.time_definiteness = definiteness(mtt, search.tol);
  wc.time_margin = -eigenvalues(mtt).maxCoeff();
  wc.observer_margin = observer_margin(sym, rep.x_vector, search.refined(factor)).min_eig;
  wc.passed = wc.time_definiteness == Definiteness::NegDef && wc.time_margin > cut && wc.observer_margin > cut;
  return wc;
}

Poly symbol_det_poly(const PrincipalSymbol& sym, const Vector& zeta, const Vector& eta) {
  const int deg = 2 * sym.target_dim();
  const int npts = deg + 1;
  Matrix vander(npts, npts);
  Vector vals(npts);
  constexpr double kPi = 3.14159265358979323846;
  for (int k = 0; k < npts; ++k) {
    const double s = std::cos(kPi * (k + 0.5) / npts);
    const Vector xi = zeta + s * eta;
    vals(k) = contract_symbol(sym, xi, xi).determinant();
    double p = 1.0;
    for (int i = 0; i < npts; ++i, p *= s) vander(k, i) = p;
  }
  Poly c = vander.colPivHouseholderQr().solve(vals);
  // interpolation noise: interior coefficients at 1e-12, trailing at 1e-10
  const double big = c.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) <= 1e-12 * big) c(i) = 0.0;
  return trim(c, 1e-10);
}

DirectionReport hyperbolic_direction_test(const PrincipalSymbol& sym, const Vector& eta, int n_transverse,
                                          std::uint64_t seed, double tol) {
  const int nb = sym.base_dim();
  if (eta.size() != nb) throw InvalidInput("eta has the wrong dimension");
  const double en = eta.norm();
  if (!(en > 0)) throw DegenerateDirection("eta is zero");
  const Vector ehat = eta / en;
  const Vector ev = eigenvalues(contract_symbol(sym, ehat, ehat));
  if (ev.cwiseAbs().minCoeff() <= tol * sym.norm()) throw DegenerateDirection("m(eta, eta) is singular");

  DirectionReport rep;
  auto check = [&](Vector zeta) {
    zeta -= zeta.dot(ehat) * ehat;
    const double zn = zeta.norm();
    if (zn < 1e-8) return false;
    zeta /= zn;
    ++rep.tried;
    const Poly p = symbol_det_poly(sym, zeta, eta);
    const RootCount rc = real_root_count(p);
    if (!rc.all_real) {
      rep.verdict = DirectionVerdict::CounterexampleZeta;
      rep.zeta = zeta;
      rep.poly = p;
      rep.roots = rc;
      return true;
    }
    return false;
  };

  for (int i = 0; i < nb; ++i)
    if (check(Vector::Unit(nb, i))) return rep;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < n_transverse; ++k) {
    Vector z(nb);
    for (int i = 0; i < nb; ++i) z(i) = normal(rng);
    if (check(z)) return rep;
  }
  return rep;
}

}  // namespace hyperlab
