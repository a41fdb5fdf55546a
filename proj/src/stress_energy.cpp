#include "hyperlab/stress_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace hyperlab {

namespace {

bool lorentzian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double cut = 1e-12 * ev.cwiseAbs().maxCoeff();
  return (ev.array() < -cut).count() == 1 && (ev.array() > cut).count() == ev.size() - 1;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t k = i + 1; k < perm.size(); ++k)
      if (perm[i] > perm[k]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Calls f(tuple) for every tuple of j distinct indices in [0, n).
template <typename F>
void for_each_distinct_tuple(int n, int j, F&& f) {
  std::vector<int> tuple(static_cast<std::size_t>(j), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == j) {
      f(tuple);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      used[c] = true;
      tuple[depth] = c;
      self(self, depth + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

StressEnergy stress_energy_fd(const LagrangianModel& model, const FieldJet& jet, double step) {
  const int n = jet.base_dim();
  const Matrix& ginv = jet.g().inverse();
  const Matrix p = pullback_metric(jet);
  const int rank = numeric_rank(jet.dphi());
  auto lag = [&](const Matrix& inv) {
    const Vector sig = strain_sigmas(inv, p, rank);
    return model.value(jet.s(), sig.tail(n));
  };

  const double h = step * std::max(1.0, ginv.cwiseAbs().maxCoeff());
  const double l0 = lag(ginv);
  Matrix dl(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Matrix e = Matrix::Zero(n, n);
      e(a, b) += 0.5 * h;
      e(b, a) += 0.5 * h;
      const Matrix up = ginv + e;
      const Matrix dn = ginv - e;
      if (!lorentzian(up) || !lorentzian(dn)) {
        throw DomainError("perturbed inverse metric lost Lorentzian signature");
      }
      dl(a, b) = dl(b, a) = (lag(up) - lag(dn)) / (2 * h);
    }
  }
  return {dl - 0.5 * l0 * jet.g().components()};
}

double antisymmetrized_sigma_normalization(int j) {
  double f = 1.0;
  for (int k = 2; k <= j; ++k) f *= k;
  return 1.0 / f;
}

StressEnergy stress_energy_sigma(const FieldJet& jet, int j) {
  const int n = jet.base_dim();
  if (j < 1 || j > n) throw InvalidInput("stress_energy_sigma requires 1 <= j <= m+1");
  const Matrix p = pullback_metric(jet);
  const Matrix d = jet.g().inverse() * p;  // D^x_y

  std::vector<int> perm(static_cast<std::size_t>(j));
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
    signs.push_back(permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Raw contraction: sum_pi sgn(pi) prod_i D^{c_pi(i)}_{c_i}, and its
  // derivative with the first g^{-1} factor freed.
  double raw = 0.0;
  Matrix freed = Matrix::Zero(n, n);
  for_each_distinct_tuple(n, j, [&](const std::vector<int>& c) {
    for (std::size_t k = 0; k < perms.size(); ++k) {
      const auto& pi = perms[k];
      double tail = signs[k];
      for (int i = 1; i < j; ++i) tail *= d(c[pi[i]], c[i]);
      raw += tail * d(c[pi[0]], c[0]);
      freed.col(c[pi[0]]) += tail * p.col(c[0]);
    }
  });

  const double norm = antisymmetrized_sigma_normalization(j);
  const Matrix sym = 0.5 * (freed + freed.transpose());
  return {norm * (j * sym - 0.5 * raw * jet.g().components())};
}

StressEnergy stress_energy(const LagrangianModel& model, const FieldJet& jet) {
  const int n = jet.base_dim();
  const StrainData sd = strain_invariants(jet);
  const ModelEval e = model.evaluate(jet.s(), sd.sigmas.tail(n));
  const Matrix& g = jet.g().components();
  Matrix t = -0.5 * e.value * g;
  for (int j = 1; j <= std::min(n, sd.rank); ++j) {
    if (e.grad(j - 1) == 0.0) continue;
    t += e.grad(j - 1) * (stress_energy_sigma(jet, j).components + 0.5 * sd.sigmas(j) * g);
  }
  return {t};
}

DecReport check_dec(const StressEnergy& t, const BaseMetric& g, int n_samples, std::uint64_t seed, double tol) {
  if (n_samples < 1) throw InvalidInput("check_dec needs n_samples >= 1");
  const Matrix& tt = t.components;
  const int n = g.dim();
  const int m = n - 1;
  const Matrix& frame = g.orthonormal_frame();
  const double tnorm = tt.norm();

  DecReport rep;
  rep.tolerance = tol;
  rep.worst_energy = std::numeric_limits<double>::infinity();
  rep.worst_causality = -std::numeric_limits<double>::infinity();
  double worst_violation = 0.0;

  auto probe = [&](double rapidity, const Vector& dir) {
    Vector x = frame.col(0);
    const double th = std::tanh(rapidity);
    for (int i = 0; i < m; ++i) x += th * dir(i) * frame.col(i + 1);
    const Vector tx = tt * x;
    const double energy = x.dot(tx);
    const double causal = tx.dot(g.inverse() * tx);
    const double xx = x.squaredNorm();
    rep.worst_energy = std::min(rep.worst_energy, energy);
    rep.worst_causality = std::max(rep.worst_causality, causal);
    const double e_cut = tol * tnorm * xx;
    const double c_cut = tol * tnorm * tnorm * xx * g.inverse().norm();
    double violation = 0.0;
    if (energy < -e_cut) violation = std::max(violation, -energy / std::max(tnorm * xx, 1e-300));
    if (causal > c_cut) violation = std::max(violation, causal / std::max(tnorm * tnorm * xx, 1e-300));
    if (violation > worst_violation) {
      worst_violation = violation;
      rep.witness = x;
    }
    ++rep.samples_used;
  };

  std::vector<Vector> dirs;
  for (int i = 0; i < m; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Vector v = Vector::Zero(m);
      v(i) = sgn;
      dirs.push_back(v);
    }
    for (int k = i + 1; k < m; ++k) {
      for (double si : {1.0, -1.0}) {
        for (double sk : {1.0, -1.0}) {
          Vector v = Vector::Zero(m);
          v(i) = si / std::sqrt(2.0);
          v(k) = sk / std::sqrt(2.0);
          dirs.push_back(v);
        }
      }
    }
  }
  for (int step = 0; step <= 20; ++step) {
    const double r = 0.5 * step;
    for (const auto& v : dirs) probe(r, v);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rap(0.0, 10.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < n_samples; ++k) {
    Vector v(m);
    for (int i = 0; i < m; ++i) v(i) = normal(rng);
    if (v.norm() == 0.0) v(0) = 1.0;
    probe(rap(rng), v.normalized());
  }

  rep.holds = worst_violation == 0.0;
  return rep;
}

SufficientConditionReport check_sufficient_conditions(const LagrangianModel& model, const ProbeBox& box,
                                                      int k_probes, std::uint64_t seed, double tol) {
  const auto n = static_cast<Eigen::Index>(box.sigmas.size());
  if (n == 0) throw InvalidInput("probe box needs at least one sigma range");
  if (k_probes < 1) throw InvalidInput("k_probes must be positive");

  SufficientConditionReport rep;
  rep.min_partial = std::numeric_limits<double>::infinity();
  rep.max_hessian_eig = -std::numeric_limits<double>::infinity();

  auto examine = [&](double s, const Vector& sig) {
    const ModelEval e = model.evaluate(s, sig);
    const double gscale = std::max(1.0, e.grad.cwiseAbs().maxCoeff());
    const double min_partial = std::min(e.grad.minCoeff(), e.d_ds);
    rep.min_partial = std::min(rep.min_partial, min_partial);
    if (min_partial < -tol * gscale) rep.nondecreasing = false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (e.hessian + e.hessian.transpose()), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    rep.max_hessian_eig = std::max(rep.max_hessian_eig, top);
    if (top > tol * std::max(1.0, e.hessian.norm())) rep.concave = false;
    ++rep.probes;
  };

  auto lerp = [](const std::pair<double, double>& r, double u) { return r.first + u * (r.second - r.first); };

  // Box corners when affordable, then the center, then uniform draws.
  if ((Eigen::Index(1) << n) <= k_probes / 2) {
    for (Eigen::Index mask = 0; mask < (Eigen::Index(1) << n); ++mask) {
      Vector sig(n);
      for (Eigen::Index j = 0; j < n; ++j) sig(j) = (mask >> j) & 1 ? box.sigmas[j].second : box.sigmas[j].first;
      examine(box.s.first, sig);
    }
  }
  {
    Vector sig(n);
    for (Eigen::Index j = 0; j < n; ++j) sig(j) = lerp(box.sigmas[j], 0.5);
    examine(lerp(box.s, 0.5), sig);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (rep.probes < k_probes) {
    Vector sig(n);
    for (Eigen::Index j = 0; j < n; ++j) sig(j) = lerp(box.sigmas[j], unit(rng));
    examine(lerp(box.s, unit(rng)), sig);
  }

  rep.value_at_zero = model.value(0.0, Vector::Zero(n));
  rep.nonneg_at_zero = rep.value_at_zero >= -tol;
  return rep;
}

}  // namespace hyperlab
