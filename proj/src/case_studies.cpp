#include "hyperlab/case_studies.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlab/directions.hpp"

namespace hyperlab {

FieldJet adapted_frame_jet(const Vector& lambdas, int n, double s) {
  const auto nb = static_cast<int>(lambdas.size());
  if (nb < 2) throw InvalidInput("adapted_frame_jet needs m+1 >= 2 lambdas");
  if (n < 1 || n > nb) throw InvalidInput("adapted_frame_jet needs 1 <= n <= m+1");
  if ((lambdas.array() < 0).any()) throw InvalidInput("lambdas must be nonnegative");

  int to_drop = nb - n;
  std::vector<bool> dropped(nb, false);
  for (int i = 0; i < nb && to_drop > 0; ++i) {
    if (lambdas(i) == 0.0) {
      dropped[i] = true;
      --to_drop;
    }
  }
  if (to_drop > 0) throw RankConstraintViolation("rank(dphi) would exceed the target dimension");

  Matrix dphi = Matrix::Zero(nb, n);
  int slot = 0;
  for (int i = 0; i < nb; ++i) {
    if (dropped[i]) continue;
    dphi(i, slot++) = lambdas(i);
  }
  return FieldJet(BaseMetric::minkowski(nb), TargetMetric::identity(n), std::move(dphi), s);
}

std::string to_string(SkyrmeRegimeKind k) {
  switch (k) {
    case SkyrmeRegimeKind::TimelikeKernel: return "rh-timelike-kernel";
    case SkyrmeRegimeKind::DegenerateKernel: return "rh-degenerate-kernel";
    case SkyrmeRegimeKind::SubcriticalEigenvalue: return "rh-subcritical-eigenvalue";
    case SkyrmeRegimeKind::Breakdown: return "breakdown-ultrahyperbolic";
    case SkyrmeRegimeKind::Marginal: return "marginal";
  }
  return "?";
}

namespace {

SkyrmeRegimeKind regime_from_lambda0_sq(double l0sq, double threshold) {
  if (l0sq == 0.0) return SkyrmeRegimeKind::TimelikeKernel;
  if (std::abs(l0sq - threshold) <= 1e-12 * std::max(1.0, threshold)) return SkyrmeRegimeKind::Marginal;
  return l0sq < threshold ? SkyrmeRegimeKind::SubcriticalEigenvalue : SkyrmeRegimeKind::Breakdown;
}

void check_coefficients(double c1, double c2) {
  if (!(c1 > 0 && c2 > 0)) throw InvalidInput("Skyrme coefficients must be positive");
}

}  // namespace

SkyrmeRegime skyrme_predict(const Vector& lambdas, double c1, double c2, int n) {
  check_coefficients(c1, c2);
  const auto nb = lambdas.size();
  if ((lambdas.array() != 0.0).count() > n)
    throw RankConstraintViolation("at least " + std::to_string(nb - n) + " lambda(s) must vanish");
  SkyrmeRegime r;
  r.lambdas = lambdas;
  r.threshold = c1 / c2;
  r.predicted = regime_from_lambda0_sq(lambdas(0) * lambdas(0), r.threshold);
  return r;
}

SkyrmeRegime skyrme_predict(const FieldJet& jet, double c1, double c2) {
  check_coefficients(c1, c2);
  SkyrmeRegime r;
  r.threshold = c1 / c2;
  const AdaptedFrame frame = adapted_frame(jet);
  r.lambdas = frame.lambdas_sq.cwiseSqrt();
  if (frame.kind == FrameKind::DegenerateKernel) {
    r.predicted = SkyrmeRegimeKind::DegenerateKernel;
    return r;
  }
  const double scale = std::max(1.0, frame.lambdas_sq.maxCoeff());
  double l0sq = frame.lambdas_sq(0);
  if (l0sq <= 1e-12 * scale) l0sq = 0.0;
  r.predicted = regime_from_lambda0_sq(l0sq, r.threshold);
  return r;
}

std::optional<Verdict> expected_verdict(SkyrmeRegimeKind k) {
  switch (k) {
    case SkyrmeRegimeKind::TimelikeKernel:
    case SkyrmeRegimeKind::DegenerateKernel:
    case SkyrmeRegimeKind::SubcriticalEigenvalue: return Verdict::RegularlyHyperbolic;
    case SkyrmeRegimeKind::Breakdown: return Verdict::UltrahyperbolicType;
    case SkyrmeRegimeKind::Marginal: return std::nullopt;
  }
  return std::nullopt;
}

SkyrmePoint skyrme_classify_point(const Vector& lambdas, double c1, double c2, const SearchConfig& search, int n) {
  SkyrmePoint pt;
  pt.regime = skyrme_predict(lambdas, c1, c2, n);
  const FieldJet jet = adapted_frame_jet(lambdas, n);
  const PrincipalSymbol sym = skyrme_symbol(jet, c1, c2);
  std::optional<Vector> preferred;
  const AdaptedFrame frame = adapted_frame(jet);
  if (frame.kind == FrameKind::Generic) preferred = frame.vectors.col(0);
  pt.classification = classify(sym, jet.g(), search, preferred);
  const auto expected = expected_verdict(pt.regime.predicted);
  pt.excluded = !expected.has_value();
  pt.agrees = expected && *expected == pt.classification.verdict;
  return pt;
}

SkyrmeGridReport skyrme_verify_grid(const std::vector<Vector>& grid, double c1, double c2,
                                    const SearchConfig& search, double band, int n) {
  check_coefficients(c1, c2);
  const double threshold = c1 / c2;
  SkyrmeGridReport rep;
  rep.points.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Vector& l = grid[i];
    if (std::abs(l(0) * l(0) - threshold) < band) {
      rep.points[i].regime = skyrme_predict(l, c1, c2, n);
      rep.points[i].excluded = true;
      return;
    }
    rep.points[i] = skyrme_classify_point(l, c1, c2, search, n);
  });
  for (const auto& p : rep.points) {
    if (p.excluded) {
      ++rep.excluded;
      continue;
    }
    ++rep.compared;
    if (p.agrees) ++rep.agreed;
  }
  return rep;
}

std::vector<Vector> default_skyrme_grid() {
  const double values[] = {0.0, 0.5, 1.5, 2.0, 3.0};
  std::vector<Vector> grid;
  for (double a : values)
    for (double b : values)
      for (double c : values) grid.push_back((Vector(4) << a, b, c, 0.0).finished());
  return grid;
}

SpanCheck skyrme_span_check(const PrincipalSymbol& sym, int n_samples, std::uint64_t seed, double tol) {
  SpanCheck sc;
  sc.max_min_eig = -std::numeric_limits<double>::infinity();
  const int nb = sym.base_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> rap(0.0, 3.0);
  const double cut = tol * sym.norm();
  for (int k = 0; k < n_samples; ++k) {
    Vector dir(nb - 1);
    for (int i = 0; i < nb - 1; ++i) dir(i) = normal(rng);
    const double r = k == 0 ? 0.0 : rap(rng);
    Vector x(nb);
    x(0) = std::cosh(r);
    x.tail(nb - 1) = std::sinh(r) * dir.normalized();
    Vector eta = Vector::Zero(nb);
    eta(0) = x(nb - 1);
    eta(nb - 1) = -x(0);
    eta.normalize();
    Eigen::SelfAdjointEigenSolver<Matrix> es(contract_symbol(sym, eta, eta), Eigen::EigenvaluesOnly);
    const double mn = es.eigenvalues().minCoeff();
    sc.max_min_eig = std::max(sc.max_min_eig, mn);
    ++sc.samples;
    if (mn <= cut) ++sc.not_positive;
  }
  return sc;
}

PrincipalSymbol counterexample_tilde_symbol() {
  Matrix blocks = Matrix::Zero(6, 6);
  blocks.block(0, 0, 2, 2) = -Matrix::Identity(2, 2);
  blocks.block(2, 2, 2, 2) << 2, 1, 1, 1;
  blocks.block(4, 4, 2, 2) << 1, 1, 1, 2;
  blocks.block(2, 4, 2, 2) << 1, 1, 1, 1;
  blocks.block(4, 2, 2, 2) << 1, 1, 1, 1;
  return PrincipalSymbol(3, 2, std::move(blocks));
}

CounterexampleReport constant_coefficient_counterexample(double epsilon, const SearchConfig& search, double psi_perturb) {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be finite and >= 0");
  CounterexampleReport rep;
  rep.epsilon = epsilon;
  const PrincipalSymbol tilde = counterexample_tilde_symbol();
  rep.symbol = PrincipalSymbol(3, 2, tilde.blocks() - epsilon * Matrix::Identity(6, 6));

  const Vector e0 = Vector::Unit(3, 0);
  rep.m00 = definiteness(contract_symbol(rep.symbol, e0, e0), search.tol);
  rep.observer = observer_margin(rep.symbol, e0, search);
  if (!rep.observer.positive) {
    throw EpsilonTooLarge("epsilon = " + std::to_string(epsilon) + " destroys the observer field d_t (margin " +
                          std::to_string(rep.observer.min_eig) + ")");
  }

  // psi^1 = y, psi^2 = -x, d_t psi = 0; rows t, x, y
  rep.dpsi = Matrix::Zero(3, 2);
  rep.dpsi(1, 1) = -1.0;
  rep.dpsi(2, 0) = 1.0;
  rep.dpsi.col(0) *= 1.0 + psi_perturb;

  Vector flat(6);
  for (int a = 0; a < 3; ++a)
    for (int A = 0; A < 2; ++A) flat(a * 2 + A) = rep.dpsi(a, A);
  rep.tilde_contraction = flat.dot(tilde.blocks() * flat);
  rep.energy_density = energy_density(rep.symbol, rep.dpsi, e0, e0);
  return rep;
}

TachyonicReport tachyonic_fluid_demo(double b, const SearchConfig& search, int dec_samples, std::uint64_t seed) {
  Matrix dphi = Matrix::Zero(4, 3);
  dphi(0, 0) = dphi(1, 1) = dphi(2, 2) = 1.0;
  const FieldJet jet(BaseMetric::minkowski(4), TargetMetric::identity(3), dphi);
  const LagrangianModel model = models::Fluid{3, b, 0.5};

  TachyonicReport rep;
  rep.b = b;
  const StrainData sd = strain_invariants(jet);
  rep.sigmas = sd.sigmas.tail(4);
  if (!(b + rep.sigmas(2) > 0))
    throw DomainError("b + sigma_3 = " + std::to_string(b + rep.sigmas(2)) + " <= 0 at the demo jet");
  rep.stress = stress_energy_fd(model, jet);
  rep.dec = check_dec(rep.stress, jet.g(), dec_samples, seed);
  const PrincipalSymbol sym = principal_symbol_fd(model, jet);
  std::optional<Vector> preferred;
  const AdaptedFrame frame = adapted_frame(jet);
  if (frame.kind == FrameKind::Generic) preferred = frame.vectors.col(0);
  rep.classification = classify(sym, jet.g(), search, preferred);
  return rep;
}

FluidCausality fluid_causality_check(const LagrangianModel& model, int index, double sigma_n) {
  if (index < 1) throw InvalidInput("sigma index must be >= 1");
  if (!(sigma_n > 0)) throw DomainError("fluid causality needs sigma_n > 0");
  Vector sig = Vector::Zero(index);
  sig(index - 1) = sigma_n;
  const ModelEval e = model.evaluate(0.0, sig);
  FluidCausality fc;
  fc.first = e.grad(index - 1);
  fc.second = e.hessian(index - 1, index - 1);
  const double lhs = 2 * sigma_n * fc.second;
  const double scale = std::max(std::abs(lhs), std::abs(fc.first));
  fc.concave_ok = lhs < -1e-9 * scale;
  const double gap = lhs + fc.first;
  fc.marginal = std::abs(gap) <= 1e-9 * scale;
  fc.hyperbolic_ok = gap > 0 && !fc.marginal;
  return fc;
}

StressEquivalence stress_equivalence(int j, const std::vector<FieldJet>& jets) {
  StressEquivalence rep;
  rep.j = j;
  rep.jets = static_cast<int>(jets.size());
  const LagrangianModel model = sigma_model(j);

  std::vector<Matrix> ref(jets.size()), noether(jets.size()), zform(jets.size());
  parallel_for(jets.size(), [&](std::size_t i) {
    const FieldJet& jet = jets[i];
    if (j < 1 || j > jet.base_dim()) throw InvalidInput("stress_equivalence needs 1 <= j <= m+1");
    ref[i] = stress_energy_sigma(jet, j).raised(jet.g());
    noether[i] = canonical_stress_noether(model, jet).components;
    zform[i] = canonical_stress_linearized(principal_symbol_fd(model, jet), jet.dphi()).components;
  });

  auto fit = [&](const std::vector<Matrix>& other, double& ratio, double& residual) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < jets.size(); ++i) {
      num += (ref[i].array() * other[i].array()).sum();
      den += ref[i].squaredNorm();
    }
    ratio = den > 0 ? num / den : 0.0;
    residual = 0.0;
    for (std::size_t i = 0; i < jets.size(); ++i) {
      const double scale = std::max({other[i].norm(), std::abs(ratio) * ref[i].norm(), 1e-300});
      const double r = (other[i] - ratio * ref[i]).norm();
      if (other[i].norm() == 0.0 && ref[i].norm() == 0.0) continue;
      residual = std::max(residual, r / scale);
    }
    return den;
  };
  const double den = fit(noether, rep.noether_ratio, rep.noether_residual);
  fit(zform, rep.z_ratio, rep.z_residual);

  double other_max = 0.0;
  for (std::size_t i = 0; i < jets.size(); ++i)
    other_max = std::max({other_max, noether[i].cwiseAbs().maxCoeff(), zform[i].cwiseAbs().maxCoeff()});
  rep.all_zero = den == 0.0 && other_max <= 1e-12;
  return rep;
}

FieldJet random_jet(std::mt19937_64& rng, int base_dim, int target_dim, double dphi_scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix lam(base_dim, base_dim);
  // redraw near-singular frames; they make g^{-1} huge and every FD comparison meaningless
  while (true) {
    lam.setIdentity();
    for (int i = 0; i < base_dim; ++i)
      for (int k = 0; k < base_dim; ++k) lam(i, k) += 0.3 * normal(rng);
    const Vector sv = Eigen::JacobiSVD<Matrix>(lam).singularValues();
    if (sv(base_dim - 1) * 10.0 >= sv(0)) break;
  }
  const Matrix eta = BaseMetric::minkowski(base_dim).components();
  Matrix g = lam.transpose() * eta * lam;
  g = (0.5 * (g + g.transpose())).eval();

  Matrix a(target_dim, target_dim);
  for (int i = 0; i < target_dim; ++i)
    for (int k = 0; k < target_dim; ++k) a(i, k) = 0.5 * normal(rng);
  Matrix h = a.transpose() * a + 0.5 * Matrix::Identity(target_dim, target_dim);

  Matrix dphi(base_dim, target_dim);
  for (int i = 0; i < base_dim; ++i)
    for (int k = 0; k < target_dim; ++k) dphi(i, k) = dphi_scale * normal(rng);
  return FieldJet(BaseMetric(g), TargetMetric(h), dphi);
}

FieldJet random_low_rank_jet(std::mt19937_64& rng, int base_dim, int target_dim, int rank) {
  FieldJet base = random_jet(rng, base_dim, target_dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix u(base_dim, rank), v(rank, target_dim);
  for (int i = 0; i < u.size(); ++i) u.data()[i] = normal(rng);
  for (int i = 0; i < v.size(); ++i) v.data()[i] = normal(rng);
  return base.with_dphi(u * v);
}

std::vector<DecSuiteEntry> dec_suite(int jets_per_model, std::uint64_t seed, double tol) {
  const std::vector<std::pair<std::string, LagrangianModel>> catalog = {
      {"sigma1", sigma_model(1)},
      {"sigma2", sigma_model(2)},
      {"sigma3", sigma_model(3)},
      {"skyrme", models::Skyrme{0.5, 0.5}},
      {"born-infeld(b=2)", models::BornInfeld{2.0}},
      {"sqrt(2+sigma3)", models::Fluid{3, 2.0, 0.5}},
  };
  std::vector<DecSuiteEntry> out(catalog.size());
  parallel_for(catalog.size(), [&](std::size_t mi) {
    const auto& [name, model] = catalog[mi];
    DecSuiteEntry& e = out[mi];
    e.model = name;
    e.worst_relative_energy = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed + 7919 * mi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int attempts = 0;
    while (e.jets < jets_per_model) {
      if (++attempts > 50 * jets_per_model) throw DomainError("dec_suite could not draw in-domain jets for " + name);
      FieldJet jet = random_jet(rng, 4, 3);
      if (e.jets % 5 == 4) {
        // tachyonic adapted jet, boosted into a generic frame
        Vector l(4);
        l << 3.0 * unit(rng), 2.0 * unit(rng), 2.0 * unit(rng), 2.0 * unit(rng);
        l(1 + static_cast<int>(3 * unit(rng)) % 3) = 0.0;
        const FieldJet adapted = adapted_frame_jet(l, 3);
        const Matrix lam = jet.g().orthonormal_frame();
        const Matrix lam_inv = lam.inverse();
        Matrix g = lam_inv.transpose() * adapted.g().components() * lam_inv;
        g = (0.5 * (g + g.transpose())).eval();
        jet = FieldJet(BaseMetric(g), adapted.h(), lam_inv.transpose() * adapted.dphi());
      }
      try {
        const StressEnergy t = stress_energy(model, jet);
        const DecReport rep = check_dec(t, jet.g(), 64, seed + e.jets, tol);
        const double tn = t.components.norm();
        if (tn > 0) e.worst_relative_energy = std::min(e.worst_relative_energy, rep.worst_energy / tn);
        ++e.jets;
        if (rep.holds) ++e.passed;
      } catch (const DomainError&) {
        continue;
      }
    }
  });
  return out;
}

}  // namespace hyperlab
