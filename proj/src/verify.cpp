#include "hyperlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "hyperlab/case_studies.hpp"
#include "hyperlab/io.hpp"

namespace hyperlab {

namespace {

using json = nlohmann::json;

// Relative input perturbation for the negative control. Each check applies
// it to one side of its comparison only.
constexpr double kNudge = 1e-13;

struct Ctx {
  const VerifyOptions& opts;
  SearchConfig search;
  double nudge(double amount = kNudge) const { return opts.perturb ? amount : 0.0; }
};

CheckResult tolerance_check(const std::string& name, const Ctx& ctx, double residual, double pinned, json detail = {},
                            bool also = true) {
  CheckResult r;
  r.name = name;
  r.has_tolerance = true;
  r.residual = residual;
  double tol = pinned * ctx.opts.tol_scale;
  if (ctx.opts.tighten.count(name) || ctx.opts.tighten.count("all")) tol *= 1e-6;
  r.tolerance = tol;
  r.passed = std::isfinite(residual) && residual <= tol && also;
  r.detail = detail.is_null() ? json::object() : std::move(detail);
  return r;
}

CheckResult bool_check(const std::string& name, bool ok, json detail = {}) {
  CheckResult r;
  r.name = name;
  r.passed = ok;
  r.detail = detail.is_null() ? json::object() : std::move(detail);
  return r;
}

Vector lambdas4(double a, double b, double c, double d) { return (Vector(4) << a, b, c, d).finished(); }

double skyrme_threshold(const Ctx& ctx) { return ctx.opts.threshold_override.value_or(1.0); }

// Prediction honoring a threshold override (c2 = 1/2 fixed).
SkyrmeRegime predict(const Ctx& ctx, const Vector& l) { return skyrme_predict(l, 0.5 * skyrme_threshold(ctx), 0.5); }

// ---------------------------------------------------------------- skyrme

CheckResult skyrme_symbol_table(const std::string& name, const Ctx& ctx) {
  Vector l = lambdas4(1.5, 0.5, 2.0, 0.0);
  l(0) *= 1.0 + ctx.nudge();
  const Vector f3 = Vector::Unit(4, 3);
  const Vector expected = (Vector(4) << 5.25, 2.75, -1.0, 3.0).finished();
  const Matrix m4 = contract_symbol(skyrme_symbol(adapted_frame_jet(l, 4)), f3, f3);
  const Matrix m3 = contract_symbol(skyrme_symbol(adapted_frame_jet(l, 3)), f3, f3);
  Matrix e4 = expected.asDiagonal();
  Matrix e3 = expected.head(3).asDiagonal();
  const double res = std::max((m4 - e4).cwiseAbs().maxCoeff(), (m3 - e3).cwiseAbs().maxCoeff());
  return tolerance_check(name, ctx, res, 1e-8, {{"m33_diagonal", to_json(Vector(m4.diagonal()))}});
}

CheckResult skyrme_symbol_fd_table(const std::string& name, const Ctx& ctx) {
  Vector l = lambdas4(1.5, 0.5, 2.0, 0.0);
  l(0) *= 1.0 + ctx.nudge();
  const Vector f3 = Vector::Unit(4, 3);
  const Matrix m = contract_symbol(principal_symbol_fd(models::Skyrme{0.5, 0.5}, adapted_frame_jet(l, 4)), f3, f3);
  const Matrix expected = (Vector(4) << 5.25, 2.75, -1.0, 3.0).finished().asDiagonal();
  return tolerance_check(name, ctx, (m - expected).cwiseAbs().maxCoeff(), 1e-6,
                         {{"m33_diagonal", to_json(Vector(m.diagonal()))}});
}

CheckResult skyrme_cross_blocks(const std::string& name, const Ctx& ctx) {
  Vector l = lambdas4(1.5, 0.5, 2.0, 0.8);
  l(0) *= 1.0 + ctx.nudge();
  const PrincipalSymbol sym = skyrme_symbol(adapted_frame_jet(l, 4));
  // (ab)-symmetrized storage: the one-sided block m^{30} appears as m^{30} + m^{03}
  const Vector f0 = Vector::Unit(4, 0), f1 = Vector::Unit(4, 1), f3 = Vector::Unit(4, 3);
  const Matrix m30 = contract_symbol(sym, f3, f0) + contract_symbol(sym, f0, f3);
  const Matrix m31 = contract_symbol(sym, f3, f1) + contract_symbol(sym, f1, f3);
  Matrix e30 = Matrix::Zero(4, 4), e31 = Matrix::Zero(4, 4);
  e30(3, 0) = e30(0, 3) = -0.8 * 1.5;
  e31(3, 1) = e31(1, 3) = 0.8 * 0.5;
  const double res = std::max((m30 - e30).cwiseAbs().maxCoeff(), (m31 - e31).cwiseAbs().maxCoeff());
  return tolerance_check(name, ctx, res, 1e-8, {{"m30_30", m30(3, 0)}, {"m31_31", m31(3, 1)}});
}

CheckResult skyrme_f2_entry(const std::string& name, const Ctx& ctx) {
  Vector l = lambdas4(1.2, 0.0, 2.0, 1.0);
  l(0) *= 1.0 + ctx.nudge();
  const Vector f3 = Vector::Unit(4, 3);
  // lambda_1 = 0 has no target slot: frame 2 lands in target slot 1
  const Matrix m = contract_symbol(skyrme_symbol(adapted_frame_jet(l, 3)), f3, f3);
  return tolerance_check(name, ctx, std::abs(m(1, 1) - (-0.44)), 1e-8, {{"entry", m(1, 1)}});
}

CheckResult skyrme_grid(const std::string& name, const Ctx& ctx) {
  const SkyrmeGridReport g = skyrme_verify_grid(default_skyrme_grid(), 0.5, 0.5, ctx.search);
  int compared = 0, agreed = 0;
  json mismatches = json::array();
  for (const auto& p : g.points) {
    if (p.excluded) continue;
    const auto expected = expected_verdict(predict(ctx, p.regime.lambdas).predicted);
    if (!expected) continue;
    ++compared;
    if (*expected == p.classification.verdict) {
      ++agreed;
    } else {
      mismatches.push_back({{"lambdas", to_json(p.regime.lambdas)}, {"verdict", to_string(p.classification.verdict)}});
    }
  }
  return bool_check(name, compared >= 100 && agreed == compared,
                    {{"compared", compared}, {"agreed", agreed}, {"excluded", g.excluded}, {"mismatches", mismatches}});
}

CheckResult skyrme_crutchfield_bell(const std::string& name, const Ctx& ctx) {
  const Vector l = lambdas4(1.1, 2.0, 3.0, 0.0);
  const SkyrmePoint p = skyrme_classify_point(l, 0.5, 0.5, ctx.search);
  const double bound = 1.0 + l.tail(3).squaredNorm();
  const bool bound_fails = l(0) * l(0) <= bound;
  const bool predicted_breakdown = predict(ctx, l).predicted == SkyrmeRegimeKind::Breakdown;
  return bool_check(name,
                    bound_fails && predicted_breakdown && p.classification.verdict == Verdict::UltrahyperbolicType,
                    {{"verdict", to_string(p.classification.verdict)},
                     {"lambda0_sq", l(0) * l(0)},
                     {"crutchfield_bell_bound", bound}});
}

CheckResult skyrme_span_point(const std::string& name, const Ctx& ctx, const Vector& l) {
  const SkyrmePoint p = skyrme_classify_point(l, 0.5, 0.5, ctx.search);
  const SpanCheck sc = skyrme_span_check(skyrme_symbol(adapted_frame_jet(l, 3)), 200, 17);
  const bool predicted_breakdown = predict(ctx, l).predicted == SkyrmeRegimeKind::Breakdown;
  return bool_check(name,
                    predicted_breakdown && p.classification.verdict == Verdict::UltrahyperbolicType &&
                        sc.not_positive == sc.samples,
                    {{"verdict", to_string(p.classification.verdict)},
                     {"violating_eta", to_json(p.classification.violating_eta)},
                     {"observer_margin", p.classification.observer_margin},
                     {"span_samples", sc.samples},
                     {"span_not_positive", sc.not_positive},
                     {"span_max_min_eig", sc.max_min_eig}});
}

CheckResult skyrme_subcritical(const std::string& name, const Ctx& ctx) {
  json detail = json::array();
  bool ok = true;
  for (const Vector& l : {lambdas4(0.9, 1.0, 2.0, 0.0), lambdas4(0.0, 1.0, 2.0, 0.0)}) {
    const SkyrmePoint p = skyrme_classify_point(l, 0.5, 0.5, ctx.search);
    const PrincipalSymbol sym = skyrme_symbol(adapted_frame_jet(l, 3));
    const WitnessCheck wc = verify_witness(sym, p.classification, ctx.search);
    const auto expected = expected_verdict(predict(ctx, l).predicted);
    ok = ok && expected == Verdict::RegularlyHyperbolic && p.classification.verdict == Verdict::RegularlyHyperbolic &&
         wc.passed;
    detail.push_back({{"lambdas", to_json(l)},
                      {"predicted", to_string(p.regime.predicted)},
                      {"verdict", to_string(p.classification.verdict)},
                      {"witness_rechecked", wc.passed},
                      {"time_margin", wc.time_margin},
                      {"observer_margin", wc.observer_margin}});
  }
  return bool_check(name, ok, {{"points", detail}});
}

CheckResult skyrme_det_poly(const std::string& name, const Ctx&) {
  const PrincipalSymbol sym = skyrme_symbol(adapted_frame_jet(lambdas4(1.5, 0.5, 2.0, 0.0), 3));
  const Poly p = symbol_det_poly(sym, Vector::Unit(4, 3), Vector::Unit(4, 0));
  const RootCount rc = real_root_count(p);
  const double big = p.cwiseAbs().maxCoeff();
  bool even = true;
  for (Eigen::Index i = 1; i < p.size(); i += 2) even = even && std::abs(p(i)) <= 1e-10 * big;
  const bool ok = degree(p) == 6 && even && p(0) < 0 && p(p.size() - 1) < 0 && rc.sturm_count <= 4;
  return bool_check(name, ok,
                    {{"coefficients", to_json(p)},
                     {"sturm_count", rc.sturm_count},
                     {"descartes_bound", rc.descartes_bound},
                     {"degree", rc.degree}});
}

CheckResult skyrme_f3_direction(const std::string& name, const Ctx&) {
  const PrincipalSymbol sym = skyrme_symbol(adapted_frame_jet(lambdas4(1.5, 0.5, 2.0, 0.0), 3));
  const DirectionReport d = hyperbolic_direction_test(sym, Vector::Unit(4, 3), 64, 5);
  return bool_check(name, d.verdict == DirectionVerdict::CounterexampleZeta,
                    {{"zeta", to_json(d.zeta)}, {"sturm_count", d.roots.sturm_count}, {"degree", d.roots.degree},
                     {"tried", d.tried}});
}

// ---------------------------------------------------------------- counterexample

CheckResult ce_m00(const std::string& name, const Ctx& ctx) {
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, ctx.search);
  return bool_check(name, r.m00 == Definiteness::NegDef, {{"m00", to_string(r.m00)}});
}

CheckResult ce_observer(const std::string& name, const Ctx& ctx) {
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, ctx.search);
  return bool_check(name, r.observer.positive,
                    {{"min_eig", r.observer.min_eig}, {"argmin_eta", to_json(r.observer.argmin_eta)}});
}

CheckResult ce_contraction(const std::string& name, const Ctx& ctx) {
  // psi is in the kernel of m~, so the contraction moves quadratically
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, ctx.search, ctx.nudge(1e-7));
  return tolerance_check(name, ctx, std::abs(r.tilde_contraction), 1e-12, {{"contraction", r.tilde_contraction}});
}

CheckResult ce_energy(const std::string& name, const Ctx& ctx) {
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, ctx.search, ctx.nudge(1e-10));
  return tolerance_check(name, ctx, std::abs(r.energy_density - (-0.02)), 1e-10,
                         {{"energy_density", r.energy_density}}, r.energy_density < 0);
}

CheckResult ce_eps_zero(const std::string& name, const Ctx& ctx) {
  const double eps = ctx.nudge(1e-9);
  const CounterexampleReport r = constant_coefficient_counterexample(eps, ctx.search);
  // brute force over the eta-circle of the unperturbed pencil
  const PrincipalSymbol tilde = counterexample_tilde_symbol();
  double brute = std::numeric_limits<double>::infinity();
  constexpr double kPi = 3.14159265358979323846;
  for (int k = 0; k < 10000; ++k) {
    const double th = kPi * k / 10000.0;
    const Vector eta = (Vector(3) << 0.0, std::cos(th), std::sin(th)).finished();
    Eigen::SelfAdjointEigenSolver<Matrix> es(contract_symbol(tilde, eta, eta), Eigen::EigenvaluesOnly);
    brute = std::min(brute, es.eigenvalues().minCoeff());
  }
  return tolerance_check(name, ctx, std::abs(r.observer.min_eig - brute), 1e-6,
                         {{"search_min_eig", r.observer.min_eig}, {"brute_force_min_eig", brute},
                          {"energy_density", r.energy_density}},
                         r.observer.positive);
}

CheckResult ce_too_large(const std::string& name, const Ctx& ctx) {
  bool threw = false;
  std::string msg;
  try {
    constant_coefficient_counterexample(10.0, ctx.search);
  } catch (const EpsilonTooLarge& e) {
    threw = true;
    msg = e.what();
  }
  return bool_check(name, threw, {{"error", msg}});
}

CheckResult ce_classify(const std::string& name, const Ctx& ctx) {
  const CounterexampleReport r = constant_coefficient_counterexample(0.01, ctx.search);
  const ClassificationReport c = classify(r.symbol, BaseMetric::minkowski(3), ctx.search);
  const Vector e0 = Vector::Unit(3, 0);
  const bool ok = c.verdict == Verdict::RegularlyHyperbolic && (c.t_covector - e0).norm() <= 1e-6 &&
                  c.x_vector.normalized().isApprox(e0, 1e-12);
  return bool_check(name, ok,
                    {{"verdict", to_string(c.verdict)}, {"t_covector", to_json(c.t_covector)},
                     {"x_vector", to_json(c.x_vector)}, {"energy_density", r.energy_density}});
}

// ---------------------------------------------------------------- fluid

CheckResult fluid_power_law(const std::string& name, const Ctx&) {
  bool ok = true;
  json rows = json::array();
  for (int k = 1; k <= 30; ++k) {
    const double p = k / 20.0;
    for (double sigma : {1.0, 2.7}) {
      const FluidCausality fc = fluid_causality_check(models::Fluid{3, 0.0, p}, 3, sigma);
      const bool both = fc.concave_ok && fc.hyperbolic_ok;
      ok = ok && both == (p > 0.5 && p < 1.0) && fc.marginal == (k == 10);
      if (k == 20) ok = ok && !fc.concave_ok;
      if (sigma == 1.0)
        rows.push_back({{"p", p}, {"concave_ok", fc.concave_ok}, {"hyperbolic_ok", fc.hyperbolic_ok},
                        {"marginal", fc.marginal}});
    }
  }
  return bool_check(name, ok, {{"sweep", rows}});
}

CheckResult fluid_marginal_gap(const std::string& name, const Ctx& ctx) {
  const double p = 0.5 * (1.0 + ctx.nudge(1e-12));
  double worst = 0.0;
  for (double sigma : {1.0, 2.7, 0.3}) {
    const FluidCausality fc = fluid_causality_check(models::Fluid{3, 0.0, p}, 3, sigma);
    const double lhs = 2 * sigma * fc.second;
    worst = std::max(worst, std::abs(lhs + fc.first) / std::max(std::abs(lhs), std::abs(fc.first)));
  }
  return tolerance_check(name, ctx, worst, 1e-9, {{"exponent", p}});
}

CheckResult fluid_tachyonic_dec(const std::string& name, const Ctx& ctx) {
  const TachyonicReport r = tachyonic_fluid_demo(2.0, ctx.search);
  return bool_check(name, r.dec.holds,
                    {{"sigmas", to_json(r.sigmas)}, {"worst_energy", r.dec.worst_energy},
                     {"worst_causality", r.dec.worst_causality}, {"T", to_json(r.stress.components)}});
}

CheckResult fluid_tachyonic_breakdown(const std::string& name, const Ctx& ctx) {
  const TachyonicReport r = tachyonic_fluid_demo(2.0, ctx.search);
  return bool_check(name, r.classification.verdict != Verdict::RegularlyHyperbolic,
                    {{"verdict", to_string(r.classification.verdict)},
                     {"time_margin", r.classification.time_margin},
                     {"observer_margin", r.classification.observer_margin},
                     {"violating_eta", to_json(r.classification.violating_eta)}});
}

CheckResult fluid_tachyonic_domain(const std::string& name, const Ctx& ctx) {
  bool threw = false;
  try {
    tachyonic_fluid_demo(0.5, ctx.search);
  } catch (const DomainError&) {
    threw = true;
  }
  return bool_check(name, threw);
}

// ---------------------------------------------------------------- stress

std::vector<FieldJet> jet_sample(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::pair<int, int> dims[] = {{4, 3}, {4, 4}, {3, 2}, {4, 2}, {2, 1}};
  std::vector<FieldJet> jets;
  for (int i = 0; i < count; ++i) {
    const auto [nb, nt] = dims[i % 5];
    jets.push_back(random_jet(rng, nb, nt));
  }
  return jets;
}

FieldJet nudged(const FieldJet& jet, double amount) {
  if (amount == 0.0) return jet;
  return jet.with_dphi(jet.dphi() * (1.0 + amount));
}

CheckResult stress_newton(const std::string& name, const Ctx& ctx) {
  double worst = 0.0;
  for (const FieldJet& jet : jet_sample(500, 101)) {
    const StrainData sd = strain_invariants(jet);
    const Vector newton = newton_sigma_oracle(sd.strain * (1.0 + ctx.nudge()));
    const double scale = std::max(1.0, std::pow(sd.strain.norm(), static_cast<double>(sd.strain.rows())));
    const Vector fl = faddeev_leverrier_sigmas(sd.strain);
    worst = std::max(worst, (fl - newton).cwiseAbs().maxCoeff() / scale);
  }
  return tolerance_check(name, ctx, worst, 1e-10, {{"jets", 500}});
}

CheckResult stress_sigma_vs_fd(const std::string& name, const Ctx& ctx) {
  double worst = 0.0;
  int compared = 0;
  for (const FieldJet& jet : jet_sample(500, 202)) {
    // j > rank is the vanishing check's job; both sides are roundoff there
    for (int j = 1; j <= std::min(3, strain_invariants(jet).rank); ++j) {
      const Matrix fd = stress_energy_fd(sigma_model(j), jet).components;
      const Matrix exact = stress_energy_sigma(nudged(jet, ctx.nudge()), j).components;
      const double sigma = strain_invariants(jet).sigmas(j);
      const double scale = exact.norm() + 0.5 * std::abs(sigma) * jet.g().components().norm();
      if (scale == 0.0) continue;
      worst = std::max(worst, (fd - exact).norm() / scale);
      ++compared;
    }
  }
  return tolerance_check(name, ctx, worst, 1e-6, {{"comparisons", compared}});
}

CheckResult stress_symbol_vs_fd(const std::string& name, const Ctx& ctx) {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const FieldJet jet = random_jet(rng, 4, 3);
    const PrincipalSymbol fd = principal_symbol_fd(models::Skyrme{0.5, 0.5}, jet);
    const PrincipalSymbol closed = skyrme_symbol(nudged(jet, ctx.nudge()));
    worst = std::max(worst, (fd.blocks() - closed.blocks()).cwiseAbs().maxCoeff() / closed.norm());
  }
  return tolerance_check(name, ctx, worst, 1e-6, {{"jets", 500}});
}

CheckResult stress_prop1(const std::string& name, const Ctx& ctx) {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  int cases = 0;
  for (int i = 0; i < 200; ++i) {
    const int rank = i % 3;
    FieldJet jet = random_low_rank_jet(rng, 4, 3, rank);
    if (ctx.opts.perturb) {
      Matrix noise(4, 3);
      for (int k = 0; k < noise.size(); ++k) noise.data()[k] = normal(rng);
      // the extra strain eigenvalues are quadratic in the noise
      jet = jet.with_dphi(jet.dphi() + 1e-7 * std::max(1.0, jet.dphi().norm()) * noise);
    }
    const Matrix d = jet.g().inverse() * pullback_metric(jet);
    for (int j = rank + 1; j <= 4; ++j) {
      const double scale = jet.g().components().norm() * std::pow(std::max(1.0, d.norm()), j);
      worst = std::max(worst, stress_energy_sigma(jet, j).components.norm() / scale);
      ++cases;
    }
  }
  return tolerance_check(name, ctx, worst, 1e-10, {{"jets", 200}, {"cases", cases}});
}

CheckResult stress_noether(const std::string& name, const Ctx& ctx, int j, double pinned) {
  const std::vector<FieldJet> jets = jet_sample(100, 505);
  double worst = 0.0;
  for (const FieldJet& jet : jets) {
    if (j > strain_invariants(jet).rank) continue;
    const Matrix noether = canonical_stress_noether(sigma_model(j), jet).components;
    const Matrix ref = 2.0 * stress_energy_sigma(nudged(jet, ctx.nudge()), j).raised(jet.g());
    const double scale = std::max(ref.norm(), 1e-300);
    worst = std::max(worst, (noether - ref).norm() / scale);
  }
  return tolerance_check(name, ctx, worst, pinned, {{"j", j}, {"ratio", 2.0}});
}

CheckResult stress_zform_j1(const std::string& name, const Ctx& ctx) {
  double worst = 0.0;
  for (const FieldJet& jet : jet_sample(100, 606)) {
    const Matrix q = canonical_stress_linearized(principal_symbol_fd(sigma_model(1), jet), jet.dphi()).components;
    const Matrix ref = 4.0 * stress_energy_sigma(nudged(jet, ctx.nudge()), 1).raised(jet.g());
    worst = std::max(worst, (q - ref).norm() / std::max(ref.norm(), 1e-300));
  }
  return tolerance_check(name, ctx, worst, 1e-6, {{"ratio", 4.0}});
}

CheckResult stress_j2_report(const std::string& name, const Ctx&) {
  std::mt19937_64 rng(707);
  std::vector<FieldJet> jets;
  for (int i = 0; i < 100; ++i) jets.push_back(random_jet(rng, 4, 3));
  const StressEquivalence se = stress_equivalence(2, jets);
  // reported, not asserted
  return bool_check(name, std::isfinite(se.noether_ratio) && std::isfinite(se.z_ratio),
                    {{"asserted", false},
                     {"jets", se.jets},
                     {"noether_ratio", se.noether_ratio},
                     {"noether_residual", se.noether_residual},
                     {"z_ratio", se.z_ratio},
                     {"z_residual", se.z_residual}});
}

CheckResult stress_dec_suite(const std::string& name, const Ctx&) {
  const std::vector<DecSuiteEntry> entries = dec_suite(500, 808);
  bool ok = true;
  json rows = json::array();
  for (const auto& e : entries) {
    ok = ok && e.passed == e.jets && e.jets == 500;
    rows.push_back({{"model", e.model}, {"jets", e.jets}, {"passed", e.passed},
                    {"worst_relative_energy", e.worst_relative_energy}});
  }
  return bool_check(name, ok, {{"models", rows}});
}

// ---------------------------------------------------------------- sturm

struct Constructed {
  Poly poly;
  int distinct_real = 0;
  bool all_real = false;
};

std::vector<Constructed> constructed_polys(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> degree_dist(1, 8);
  std::uniform_real_distribution<double> root(-3.0, 3.0), imag(0.2, 2.0), scale(0.5, 4.0);
  std::vector<Constructed> out;
  while (static_cast<int>(out.size()) < count) {
    const int target = degree_dist(rng);
    std::vector<double> reals, distinct;
    std::vector<std::pair<double, double>> pairs;
    int deg = 0;
    while (deg < target) {
      const int kind = static_cast<int>(rng() % 3);
      if (kind == 2 && deg + 2 <= target) {
        pairs.emplace_back(root(rng), imag(rng));
        deg += 2;
        continue;
      }
      double r = root(rng);
      bool close = false;
      for (double d : distinct) close = close || std::abs(d - r) < 0.1;
      if (close) continue;
      distinct.push_back(r);
      reals.push_back(r);
      ++deg;
      if (kind == 1 && deg < target) {  // double root
        reals.push_back(r);
        ++deg;
      }
    }
    Constructed c;
    c.poly = scale(rng) * from_roots(reals, pairs);
    c.distinct_real = static_cast<int>(distinct.size());
    c.all_real = pairs.empty();
    out.push_back(std::move(c));
  }
  return out;
}

CheckResult sturm_constructed(const std::string& name, const Ctx&) {
  int agree = 0, real_agree = 0;
  const auto polys = constructed_polys(1000, 909);
  for (const auto& c : polys) {
    const RootCount rc = real_root_count(c.poly);
    if (rc.sturm_count == c.distinct_real) ++agree;
    if (rc.all_real == c.all_real) ++real_agree;
  }
  return bool_check(name, agree == 1000 && real_agree == 1000,
                    {{"polynomials", 1000}, {"count_agree", agree}, {"real_rooted_agree", real_agree}});
}

CheckResult sturm_companion(const std::string& name, const Ctx&) {
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> degree_dist(1, 8);
  int compared = 0, agree = 0, filtered = 0;
  while (compared < 1000) {
    const int d = degree_dist(rng);
    Poly p(d + 1);
    for (int i = 0; i <= d; ++i) p(i) = normal(rng);
    if (std::abs(p(d)) < 1e-3) continue;
    Matrix comp = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -p(i) / p(d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix>(comp, false).eigenvalues();
    bool near_multiple = false;
    for (int i = 0; i < d; ++i) {
      const double im = std::abs(ev(i).imag());
      if (im > 0 && im < 1e-6) near_multiple = true;
      for (int k = i + 1; k < d; ++k) near_multiple = near_multiple || std::abs(ev(i) - ev(k)) < 1e-6;
    }
    if (near_multiple) {
      ++filtered;
      continue;
    }
    int real = 0;
    for (int i = 0; i < d; ++i) real += ev(i).imag() == 0.0;
    ++compared;
    const RootCount rc = real_root_count(p);
    int positive_real = 0;
    for (int i = 0; i < d; ++i) positive_real += ev(i).imag() == 0.0 && ev(i).real() > 0;
    if (rc.sturm_count == real && positive_real <= rc.descartes_bound) ++agree;
  }
  return bool_check(name, agree == compared, {{"compared", compared}, {"agree", agree}, {"filtered", filtered}});
}

CheckResult sturm_chain_residual(const std::string& name, const Ctx& ctx) {
  double worst = 0.0;
  for (const auto& c : constructed_polys(200, 1111)) {
    SturmChain chain = sturm_chain(square_free_part(c.poly));
    if (ctx.opts.perturb && !chain.quotients.empty()) chain.quotients[0] *= 1.0 + kNudge;
    worst = std::max(worst, chain.residual());
  }
  return tolerance_check(name, ctx, worst, 1e-8, {{"chains", 200}});
}

// ---------------------------------------------------------------- registry

using CheckFn = std::function<CheckResult(const std::string&, const Ctx&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"skyrme.symbol_table", skyrme_symbol_table},
      {"skyrme.symbol_fd_table", skyrme_symbol_fd_table},
      {"skyrme.cross_blocks", skyrme_cross_blocks},
      {"skyrme.f2_entry", skyrme_f2_entry},
      {"skyrme.grid", skyrme_grid},
      {"skyrme.crutchfield_bell", skyrme_crutchfield_bell},
      {"skyrme.breakdown_point",
       [](const std::string& n, const Ctx& c) { return skyrme_span_point(n, c, lambdas4(1.5, 0.5, 2.0, 0.0)); }},
      {"skyrme.second_breakdown_point",
       [](const std::string& n, const Ctx& c) { return skyrme_span_point(n, c, lambdas4(1.2, 0.0, 2.0, 1.0)); }},
      {"skyrme.subcritical_points", skyrme_subcritical},
      {"skyrme.det_poly", skyrme_det_poly},
      {"skyrme.f3_direction", skyrme_f3_direction},
      {"counterexample.m00", ce_m00},
      {"counterexample.observer", ce_observer},
      {"counterexample.contraction", ce_contraction},
      {"counterexample.energy_density", ce_energy},
      {"counterexample.epsilon_zero", ce_eps_zero},
      {"counterexample.epsilon_too_large", ce_too_large},
      {"counterexample.classify", ce_classify},
      {"fluid.power_law", fluid_power_law},
      {"fluid.marginal_gap", fluid_marginal_gap},
      {"fluid.tachyonic_dec", fluid_tachyonic_dec},
      {"fluid.tachyonic_breakdown", fluid_tachyonic_breakdown},
      {"fluid.tachyonic_domain", fluid_tachyonic_domain},
      {"stress.newton_oracle", stress_newton},
      {"stress.sigma_vs_fd", stress_sigma_vs_fd},
      {"stress.symbol_vs_fd", stress_symbol_vs_fd},
      {"stress.rank_vanishing", stress_prop1},
      {"stress.noether_j1", [](const std::string& n, const Ctx& c) { return stress_noether(n, c, 1, 1e-8); }},
      {"stress.noether_j2", [](const std::string& n, const Ctx& c) { return stress_noether(n, c, 2, 1e-6); }},
      {"stress.noether_j3", [](const std::string& n, const Ctx& c) { return stress_noether(n, c, 3, 1e-6); }},
      {"stress.z_form_j1", stress_zform_j1},
      {"stress.z_form_j2_report", stress_j2_report},
      {"stress.dec_suite", stress_dec_suite},
      {"sturm.constructed", sturm_constructed},
      {"sturm.companion", sturm_companion},
      {"sturm.chain_residual", sturm_chain_residual},
  };
  return r;
}

const std::map<std::string, std::vector<std::string>>& suites() {
  static const std::map<std::string, std::vector<std::string>> s = [] {
    std::map<std::string, std::vector<std::string>> m;
    for (const auto& [name, fn] : registry()) {
      const std::string prefix = name.substr(0, name.find('.'));
      m[prefix].push_back(name);
      m["all"].push_back(name);
    }
    m["paper"] = {"skyrme.symbol_table",       "skyrme.symbol_fd_table",     "skyrme.grid",
                  "skyrme.crutchfield_bell",   "counterexample.m00",         "counterexample.observer",
                  "counterexample.contraction", "counterexample.energy_density", "stress.dec_suite",
                  "stress.rank_vanishing",     "stress.newton_oracle",       "stress.sigma_vs_fd",
                  "stress.symbol_vs_fd",       "sturm.constructed",          "sturm.companion",
                  "skyrme.det_poly",           "skyrme.f3_direction",        "stress.noether_j1",
                  "stress.z_form_j2_report",   "fluid.power_law"};
    return m;
  }();
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"paper", "skyrme", "counterexample", "fluid", "stress", "sturm", "all"};
  return names;
}

std::vector<std::string> suite_checks(const std::string& suite) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw InvalidInput("unknown suite '" + suite + "'");
  return it->second;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  std::vector<std::string> names = suite_checks(suite);
  for (const auto& o : opts.only)
    if (std::find(names.begin(), names.end(), o) == names.end())
      throw InvalidInput("check '" + o + "' is not part of suite '" + suite + "'");
  for (const auto& t : opts.tighten)
    if (t != "all" && std::none_of(registry().begin(), registry().end(), [&](const auto& e) { return e.first == t; }))
      throw InvalidInput("unknown check '" + t + "'");
  if (!(opts.tol_scale > 0) || !std::isfinite(opts.tol_scale)) throw InvalidInput("tolerance scale must be positive");
  if (opts.threshold_override && !(*opts.threshold_override > 0)) throw InvalidInput("threshold must be positive");

  Ctx ctx{opts, SearchConfig{}};
  std::vector<CheckResult> out;
  for (const auto& name : names) {
    if (!opts.only.empty() && !opts.only.count(name)) continue;
    const auto& fn = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; })->second;
    try {
      out.push_back(fn(name, ctx));
    } catch (const std::exception& e) {
      CheckResult r = bool_check(name, false, {{"error", e.what()}});
      out.push_back(std::move(r));
    }
  }
  return out;
}

nlohmann::json suite_report(const std::string& suite, const VerifyOptions& opts, const std::vector<CheckResult>& results) {
  json checks = json::array();
  int passed = 0;
  for (const auto& r : results) {
    json c = {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (r.has_tolerance) {
      c["residual"] = r.residual;
      c["tolerance"] = r.tolerance;
    }
    checks.push_back(std::move(c));
    passed += r.passed;
  }
  json options = {{"tol_scale", opts.tol_scale}, {"perturb", opts.perturb}};
  options["tighten"] = json(std::vector<std::string>(opts.tighten.begin(), opts.tighten.end()));
  options["only"] = json(std::vector<std::string>(opts.only.begin(), opts.only.end()));
  if (opts.threshold_override) options["threshold_override"] = *opts.threshold_override;
  return {{"suite", suite},
          {"options", options},
          {"checks", checks},
          {"passed", passed},
          {"failed", static_cast<int>(results.size()) - passed},
          {"ok", passed == static_cast<int>(results.size())}};
}

std::string format_table(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    os << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ');
    if (r.has_tolerance) os << "residual " << format_number(r.residual) << " <= " << format_number(r.tolerance);
    if (r.detail.contains("error")) os << "error: " << r.detail["error"].get<std::string>();
    os << "\n";
  }
  return os.str();
}

}  // namespace hyperlab
