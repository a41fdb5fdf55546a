#include "hyperlab/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "hyperlab/case_studies.hpp"
#include "hyperlab/directions.hpp"
#include "hyperlab/io.hpp"
#include "hyperlab/stress_energy.hpp"

namespace hyperlab {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kAllChecks = {"invariants", "stress_energy", "dec", "symbol", "classify", "det_poly"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidInput(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw InvalidInput("unknown key '" + it.key() + "' in " + where);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidInput(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(where + " must be finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + " must be an integer");
  return j.get<int>();
}

Vector vector_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InvalidInput(where + " must be a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], where);
  return v;
}

Matrix matrix_from(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InvalidInput(where + " must have " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Vector row = vector_from(j[r], where);
    if (row.size() != cols) throw InvalidInput(where + " must have " + std::to_string(cols) + " columns");
    m.row(r) = row.transpose();
  }
  return m;
}

SearchConfig search_field(SearchConfig s, const std::string& key, double v) {
  auto positive_int = [&](int& field) {
    if (v != std::floor(v) || v < 1 || v > 1e7) throw InvalidInput("search." + key + " must be a positive integer");
    field = static_cast<int>(v);
  };
  if (key == "n_dirs") positive_int(s.n_dirs);
  else if (key == "refine_iters") {
    if (v != std::floor(v) || v < 0 || v > 1e6) throw InvalidInput("search.refine_iters must be a nonnegative integer");
    s.refine_iters = static_cast<int>(v);
  } else if (key == "n_spatial") positive_int(s.n_spatial);
  else if (key == "rapidity_max") {
    if (!(v >= 0) || v > 50) throw InvalidInput("search.rapidity_max must lie in [0, 50]");
    s.rapidity_max = v;
  } else if (key == "rapidity_step") {
    if (!(v > 0)) throw InvalidInput("search.rapidity_step must be positive");
    s.rapidity_step = v;
  } else if (key == "tol") {
    if (!(v > 0) || v >= 1) throw InvalidInput("search.tol must lie in (0, 1)");
    s.tol = v;
  } else if (key == "seed") {
    if (v != std::floor(v) || v < 0 || v > 9007199254740992.0) throw InvalidInput("search.seed must be a nonnegative integer");
    s.seed = static_cast<std::uint64_t>(v);
  } else {
    throw InvalidInput("unknown key '" + key + "' in search");
  }
  return s;
}

// Frame-adapted lambdas expressed in the coordinates of arbitrary g and h:
// dphi = F^{-T} diag(lambda) E^T with F, E orthonormal frames.
Matrix lambdas_dphi(const Vector& lambdas, int n, const BaseMetric& g, const TargetMetric& h) {
  const Matrix frame_dphi = adapted_frame_jet(lambdas, n).dphi();
  const Matrix f = g.orthonormal_frame();
  const Eigen::LLT<Matrix> llt(h.components());
  const Matrix e = llt.matrixU().solve(Matrix::Identity(n, n));  // E^T h E = I
  return f.transpose().fullPivLu().solve(frame_dphi) * e.transpose();
}

json definiteness_json(const Matrix& m) { return to_string(definiteness(m)); }

json classification_json(const ClassificationReport& c) {
  json j = {{"verdict", to_string(c.verdict)},
            {"time_margin", c.time_margin},
            {"observer_margin", c.observer_margin},
            {"scale", c.scale},
            {"marginal", c.marginal},
            {"x_candidates_tried", c.x_candidates_tried},
            {"t_covector", to_json(c.t_covector)},
            {"x_vector", to_json(c.x_vector)},
            {"resolution", search_to_json(c.resolution)}};
  if (c.violating_eta.size()) j["violating_eta"] = to_json(c.violating_eta);
  return j;
}

}  // namespace

SearchConfig search_from_json(const json& j, SearchConfig base) {
  if (!j.is_object()) throw InvalidInput("search must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) base = search_field(base, it.key(), number(it.value(), "search." + it.key()));
  return base;
}

json search_to_json(const SearchConfig& s) {
  return {{"n_dirs", s.n_dirs},           {"refine_iters", s.refine_iters}, {"rapidity_max", s.rapidity_max},
          {"rapidity_step", s.rapidity_step}, {"n_spatial", s.n_spatial},   {"tol", s.tol},
          {"seed", s.seed}};
}

SearchConfig apply_search_overrides(SearchConfig s, const std::vector<std::string>& kv) {
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("search override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), text = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
      throw InvalidInput("search override '" + item + "' has a malformed value");
    s = search_field(s, key, v);
  }
  return s;
}

PrincipalSymbol model_symbol(const LagrangianModel& model, const FieldJet& jet) {
  if (const auto* sk = std::get_if<models::Skyrme>(&model.kind())) return skyrme_symbol(jet, sk->c1, sk->c2);
  return principal_symbol_fd(model, jet);
}

json analyze(const json& config, bool with_timings) {
  reject_unknown(config, {"dims", "metric_g", "metric_h", "dphi", "s", "model", "search", "checks", "det_poly"},
                 "config");
  for (const char* key : {"dims", "dphi", "model"})
    if (!config.contains(key)) throw InvalidInput(std::string("config is missing '") + key + "'");

  const json& dims = config["dims"];
  reject_unknown(dims, {"m_plus_1", "n"}, "dims");
  if (!dims.contains("m_plus_1") || !dims.contains("n")) throw InvalidInput("dims needs m_plus_1 and n");
  const int nb = integer(dims["m_plus_1"], "dims.m_plus_1");
  const int nt = integer(dims["n"], "dims.n");
  if (nb < 2 || nb > 16) throw InvalidInput("dims.m_plus_1 must lie in [2, 16]");
  if (nt < 1 || nt > 16) throw InvalidInput("dims.n must lie in [1, 16]");

  json eff;
  eff["dims"] = {{"m_plus_1", nb}, {"n", nt}};

  const json g_spec = config.value("metric_g", json("minkowski"));
  std::optional<BaseMetric> g;
  if (g_spec.is_string()) {
    if (g_spec.get<std::string>() != "minkowski") throw InvalidInput("metric_g must be \"minkowski\" or a matrix");
    g.emplace(BaseMetric::minkowski(nb));
  } else {
    g.emplace(matrix_from(g_spec, nb, nb, "metric_g"));
  }
  eff["metric_g"] = g_spec;

  const json h_spec = config.value("metric_h", json("identity"));
  std::optional<TargetMetric> h;
  if (h_spec.is_string()) {
    if (h_spec.get<std::string>() != "identity") throw InvalidInput("metric_h must be \"identity\" or a matrix");
    h.emplace(TargetMetric::identity(nt));
  } else {
    h.emplace(matrix_from(h_spec, nt, nt, "metric_h"));
  }
  eff["metric_h"] = h_spec;

  const double s = config.contains("s") ? number(config["s"], "s") : 0.0;
  eff["s"] = s;

  const json& dphi_spec = config["dphi"];
  Matrix dphi;
  if (dphi_spec.is_object()) {
    reject_unknown(dphi_spec, {"lambdas"}, "dphi");
    if (!dphi_spec.contains("lambdas")) throw InvalidInput("dphi object needs lambdas");
    const Vector lambdas = vector_from(dphi_spec["lambdas"], "dphi.lambdas");
    if (lambdas.size() != nb) throw InvalidInput("dphi.lambdas must have m_plus_1 entries");
    dphi = lambdas_dphi(lambdas, nt, *g, *h);
  } else {
    dphi = matrix_from(dphi_spec, nb, nt, "dphi");
  }
  eff["dphi"] = dphi_spec;
  const FieldJet jet(*g, *h, dphi, s);

  const json& model_spec = config["model"];
  reject_unknown(model_spec, {"name", "params"}, "model");
  if (!model_spec.contains("name") || !model_spec["name"].is_string()) throw InvalidInput("model.name must be a string");
  ModelParams params;
  if (model_spec.contains("params")) {
    if (!model_spec["params"].is_object()) throw InvalidInput("model.params must be an object");
    for (auto it = model_spec["params"].begin(); it != model_spec["params"].end(); ++it)
      params[it.key()] = number(it.value(), "model.params." + it.key());
  }
  const std::string model_name = model_spec["name"].get<std::string>();
  const LagrangianModel model = model_from_name(model_name, params);
  eff["model"] = {{"name", model_name}, {"params", json(params)}};

  const SearchConfig search = config.contains("search") ? search_from_json(config["search"]) : SearchConfig{};
  eff["search"] = search_to_json(search);

  std::set<std::string> requested;
  if (config.contains("checks")) {
    if (!config["checks"].is_array()) throw InvalidInput("checks must be an array");
    for (const auto& c : config["checks"]) {
      if (!c.is_string()) throw InvalidInput("checks entries must be strings");
      const std::string name = c.get<std::string>();
      if (std::find(kAllChecks.begin(), kAllChecks.end(), name) == kAllChecks.end())
        throw InvalidInput("unknown check '" + name + "'");
      requested.insert(name);
    }
  } else {
    requested.insert(kAllChecks.begin(), kAllChecks.end());
  }
  json checks = json::array();
  for (const auto& c : kAllChecks)
    if (requested.count(c)) checks.push_back(c);
  eff["checks"] = checks;

  Vector zeta = Vector::Unit(nb, nb - 1), eta = Vector::Unit(nb, 0);
  if (config.contains("det_poly")) {
    reject_unknown(config["det_poly"], {"zeta", "eta"}, "det_poly");
    if (config["det_poly"].contains("zeta")) zeta = vector_from(config["det_poly"]["zeta"], "det_poly.zeta");
    if (config["det_poly"].contains("eta")) eta = vector_from(config["det_poly"]["eta"], "det_poly.eta");
    if (zeta.size() != nb || eta.size() != nb) throw InvalidInput("det_poly covectors must have m_plus_1 entries");
  }
  if (requested.count("det_poly")) eff["det_poly"] = {{"zeta", to_json(zeta)}, {"eta", to_json(eta)}};

  // everything validated; now compute
  json report;
  report["config"] = eff;
  json timings = json::object();
  auto timed = [&](const std::string& name, const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  const StrainData sd = strain_invariants(jet);
  report["sigmas"] = to_json(sd.sigmas);

  if (requested.count("invariants")) {
    timed("invariants", [&] {
      const AdaptedFrame frame = adapted_frame(jet);
      const Vector newton = newton_sigma_oracle(sd.strain);
      double oracle = 0.0;
      for (int k = 1; k <= sd.rank && k < newton.size(); ++k) oracle = std::max(oracle, std::abs(newton(k) - sd.sigmas(k)));
      json inv = {{"sigmas", to_json(sd.sigmas)},
                  {"rank", sd.rank},
                  {"pullback", to_json(sd.pullback)},
                  {"strain", to_json(sd.strain)},
                  {"newton_oracle_difference", oracle},
                  {"frame", to_string(frame.kind)}};
      if (frame.kind == FrameKind::Generic) {
        inv["frame_vectors"] = to_json(frame.vectors);
        inv["frame_lambdas_sq"] = to_json(frame.lambdas_sq);
      }
      report["invariants"] = inv;
    });
  }

  std::optional<StressEnergy> t;
  if (requested.count("stress_energy") || requested.count("dec")) {
    timed("stress_energy", [&] {
      t = stress_energy(model, jet);
      const StressEnergy fd = stress_energy_fd(model, jet);
      report["stress_energy"] = {{"T", to_json(t->components)},
                                 {"T_mixed", to_json(t->raised(jet.g()))},
                                 {"fd_difference", (t->components - fd.components).cwiseAbs().maxCoeff()}};
    });
  }

  if (requested.count("dec")) {
    timed("dec", [&] {
      const DecReport dec = check_dec(*t, jet.g(), 500, search.seed);
      json d = {{"holds", dec.holds},
                {"worst_energy", dec.worst_energy},
                {"worst_causality", dec.worst_causality},
                {"samples", dec.samples_used},
                {"tolerance", dec.tolerance}};
      if (dec.witness.size()) d["witness"] = to_json(dec.witness);
      report["dec"] = d;
    });
  }

  std::optional<PrincipalSymbol> sym;
  if (requested.count("symbol") || requested.count("classify") || requested.count("det_poly")) {
    timed("symbol", [&] {
      sym = model_symbol(model, jet);
      const Matrix frame = jet.g().orthonormal_frame();
      // dt in the frame: the covector g(e_0, .)
      const Vector e0_flat = jet.g().components() * frame.col(0);
      if (requested.count("symbol"))
        report["symbol"] = {{"blocks", to_json(sym->blocks())},
                            {"norm", sym->norm()},
                            {"m00_definiteness", definiteness_json(contract_symbol(*sym, e0_flat, e0_flat))},
                            {"method", std::holds_alternative<models::Skyrme>(model.kind()) ? "closed-form"
                                                                                             : "finite-difference"}};
    });
  }

  if (requested.count("classify")) {
    timed("classify", [&] {
      std::optional<Vector> preferred;
      const AdaptedFrame frame = adapted_frame(jet);
      if (frame.kind == FrameKind::Generic) preferred = frame.vectors.col(0);
      const ClassificationReport c = classify(*sym, jet.g(), search, preferred);
      json cj = classification_json(c);
      if (c.verdict == Verdict::RegularlyHyperbolic) {
        const WitnessCheck wc = verify_witness(*sym, c, search);
        cj["witness_check"] = {{"passed", wc.passed},
                               {"time_definiteness", to_string(wc.time_definiteness)},
                               {"time_margin", wc.time_margin},
                               {"observer_margin", wc.observer_margin}};
      }
      report["classification"] = cj;
      report["verdict"] = to_string(c.verdict);
      report["margins"] = {{"time", c.time_margin}, {"observer", c.observer_margin}};
    });
  }

  if (requested.count("det_poly")) {
    timed("det_poly", [&] {
      const Poly p = symbol_det_poly(*sym, zeta, eta);
      json dp = {{"coefficients", to_json(p)}, {"degree", degree(p)}};
      if (degree(p) >= 0) {
        const RootCount rc = real_root_count(p);
        dp["sturm_count"] = rc.sturm_count;
        dp["descartes_bound"] = rc.descartes_bound;
        dp["square_free_degree"] = rc.square_free_degree;
        dp["all_real"] = rc.all_real;
      }
      report["det_poly"] = dp;
    });
  }

  if (with_timings) report["timings_ms"] = timings;
  return report;
}

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  std::stringstream ss(spec);
  std::string item;
  auto parse_number = [](const std::string& text, const std::string& item) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
      throw InvalidInput("grid entry '" + item + "' has a malformed number");
    return v;
  };
  std::size_t total = 1;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("grid entry '" + item + "' is not key=range");
    GridAxis axis;
    axis.key = item.substr(0, eq);
    const std::string range = item.substr(eq + 1);
    std::vector<std::string> parts;
    std::stringstream rs(range);
    std::string part;
    while (std::getline(rs, part, ':')) parts.push_back(part);
    if (!range.empty() && range.back() == ':') parts.push_back("");
    if (parts.size() == 1) {
      axis.values.push_back(parse_number(parts[0], item));
    } else if (parts.size() == 3) {
      const double lo = parse_number(parts[0], item), hi = parse_number(parts[1], item),
                   step = parse_number(parts[2], item);
      if (!(step > 0) || hi < lo) throw InvalidInput("grid entry '" + item + "' needs start <= stop and step > 0");
      const double count = std::floor((hi - lo) / step + 1e-9) + 1;
      if (count > 1e6) throw InvalidInput("grid entry '" + item + "' has too many points");
      for (int i = 0; i < static_cast<int>(count); ++i) axis.values.push_back(lo + i * step);
    } else {
      throw InvalidInput("grid entry '" + item + "' must be a value or start:stop:step");
    }
    for (double v : axis.values)
      if (v < 0) throw InvalidInput("grid entry '" + item + "' has a negative lambda");
    total *= axis.values.size();
    if (total > 1000000) throw InvalidInput("grid has too many points");
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw InvalidInput("empty grid");
  std::vector<bool> seen(axes.size(), false);
  for (const auto& a : axes) {
    std::size_t idx = axes.size();
    if (a.key.size() > 6 && a.key.compare(0, 6, "lambda") == 0 &&
        a.key.find_first_not_of("0123456789", 6) == std::string::npos && a.key.size() < 9)
      idx = std::stoul(a.key.substr(6));
    if (idx >= axes.size()) throw InvalidInput("grid key '" + a.key + "' must be lambda0..lambda" + std::to_string(axes.size() - 1));
    if (seen[idx]) throw InvalidInput("grid key '" + a.key + "' appears twice");
    seen[idx] = true;
  }
  if (axes.size() < 2) throw InvalidInput("grid needs at least lambda0 and lambda1");
  return axes;
}

std::vector<Vector> expand_grid(const std::vector<GridAxis>& axes) {
  std::vector<Vector> points;
  const std::size_t k = axes.size();
  std::vector<std::size_t> pos(k, 0);
  std::vector<int> slot(k);
  for (std::size_t i = 0; i < k; ++i) slot[i] = std::stoi(axes[i].key.substr(6));
  while (true) {
    Vector p(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) p(slot[i]) = axes[i].values[pos[i]];
    points.push_back(p);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < axes[i].values.size()) break;
      pos[i] = 0;
      if (i == 0) return points;
    }
  }
}

std::string scan(const std::vector<GridAxis>& axes, const ScanOptions& opts) {
  const LagrangianModel model = model_from_name(opts.model, opts.params);
  const std::vector<Vector> points = expand_grid(axes);
  const int nb = static_cast<int>(axes.size());
  if (opts.target_dim < 0) throw InvalidInput("target dimension must be positive");
  const int nt = opts.target_dim == 0 ? std::min(3, nb) : opts.target_dim;

  std::vector<FieldJet> jets;
  jets.reserve(points.size());
  for (const auto& p : points) jets.push_back(adapted_frame_jet(p, nt));

  std::vector<std::string> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const FieldJet& jet = jets[i];
    std::ostringstream row;
    for (int k = 0; k < nb; ++k) row << format_number(points[i](k)) << ",";
    const StrainData sd = strain_invariants(jet);
    for (int k = 1; k <= nb; ++k) row << format_number(sd.sigmas(k)) << ",";
    try {
      const StressEnergy t = stress_energy(model, jet);
      const DecReport dec = check_dec(t, jet.g(), opts.dec_samples, opts.dec_seed);
      const PrincipalSymbol sym = model_symbol(model, jet);
      std::optional<Vector> preferred;
      const AdaptedFrame frame = adapted_frame(jet);
      if (frame.kind == FrameKind::Generic) preferred = frame.vectors.col(0);
      const ClassificationReport c = classify(sym, jet.g(), opts.search, preferred);
      row << (dec.holds ? "true" : "false") << "," << to_string(c.verdict) << "," << format_number(c.time_margin)
          << "," << format_number(c.observer_margin);
    } catch (const DomainError&) {
      row << ",domain-error,,";
    }
    rows[i] = row.str();
  });

  std::ostringstream out;
  for (int k = 0; k < nb; ++k) out << "lambda" << k << ",";
  for (int k = 1; k <= nb; ++k) out << "sigma" << k << ",";
  out << "dec_holds,verdict,time_margin,observer_margin\n";
  for (const auto& r : rows) out << r << "\n";
  return out.str();
}

json error_json(const std::exception& e) {
  const auto* he = dynamic_cast<const Error*>(&e);
  return {{"error", e.what()}, {"code", he ? he->code() : "invalid_input"}};
}

}  // namespace hyperlab
