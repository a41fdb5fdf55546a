#pragma once

// Config-driven single-point analysis and lambda-grid scans.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlab/hyperbolicity.hpp"
#include "hyperlab/lagrangian.hpp"

namespace hyperlab {

/// Reads SearchConfig fields from a JSON object; unknown keys throw InvalidInput.
SearchConfig search_from_json(const nlohmann::json& j, SearchConfig base = {});
nlohmann::json search_to_json(const SearchConfig& s);

/// Applies "key=value" overrides (n_dirs, refine_iters, rapidity_max,
/// rapidity_step, n_spatial, tol, seed).
SearchConfig apply_search_overrides(SearchConfig s, const std::vector<std::string>& kv);

/// Symbol used by analyze and scan: closed form for Skyrme, finite
/// differences otherwise.
PrincipalSymbol model_symbol(const LagrangianModel& model, const FieldJet& jet);

/// Runs the checks requested by a config. The report starts with the full
/// effective config. Throws InvalidInput (or another hyperlab::Error) on
/// bad input; with_timings adds wall-clock milliseconds per check.
nlohmann::json analyze(const nlohmann::json& config, bool with_timings = false);

struct GridAxis {
  std::string key;  // lambda0, lambda1, ...
  std::vector<double> values;
};

/// "lambda0=0:2:0.1,lambda1=0:2:0.5,lambda2=1,lambda3=0". Keys must be
/// lambda0..lambdaK, each once; start:stop:step includes stop up to 1e-9
/// of a step. Throws InvalidInput when malformed or empty.
std::vector<GridAxis> parse_grid(const std::string& spec);

/// Lexicographic product, first axis outermost; each point ordered lambda0..K.
std::vector<Vector> expand_grid(const std::vector<GridAxis>& axes);

struct ScanOptions {
  std::string model = "skyrme";
  ModelParams params;
  SearchConfig search;
  int target_dim = 0;  // 0: min(3, m+1)
  int dec_samples = 64;
  std::uint64_t dec_seed = 3;
};

/// CSV text, header plus one row per grid point, rows computed in parallel.
std::string scan(const std::vector<GridAxis>& axes, const ScanOptions& opts);

/// Machine-readable error object for a failed analyze/scan/verify.
nlohmann::json error_json(const std::exception& e);

}  // namespace hyperlab
