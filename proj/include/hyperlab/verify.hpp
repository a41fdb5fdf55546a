#pragma once

// Named verification suites over the case studies.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyperlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool has_tolerance = false;  // residual compared against a pinned tolerance
  double residual = 0.0;
  double tolerance = 0.0;
  nlohmann::json detail = nlohmann::json::object();
};

struct VerifyOptions {
  double tol_scale = 1.0;           // multiplies every pinned tolerance
  std::set<std::string> tighten;    // check names (or "all") whose tolerance is cut by 1e6
  bool perturb = false;             // feed each tolerance check its deliberately perturbed input
  std::optional<double> threshold_override;  // replaces c1/c2 in the Skyrme predictions
  std::set<std::string> only;       // run just these checks (empty: the whole suite)
};

const std::vector<std::string>& suite_names();

/// Check names of a suite, in run order. Throws InvalidInput for an unknown suite.
std::vector<std::string> suite_checks(const std::string& suite);

/// Runs a suite. Throws InvalidInput for an unknown suite or check filter.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

nlohmann::json suite_report(const std::string& suite, const VerifyOptions& opts, const std::vector<CheckResult>& results);

/// One "PASS name residual <= tol" / "FAIL ..." line per check.
std::string format_table(const std::vector<CheckResult>& results);

}  // namespace hyperlab
