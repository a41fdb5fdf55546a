// hyperlab: analyze / scan / verify front end.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlab/analysis.hpp"
#include "hyperlab/io.hpp"
#include "hyperlab/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace hyperlab;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int fail_invalid(const std::exception& e, const std::string& out_path) {
  const std::string text = dump_json(error_json(e)) + "\n";
  std::cerr << "error: " << e.what() << "\n";
  if (!out_path.empty() && out_path != "-") write_text(out_path, text);
  std::cout << text;
  return kInvalid;
}

ModelParams parse_params(const std::vector<std::string>& kv) {
  ModelParams params;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("model parameter '" + item + "' is not key=value");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw InvalidInput("model parameter '" + item + "' is malformed");
    params[item.substr(0, eq)] = v;
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolicity and energy-condition analysis for nonlinear sigma models"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool timings = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a single configuration");
  analyze_cmd->add_option("--config", config_path, "JSON config")->required();
  analyze_cmd->add_option("--out", out_path, "JSON report ('-' for stdout)")->required();
  analyze_cmd->add_flag("--timings", timings, "Record wall-clock times (breaks byte-identical output)");

  std::string model = "skyrme", grid;
  std::vector<std::string> search_kv, param_kv;
  int target_dim = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Scan adapted-frame lambdas over a grid");
  scan_cmd->add_option("--model", model, "Catalog model name")->required();
  scan_cmd->add_option("--grid", grid, "e.g. lambda0=0:2:0.1,lambda1=0:2:0.5,lambda2=1,lambda3=0")->required();
  scan_cmd->add_option("--out", out_path, "CSV output ('-' for stdout)")->required();
  scan_cmd->add_option("--search", search_kv, "Search overrides key=value")->expected(1, -1);
  scan_cmd->add_option("--param", param_kv, "Model parameters key=value")->expected(1, -1);
  scan_cmd->add_option("--target-dim", target_dim, "Target dimension n (default min(3, m+1))");

  std::string suite;
  VerifyOptions vopts;
  double tol = 1.0, threshold = 0.0;
  std::vector<std::string> tighten, only;
  auto* verify_cmd = app.add_subcommand("verify", "Run a named verification suite");
  verify_cmd->add_option("--suite", suite, "paper, skyrme, counterexample, fluid, stress, sturm, all")->required();
  verify_cmd->add_option("--tol", tol, "Multiplier on every pinned tolerance");
  verify_cmd->add_option("--out", out_path, "JSON report");
  verify_cmd->add_flag("--perturb", vopts.perturb, "Feed tolerance checks their perturbed inputs");
  verify_cmd->add_option("--tighten", tighten, "Cut a check's tolerance by 1e6 ('all' for every check)");
  auto* thr = verify_cmd->add_option("--threshold-override", threshold, "Replace the Skyrme threshold c1/c2");
  verify_cmd->add_option("--check", only, "Run only these checks");
  bool list = false;
  verify_cmd->add_flag("--list", list, "List the suite's checks and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (*analyze_cmd) {
    json config;
    try {
      std::ifstream in(config_path);
      if (!in) throw InvalidInput("cannot read config '" + config_path + "'");
      try {
        config = json::parse(in);
      } catch (const json::exception& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
      }
      const json report = analyze(config, timings);
      if (!write_text(out_path, dump_json(report) + "\n")) throw InvalidInput("cannot write '" + out_path + "'");
      return kOk;
    } catch (const std::exception& e) {
      return fail_invalid(e, out_path);
    }
  }

  if (*scan_cmd) {
    try {
      ScanOptions opts;
      opts.model = model;
      opts.params = parse_params(param_kv);
      opts.search = apply_search_overrides(SearchConfig{}, search_kv);
      opts.target_dim = target_dim;
      const std::string csv = scan(parse_grid(grid), opts);
      if (!write_text(out_path, csv)) throw InvalidInput("cannot write '" + out_path + "'");
      return kOk;
    } catch (const std::exception& e) {
      return fail_invalid(e, "");
    }
  }

  // verify
  try {
    vopts.tol_scale = tol;
    vopts.tighten.insert(tighten.begin(), tighten.end());
    vopts.only.insert(only.begin(), only.end());
    if (thr->count()) vopts.threshold_override = threshold;
    if (list) {
      for (const auto& name : suite_checks(suite)) std::cout << name << "\n";
      return kOk;
    }
    const auto results = run_suite(suite, vopts);
    const json report = suite_report(suite, vopts, results);
    std::cout << format_table(results);
    std::cout << report["passed"].get<int>() << "/" << results.size() << " checks passed\n";
    if (!out_path.empty() && !write_text(out_path, dump_json(report) + "\n"))
      throw InvalidInput("cannot write '" + out_path + "'");
    return report["ok"].get<bool>() ? kOk : kFailed;
  } catch (const std::exception& e) {
    return fail_invalid(e, "");
  }
}
