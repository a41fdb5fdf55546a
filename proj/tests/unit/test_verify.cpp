#include <doctest.h>

#include <algorithm>

#include "hyperlab/errors.hpp"
#include "hyperlab/verify.hpp"

using namespace hyperlab;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "paper") != names.end());
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  const auto all = suite_checks("all");
  for (const auto& s : names) {
    if (s == "all") continue;
    for (const auto& c : suite_checks(s)) CHECK(std::find(all.begin(), all.end(), c) != all.end());
  }
  CHECK_THROWS_AS(suite_checks("nosuch"), InvalidInput);
  CHECK_THROWS_AS(run_suite("nosuch"), InvalidInput);
}

TEST_CASE("filters and options are validated") {
  VerifyOptions o;
  o.only = {"stress.newton_oracle"};
  CHECK_THROWS_AS(run_suite("sturm", o), InvalidInput);
  o = {};
  o.tighten = {"no.such_check"};
  CHECK_THROWS_AS(run_suite("sturm", o), InvalidInput);
  o = {};
  o.tol_scale = 0.0;
  CHECK_THROWS_AS(run_suite("sturm", o), InvalidInput);
}

TEST_CASE("a single check runs and reports") {
  VerifyOptions o;
  o.only = {"counterexample.energy_density"};
  const auto r = run_suite("counterexample", o);
  REQUIRE(r.size() == 1);
  CHECK(r[0].passed);
  CHECK(r[0].has_tolerance);
  CHECK(r[0].tolerance == 1e-10);
  const auto report = suite_report("counterexample", o, r);
  CHECK(report["ok"] == true);
  CHECK(report["passed"] == 1);
  const std::string table = format_table(r);
  CHECK(table.rfind("PASS", 0) == 0);
  CHECK(table.find("counterexample.energy_density") != std::string::npos);

  o.perturb = true;
  o.tighten = {"counterexample.energy_density"};
  const auto bad = run_suite("counterexample", o);
  CHECK_FALSE(bad[0].passed);
  CHECK(format_table(bad).rfind("FAIL", 0) == 0);
}
