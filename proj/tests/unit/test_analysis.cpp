#include <doctest.h>

#include "hyperlab/analysis.hpp"
#include "hyperlab/io.hpp"

using namespace hyperlab;
using json = nlohmann::json;

namespace {

json skyrme_config() {
  return json::parse(R"({
    "dims": {"m_plus_1": 4, "n": 3},
    "dphi": {"lambdas": [1.5, 0.5, 2.0, 0.0]},
    "model": {"name": "skyrme"},
    "search": {"n_dirs": 256, "n_spatial": 16}
  })");
}

}  // namespace

TEST_CASE("grid parsing and expansion order") {
  const auto axes = parse_grid("lambda1=0:1:0.5,lambda0=2,lambda2=0:1:1");
  REQUIRE(axes.size() == 3);
  CHECK(axes[0].values.size() == 3);
  CHECK(axes[2].values.size() == 2);
  const auto pts = expand_grid(axes);
  REQUIRE(pts.size() == 6);
  // first axis (lambda1) outermost, points ordered lambda0..lambda2
  CHECK(pts[0](0) == 2.0);
  CHECK(pts[0](1) == 0.0);
  CHECK(pts[1](2) == 1.0);
  CHECK(pts[2](1) == 0.5);
  CHECK(pts[5](1) == 1.0);

  CHECK(parse_grid("lambda0=0:0.3:0.1,lambda1=1").at(0).values.size() == 4);
  for (const char* bad : {"", "lambda0=1", "lambda0=1,lambda0=2", "lambda0=1,lambda2=1", "lambda0=-1,lambda1=0",
                          "lambda0=1:0:0.1,lambda1=0", "lambda0=a,lambda1=0", "x=1,lambda1=0",
                          "lambda0=0:1:0,lambda1=0", "lambda0=0:1,lambda1=0"})
    CHECK_THROWS_AS(parse_grid(bad), InvalidInput);
}

TEST_CASE("search overrides") {
  const SearchConfig s = apply_search_overrides(SearchConfig{}, {"n_dirs=64", "tol=1e-6", "seed=9"});
  CHECK(s.n_dirs == 64);
  CHECK(s.tol == 1e-6);
  CHECK(s.seed == 9u);
  CHECK_THROWS_AS(apply_search_overrides(SearchConfig{}, {"bogus=1"}), InvalidInput);
  CHECK_THROWS_AS(apply_search_overrides(SearchConfig{}, {"n_dirs"}), InvalidInput);
}

TEST_CASE("analyze reports the breakdown regime") {
  const json r = analyze(skyrme_config());
  CHECK(r["verdict"] == "ultrahyperbolic");
  CHECK(r.contains("config"));
  CHECK(r.contains("stress_energy"));
  CHECK(r["dec"]["holds"] == true);
  CHECK_FALSE(r.contains("timings_ms"));
}

TEST_CASE("analyze is deterministic and reproducible from the echoed config") {
  const json a = analyze(skyrme_config());
  const json b = analyze(skyrme_config());
  CHECK(dump_json(a) == dump_json(b));
  const json c = analyze(a["config"]);
  CHECK(dump_json(a) == dump_json(c));
}

TEST_CASE("config errors") {
  json c = skyrme_config();
  c["surprise"] = 1;
  CHECK_THROWS_AS(analyze(c), InvalidInput);

  c = skyrme_config();
  c["search"]["n_dirz"] = 5;
  CHECK_THROWS_AS(analyze(c), InvalidInput);

  c = skyrme_config();
  c.erase("model");
  CHECK_THROWS_AS(analyze(c), InvalidInput);

  c = skyrme_config();
  c["dims"]["m_plus_1"] = 1;
  CHECK_THROWS_AS(analyze(c), InvalidInput);

  c = skyrme_config();
  c["metric_g"] = json::parse("[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]");
  CHECK_THROWS_AS(analyze(c), InvalidInput);

  c = skyrme_config();
  c["dphi"]["lambdas"] = json::array({1.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(analyze(c), RankConstraintViolation);

  c = skyrme_config();
  c["model"]["name"] = "no-such-model";
  CHECK_THROWS_AS(analyze(c), InvalidInput);
}

TEST_CASE("error objects carry a code") {
  const json e = error_json(InvalidInput("bad"));
  CHECK(e["error"] == "bad");
  CHECK(e["code"] == "invalid_input");
  CHECK(error_json(DomainError("x"))["code"] == "domain_error");
}

TEST_CASE("scan rows follow the grid") {
  ScanOptions opts;
  opts.search.n_dirs = 128;
  opts.search.n_spatial = 8;
  const std::string csv = scan(parse_grid("lambda0=0:1.5:1.5,lambda1=0.5,lambda2=2,lambda3=0"), opts);
  std::istringstream in(csv);
  std::string header, r0, r1, extra;
  std::getline(in, header);
  std::getline(in, r0);
  std::getline(in, r1);
  CHECK(header == "lambda0,lambda1,lambda2,lambda3,sigma1,sigma2,sigma3,sigma4,dec_holds,verdict,time_margin,"
                  "observer_margin");
  CHECK(r0.find("regularly-hyperbolic") != std::string::npos);
  CHECK(r1.find("ultrahyperbolic") != std::string::npos);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(csv == scan(parse_grid("lambda0=0:1.5:1.5,lambda1=0.5,lambda2=2,lambda3=0"), opts));
}
