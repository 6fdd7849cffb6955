#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "enplab/config.hpp"
#include "enplab/csv.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

using namespace enplab;
using config::ConfigError;
using config::parse_config;

namespace {

const char* kValid = R"({
  "experiment": "demo",
  "metric": "bump_holder",
  "alpha": 0.25,
  "grid_half_width": 6.0,
  "ladder": [32, 48],
  "cases": ["RIESZ_COMMUTATOR", "P3K"],
  "lame": {"lambda": 2.0, "mu": 3.0},
  "cluster_radius": 0.04,
  "output_dir": "out/demo",
  "seed": 7,
  "emit_eigs": false,
  "notes": "example"
})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg");
    return {};
  } catch (const ConfigError& e) {
    return e.what();
  }
}

}  // namespace

TEST_CASE("a full config parses with every field applied") {
  const auto cfg = parse_config(kValid, "cfg");
  CHECK(cfg.experiment == "demo");
  CHECK(cfg.metric == "bump_holder");
  CHECK(cfg.alpha == 0.25);
  CHECK(cfg.grid_half_width == 6.0);
  CHECK(cfg.ladder == std::vector<int>{32, 48});
  REQUIRE(cfg.cases.size() == 2);
  CHECK(cfg.cases[0] == spectra::SuiteCase::kRieszCommutator);
  CHECK(cfg.cases[1] == spectra::SuiteCase::kP3K);
  CHECK(cfg.lambda == 2.0);
  CHECK(cfg.mu == 3.0);
  CHECK(cfg.cluster_radius == 0.04);
  CHECK(cfg.output_dir == "out/demo");
  CHECK(cfg.seed == 7);
  CHECK(!cfg.emit_eigs);
  CHECK(cfg.notes == "example");
  CHECK(cfg.has_planar_case());
  CHECK(cfg.has_sphere_case());

  const auto s = cfg.suite();
  CHECK(s.metric == "bump_holder");
  CHECK(s.alpha == 0.25);
  CHECK(s.S == 6.0);
  CHECK(s.ladder == cfg.ladder);
  CHECK(s.lambda == 2.0);
  CHECK(s.mu == 3.0);
}

TEST_CASE("defaults cover the optional fields") {
  const auto cfg = parse_config(R"({"experiment": "d", "ladder": [16],
    "cases": ["P3K"], "output_dir": "o"})",
                                "cfg");
  CHECK(cfg.metric.empty());  // no planar case, so no metric needed
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.grid_half_width == 4.0);
  CHECK(cfg.sphere_radius == 1.0);
  CHECK(cfg.lambda == 1.0);
  CHECK(cfg.mu == 1.0);
  CHECK(cfg.cluster_radius == 0.05);
  CHECK(cfg.seed == 0);
  CHECK(cfg.emit_eigs);
  CHECK(!cfg.has_planar_case());
  CHECK(cfg.has_sphere_case());
}

TEST_CASE("schema violations are rejected with pointed messages") {
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "surprise": 1})")
            .find("unknown key 'surprise'") != std::string::npos);
  CHECK(error_of(R"({"ladder": [16], "cases": ["P3K"], "output_dir": "o"})")
            .find("'experiment'") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "cases": ["P3K"], "output_dir": "o"})")
            .find("'ladder'") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "output_dir": "o"})")
            .find("'cases'") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"]})")
            .find("'output_dir'") != std::string::npos);
}

TEST_CASE("ladder, case, and metric values are validated") {
  CHECK(error_of(R"({"experiment": "d", "ladder": [], "cases": ["P3K"], "output_dir": "o"})")
            .find("ladder") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16, 16], "cases": ["P3K"], "output_dir": "o"})")
            .find("strictly increasing") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [32, 16], "cases": ["P3K"], "output_dir": "o"})")
            .find("strictly increasing") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [0], "cases": ["P3K"], "output_dir": "o"})")
            .find("positive") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [1.5], "cases": ["P3K"], "output_dir": "o"})")
            .find("positive integers") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["NOPE"], "output_dir": "o"})")
            .find("NOPE") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": [], "output_dir": "o"})")
            .find("cases") != std::string::npos);
  // planar case without a metric
  CHECK(error_of(R"({"experiment": "d", "ladder": [16],
    "cases": ["RIESZ_COMMUTATOR"], "output_dir": "o"})")
            .find("'metric' is required") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "metric": "torus", "ladder": [16],
    "cases": ["RIESZ_COMMUTATOR"], "output_dir": "o"})")
            .find("unknown metric") != std::string::npos);
}

TEST_CASE("numeric ranges and the Lame pair are validated") {
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "alpha": 1.0})")
            .find("alpha") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "grid_half_width": -1.0})")
            .find("grid_half_width") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "lame": {"lambda": 1.0, "mu": -1.0}})")
            .find("Lame") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "lame": {"lambda": 1.0}})")
            .find("lame") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "lame": {"lambda": 1.0, "mu": 1.0, "nu": 0.3}})")
            .find("lame.nu") != std::string::npos);
  // cluster radius must stay below k0/2 (k0 = 1/6 for the default pair)
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "cluster_radius": 0.1})")
            .find("k0/2") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "seed": -1})")
            .find("seed") != std::string::npos);
  CHECK(error_of(R"({"experiment": "d", "ladder": [16], "cases": ["P3K"],
    "output_dir": "o", "emit_eigs": "yes"})")
            .find("emit_eigs") != std::string::npos);
}

TEST_CASE("malformed json reports a position") {
  const std::string msg = error_of("{\n  \"experiment\": \"d\",\n  oops\n}");
  CHECK(msg.find("cfg:3") != std::string::npos);  // line-precise origin
}

TEST_CASE("load_config reads from disk and reports missing files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "enplab_config_test";
  fs::create_directories(dir);
  const fs::path p = dir / "a.config";
  std::ofstream(p) << kValid;
  const auto cfg = config::load_config(p);
  CHECK(cfg.experiment == "demo");
  CHECK_THROWS_AS(config::load_config(dir / "missing.config"), ConfigError);
}

TEST_CASE("csv tables round-trip doubles bitwise") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "enplab_csv_test";
  fs::create_directories(dir);
  const fs::path p = dir / "t.csv";

  csv::Table t;
  t.header = {"a", "b", "c"};
  t.rows = {
      {0.0, -0.0, 1.0 / 3.0},
      {DBL_MAX, DBL_MIN, 5e-324},
      {-1.2345678901234567e+100, 3.14159265358979312, -7.0},
      {1e-308, 2.2250738585072014e-308, 123456789.12345679},
  };
  csv::write(p, t);
  const csv::Table back = csv::read(p);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    REQUIRE(back.rows[i].size() == t.rows[i].size());
    for (std::size_t j = 0; j < t.rows[i].size(); ++j)
      CHECK(std::memcmp(&back.rows[i][j], &t.rows[i][j], sizeof(double)) == 0);
  }

  // re-emitting the parsed table reproduces the file byte for byte
  const fs::path p2 = dir / "t2.csv";
  csv::write(p2, back);
  std::ifstream f1(p), f2(p2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
}

TEST_CASE("csv rejects malformed input with line numbers") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "enplab_csv_test";
  fs::create_directories(dir);

  const fs::path bad_cell = dir / "bad_cell.csv";
  std::ofstream(bad_cell) << "a,b\n1.0,2.0\n3.0,oops\n";
  try {
    csv::read(bad_cell);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }

  const fs::path bad_width = dir / "bad_width.csv";
  std::ofstream(bad_width) << "a,b\n1.0\n";
  try {
    csv::read(bad_width);
    FAIL("expected a width error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }

  csv::Table ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{1.0}};
  CHECK_THROWS_AS(csv::write(dir / "ragged.csv", ragged), std::runtime_error);
}
