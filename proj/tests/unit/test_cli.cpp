#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maglab/cli.hpp"
#include "maglab/io.hpp"

using maglab::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  maglab::cli::CommandResult result;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  auto result = maglab::cli::run(args, out, err);
  return {result, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MAGLAB_TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "maglab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

}  // namespace

TEST_CASE("magnitude of two points") {
  const auto r = run({"magnitude", "--matrix", data("two_points_d1.csv")});
  CHECK(r.result.exit_code == 0);
  CHECK(r.out.find("magnitude: 1.462117") != std::string::npos);
  CHECK(2.0 / (1.0 + std::exp(-1.0)) == doctest::Approx(1.4621171573));
}

TEST_CASE("negative type of K32") {
  const auto r = run({"negtype", "--spec", data("k32_r1.json")});
  CHECK(r.result.exit_code == 0);
  CHECK(r.out.find("negative_type: false") != std::string::npos);
  CHECK(r.out.find("NotStablyPD") != std::string::npos);
}

TEST_CASE("indefinite spaces are domain errors") {
  const auto r = run({"magnitude", "--matrix", data("k32_r0.3.csv")});
  CHECK(r.result.exit_code == 1);
  CHECK(r.err.find("NotPositiveDefinite") != std::string::npos);
  CHECK(r.err.find("lambda_min") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).result.exit_code == 2);
  CHECK(run({"frobnicate"}).result.exit_code == 2);
  CHECK(run({"magnitude"}).result.exit_code == 2);
  const auto both = run({"magnitude", "--matrix", data("two_points_d1.csv"), "--spec", data("k32_r1.json")});
  CHECK(both.result.exit_code == 2);
  const auto missing = run({"magnitude", "--matrix", data("does_not_exist.csv")});
  CHECK(missing.result.exit_code == 2);
  const auto grid = run({"sweep", "--matrix", data("two_points_d1.csv"), "--scales", "1:2"});
  CHECK(grid.result.exit_code == 2);
  CHECK(grid.err.find("usage:") != std::string::npos);
  CHECK(run({"--help"}).result.exit_code == 0);
}

TEST_CASE("validate") {
  CHECK(run({"validate", data("two_points_d1.csv")}).result.exit_code == 0);
  const auto bad = run({"validate", data("not_metric.csv")});
  CHECK(bad.result.exit_code == 1);
  CHECK(bad.out.find("ok: false") != std::string::npos);
  CHECK(run({"magnitude", "--matrix", data("not_metric.csv")}).result.exit_code == 1);
}

TEST_CASE("json reports carry the schema and every field") {
  const auto path = scratch("mag.json");
  const auto r = run({"magnitude", "--matrix", data("two_points_d1.csv"), "--json", path.string()});
  REQUIRE(r.result.exit_code == 0);
  REQUIRE(r.result.report_path);
  const json doc = read_json(path);
  CHECK(doc["schema"] == maglab::kSchemaVersion);
  CHECK(doc["command"] == "magnitude");
  for (const char* key : {"magnitude", "weighting", "residual", "positively_weighted", "ill_conditioned",
                          "least_squares_fallback", "diagnostics"})
    CHECK(doc["report"].contains(key));
  CHECK(doc["report"]["magnitude"].get<double>() == doctest::Approx(2.0 / (1.0 + std::exp(-1.0))).epsilon(1e-15));

  // Same input, same bytes.
  const auto again = scratch("mag2.json");
  run({"magnitude", "--matrix", data("two_points_d1.csv"), "--json", again.string()});
  std::ifstream a(path), b(again);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("sweep writes json and csv") {
  const auto jpath = scratch("sweep.json"), cpath = scratch("sweep.csv");
  const auto r = run({"sweep", "--matrix", data("two_points_d1.csv"), "--scales", "1:3:3", "--diversity", "--json",
                      jpath.string(), "--csv", cpath.string()});
  REQUIRE(r.result.exit_code == 0);
  const json doc = read_json(jpath);
  CHECK(doc["report"]["records"].size() == 3);
  std::ifstream csv(cpath);
  std::string header, row;
  std::getline(csv, header);
  CHECK(header == "t,lambda_min,magnitude,diversity");
  std::getline(csv, row);
  CHECK(row.rfind("1,", 0) == 0);
}

TEST_CASE("scale grids") {
  const auto lin = maglab::cli::parse_scale_grid("1:3:5");
  CHECK(lin == std::vector<double>{1, 1.5, 2, 2.5, 3});
  const auto lg = maglab::cli::parse_scale_grid("0.01:100:5log");
  REQUIRE(lg.size() == 5);
  CHECK(lg[2] == doctest::Approx(1.0));
  CHECK(lg[4] == 100.0);
  CHECK(maglab::cli::parse_scale_grid("0.5:8:5:log")[1] == doctest::Approx(1.0));
  CHECK(maglab::cli::parse_scale_grid("2:2:1") == std::vector<double>{2});
  CHECK_THROWS(maglab::cli::parse_scale_grid("0:1:3log"));
  CHECK_THROWS(maglab::cli::parse_scale_grid("3:1:3"));
}

TEST_CASE("other subcommands") {
  const auto div = run({"diversity", "--matrix", data("two_points_d1.csv"), "--positivity"});
  CHECK(div.result.exit_code == 0);
  CHECK(div.out.find("support size 2") != std::string::npos);

  const auto approx = run({"approx", "--family", "interval_net", "--param", "length=2", "--levels", "11,101"});
  CHECK(approx.result.exit_code == 0);
  CHECK(approx.out.find("extrapolated_limit") != std::string::npos);
  CHECK(run({"approx", "--family", "interval_net", "--levels", "11,x"}).result.exit_code == 2);
  CHECK(run({"approx", "--family", "weighted_tree", "--levels", "3"}).result.exit_code == 1);

  const auto four = run({"fourier", "--p", "2", "--omega-max", "2", "--step", "0.5"});
  CHECK(four.result.exit_code == 0);
  CHECK(four.out.find("positive: true") != std::string::npos);
  CHECK(run({"fourier", "--p", "0.5"}).result.exit_code == 1);

  const auto prod = run({"experiment", "product-counterexample"});
  CHECK(prod.result.exit_code == 0);
  CHECK(prod.out.find("NotStablyPD") != std::string::npos);
  const auto search = run({"experiment", "witness-search", "--p", "2", "--n", "3", "--budget", "20"});
  CHECK(search.result.exit_code == 0);
  CHECK(search.out.find("witness: -") != std::string::npos);
  CHECK(run({"experiment"}).result.exit_code == 2);

  const auto mpath = scratch("gen.csv");
  CHECK(run({"generate", "--spec", data("interval_net.json"), "--out", mpath.string()}).result.exit_code == 0);
  const auto gen = run({"magnitude", "--matrix", mpath.string()});
  CHECK(gen.out.find("magnitude: 1.4") != std::string::npos);
}
