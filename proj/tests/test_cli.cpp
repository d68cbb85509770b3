#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using namespace mpvc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"mpvc"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mpvc_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

Json load(const fs::path& p) {
  std::ifstream is(p);
  return Json::parse(is);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve ten_bar with the Global scheme") {
  const fs::path dir = scratch("ten_bar");
  const Outcome o = run_cli({"solve", "--problem", "ten_bar", "--scheme", "global", "--out", dir.string()});
  CHECK(o.code == cli::kSuccess);
  const Json r = load(dir / "result.json");
  CHECK(r["f"].get<double>() == doctest::Approx(8.0).epsilon(1e-2 / 8));
  CHECK(r["outer_iterations"].get<int>() >= 7);
  CHECK(r["outer_iterations"].get<int>() <= 9);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "areas.csv"));
}

TEST_CASE("solve academic from x_star and from (10, 10)") {
  fs::path dir = scratch("lshaped");
  Outcome o = run_cli({"solve", "--problem", "academic", "--scheme", "lshaped", "--x0", "0,5", "--out", dir.string()});
  CHECK(o.code == cli::kSuccess);
  Json r = load(dir / "result.json");
  CHECK(r["f"].get<double>() == doctest::Approx(10.0));
  CHECK(r["outer_iterations"].get<int>() <= 2);

  dir = scratch("none");
  o = run_cli({"solve", "--problem", "academic", "--scheme", "none", "--x0", "10,10", "--out", dir.string()});
  CHECK(o.code == cli::kSuccess);
  r = load(dir / "result.json");
  REQUIRE(r.contains("grade"));
  CHECK(r["grade"].is_string());
}

TEST_CASE("grid command") {
  fs::path dir = scratch("grid1");
  Outcome o = run_cli({"grid", "--problem", "academic", "--scheme", "global", "--grid", "0,0,1,5,5,1", "--out",
                       dir.string()});
  CHECK(o.code == cli::kSuccess);
  const Json s = load(dir / "summary.json");
  CHECK(s["starts"] == 1);
  CHECK(s["counts"]["x_star"] == 1);

  // same seed, different thread counts: identical CSVs
  const fs::path a = scratch("grid_a"), b = scratch("grid_b");
  CHECK(run_cli({"grid", "--grid", "-5,20,5,-5,20,5", "--seed", "3", "--jobs", "1", "--out", a.string()}).code == 0);
  CHECK(run_cli({"grid", "--grid", "-5,20,5,-5,20,5", "--seed", "3", "--jobs", "3", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "grid.csv") == slurp(b / "grid.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));

  CHECK(run_cli({"grid", "--problem", "ten_bar", "--out", dir.string()}).code == cli::kUsage);
}

TEST_CASE("check command") {
  Outcome o = run_cli({"check", "--problem", "academic", "--x0", "0,0"});
  REQUIRE(o.code == cli::kSuccess);
  Json j = Json::parse(o.out);
  CHECK((j["grade"] == "M" || j["grade"] == "S"));
  CHECK(j["mpvc_licq"]["holds"] == true);

  o = run_cli({"check", "--problem", "academic", "--x0", "0,7.0710678118654755"});
  CHECK(Json::parse(o.out)["grade"] == "Weak");
  o = run_cli({"check", "--problem", "academic", "--x0", "10,10"});
  CHECK(Json::parse(o.out)["grade"] == "NotWeak");
  o = run_cli({"check", "--problem", "academic", "--x0", "1,1"});
  CHECK(o.code == cli::kSuccess);
  CHECK(Json::parse(o.out).contains("infeasible"));
}

TEST_CASE("configuration files") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "run.json");
    os << R"({"problem": "academic", "scheme": "nonsmooth", "x0": [0, 5], "driver": {"tol": 1e-7}})";
  }
  Outcome o = run_cli({"solve", "--config", (dir / "run.json").string(), "--out", dir.string()});
  CHECK(o.code == cli::kSuccess);
  CHECK(load(dir / "result.json")["f"].get<double>() == doctest::Approx(10.0));
  {
    std::ofstream os(dir / "bad.json");
    os << R"({"driver": {"sigma": 2.0}})";
  }
  CHECK(run_cli({"solve", "--config", (dir / "bad.json").string(), "--x0", "0,5"}).code == cli::kUsage);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--problem", "nope"}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--scheme", "nope", "--x0", "0,5"}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--problem", "academic"}).code == cli::kUsage);  // no start point
  CHECK(run_cli({"solve", "--x0", "1,2,3"}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--x0", "a,b"}).code == cli::kUsage);
  CHECK(run_cli({"check"}).code == cli::kUsage);
  CHECK(run_cli({"grid", "--grid", "1,2"}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--config", "/nonexistent.json"}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
}
