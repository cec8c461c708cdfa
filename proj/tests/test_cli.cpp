#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acihs/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;

  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream is(out);
    for (std::string l; std::getline(is, l);)
      if (!l.empty()) v.push_back(l);
    return v;
  }
  json summary() const { return json::parse(lines().back())["summary"]; }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "acihs");
  std::ostringstream out, err;
  const int code = acihs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("geodesic reports Chasles drift") {
  const auto r = run({"geodesic", "--axes", "1,2,3", "--steps", "200", "--every", "100"});
  CHECK(r.code == acihs::cli::kPass);
  const auto s = r.summary();
  CHECK(s["pass"] == true);
  CHECK(s["chasles_drift"].get<double>() < 1e-6);
  CHECK(s["tol_source"] == "default");
  const auto first = json::parse(r.lines().front());
  CHECK(first.contains("lambda"));
  CHECK(first["step"] == 0);
}

TEST_CASE("polymat flow and charpoly") {
  const auto f = run({"polymat", "flow", "--steps", "100"});
  CHECK(f.code == 0);
  CHECK(f.summary()["charpoly_drift"].get<double>() < 1e-6);
  CHECK(f.summary()["leaf_drift"].get<double>() < 1e-8);

  const auto c = run({"polymat", "charpoly", "--in", "[[[1, 2], [0]], [[0], [3]]]"});
  CHECK(c.code == 0);
}

TEST_CASE("configuration errors exit 2 and write nothing") {
  const fs::path out = fs::temp_directory_path() / "acihs_cli_test_out.jsonl";
  fs::remove(out);
  auto r = run({"geodesic", "--axes", "1,2,3", "--bogus", "--out", out.string()});
  CHECK(r.code == acihs::cli::kConfigError);
  CHECK_FALSE(fs::exists(out));
  r = run({"geodesic", "--axes", "1,2,3", "--dt", "-1", "--out", out.string()});
  CHECK(r.code == acihs::cli::kConfigError);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("numerical errors exit 3 with the error name") {
  const auto r = run({"geodesic", "--axes", "1,2,3", "--x0", "5,0,0", "--v0", "0,1,0"});
  CHECK(r.code == acihs::cli::kNumericalError);
  CHECK(r.summary()["error"] == "InvalidArgument");
  // Preconditions of the library itself land here too.
  CHECK(run({"geodesic", "--axes", "3,2,1"}).code == acihs::cli::kNumericalError);
}

TEST_CASE("failed invariants exit 1") {
  const auto r = run({"geodesic", "--axes", "1,2,3", "--steps", "50", "--tol", "1e-30"});
  CHECK(r.code == acihs::cli::kInvariantFailed);
  CHECK(r.summary()["pass"] == false);
  CHECK(r.summary()["tol_source"] == "flag");
}

TEST_CASE("runs are deterministic and independent of threads") {
  const std::vector<std::string> args{"mumford", "verify", "--genus", "3", "--trials", "12"};
  auto serial = args, parallel = args;
  serial.insert(serial.end(), {"--parallel", "1"});
  parallel.insert(parallel.end(), {"--parallel", "3"});
  const auto a = run(serial), b = run(serial), c = run(parallel);
  CHECK(a.code == 0);
  CHECK(a.summary() == b.summary());
  CHECK(a.summary() == c.summary());
}

TEST_CASE("tolerance override from the environment") {
  ::setenv("ACIHS_TOL_OVERRIDE", "1e-30", 1);
  auto r = run({"geodesic", "--axes", "1,2,3", "--steps", "50"});
  CHECK(r.code == 1);
  CHECK(r.summary()["tol_source"] == "ACIHS_TOL_OVERRIDE");
  r = run({"geodesic", "--axes", "1,2,3", "--steps", "50", "--tol", "1e-3"});
  CHECK(r.code == 0);
  ::setenv("ACIHS_TOL_OVERRIDE", "abc", 1);
  r = run({"geodesic", "--axes", "1,2,3", "--steps", "50"});
  CHECK(r.code == 2);
  ::unsetenv("ACIHS_TOL_OVERRIDE");
}

TEST_CASE("csv report") {
  const auto r = run({"geodesic", "--axes", "1,2,3", "--steps", "20", "--every", "10", "--report", "csv"});
  CHECK(r.code == 0);
  const auto l = r.lines();
  REQUIRE(l.size() == 5);
  CHECK(l[0].find("step") != std::string::npos);
  CHECK(l.back().rfind("summary,", 0) == 0);
}
