// Copyright 2026 The extremalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "extremalkit/errors.hpp"
#include "extremalkit/system_io.hpp"
#include "extremalkit/uuv.hpp"

using namespace extremalkit;
using nlohmann::json;
namespace fs = std::filesystem;

#ifndef EXTREMALKIT_CLI_PATH
#define EXTREMALKIT_CLI_PATH "extremalkit"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("xk_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  const fs::path& path() const { return dir_; }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
  const fs::path out = dir.path() / "stdout.txt";
  const fs::path err = dir.path() / "stderr.txt";
  const std::string cmd = std::string("'") + EXTREMALKIT_CLI_PATH + "' " + args +
                          " > '" + out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

// The checked-in planar-vehicle definition, copied next to the test run.
fs::path uuv_definition(const TempDir& dir) {
  const fs::path dst = dir.path() / "uuv.json";
  const fs::path repo_copy = fs::path(__FILE__).parent_path() / ".." / "data" / "uuv.json";
  fs::copy_file(repo_copy, dst, fs::copy_options::overwrite_existing);
  return dst;
}

}  // namespace

TEST_CASE("help and usage errors") {
  TempDir dir;
  CHECK(run_cli("--help", dir).exit_code == 0);
  CHECK(run_cli("no-such-subcommand", dir).exit_code == 2);
  CHECK(run_cli("simulate", dir).exit_code == 2);  // missing required args
}

TEST_CASE("simulate rejects a zero adjoint with exit 1") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);
  const RunResult r = run_cli("simulate --system '" + def.string() +
                                  "' --x0 0,0,0,0,0,0 --lam0 0,0,0,0,0,0 --T 1",
                              dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("adjoint must be nonzero") != std::string::npos);
}

TEST_CASE("simulate writes the trajectory artifacts") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);
  const RunResult r = run_cli(
      "simulate --system '" + def.string() +
          "' --x0 0,0,0.3,0,0,0 --lam0 0,0,1,0,0,0.5 --T 1 --out-dir '" +
          dir.path().string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir.path() / "trajectory.csv");
  CHECK(csv.rfind("t,x1,x2,x3,x4,x5,x6,lam1,lam2,lam3,lam4,lam5,lam6,"
                  "u1,u2,u3,phi1,phi2,phi3,H\n",
                  0) == 0);
  const json events = json::parse(slurp(dir.path() / "events.json"));
  CHECK(events.at("schema_version") == 1);
  CHECK(events.at("events").is_array());
  const json report = json::parse(slurp(dir.path() / "report.json"));
  CHECK(report.at("schema_version") == 1);
  CHECK(report.at("classification").contains("channels"));
}

TEST_CASE("audit passes on the shipped definition") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);
  const RunResult r = run_cli("audit --system '" + def.string() + "'", dir);
  CHECK(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report.at("commutativity").at("pass") == true);
}

TEST_CASE("brackets echo round-trips the system") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);
  const fs::path out = dir.path() / "brackets.json";
  const RunResult r =
      run_cli("brackets --system '" + def.string() + "' --depth 2 " +
                  "--echo-system -o '" + out.string() + "'",
              dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(slurp(out));
  AffineSystem original = load_system_file(def.string());
  AffineSystem reparsed = load_system_definition(report.at("system"));
  CHECK(reparsed.drift == original.drift);
  REQUIRE(reparsed.m() == original.m());
  for (std::size_t i = 0; i < original.m(); ++i) {
    CHECK(reparsed.controls[i] == original.controls[i]);
  }
  // The depth-1 ad power of g3 matches the library value.
  CHECK(report.at("ad_powers")[1][2][2] == "-1/2");
}

TEST_CASE("theorem1 and prop1 run from query files") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);

  json query;
  query["K1"] = {1, 2, 3};
  query["J"] = {{1, 2, 3}, {1, 2, 3}};
  query["points"] = {{0.1, -0.2, 0.4, 0.8, -0.5, 0.9},
                     {1.0, 0.0, -0.7, 0.3, 0.6, -0.2}};
  const fs::path qpath = dir.path() / "query.json";
  std::ofstream(qpath) << query.dump();

  const RunResult r = run_cli(
      "theorem1 --system '" + def.string() + "' --query '" + qpath.string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report.at("verdict").at("conditions_hold") == true);

  json p1 = query;
  p1["K1"] = {1, 2};
  p1["J"] = {{1, 2}, {1, 2}, {1, 2}};
  p1["K"] = {3};
  std::ofstream(qpath) << p1.dump();
  const RunResult r2 = run_cli(
      "prop1 --system '" + def.string() + "' --query '" + qpath.string() + "'",
      dir);
  CHECK(r2.exit_code == 0);
  const json report2 = json::parse(r2.out);
  CHECK(report2.at("verdict").at("asserted") == true);
}

TEST_CASE("singular-control and concat-check subcommands") {
  TempDir dir;
  const fs::path def = uuv_definition(dir);

  SUBCASE("pure-rotation state solves to zero singular controls") {
    const RunResult r = run_cli(
        "singular-control --system '" + def.string() +
            "' --x 0,0,0.4,0,0,0.7 --lam 0,0,1,0,0,2 --k 3 --u-k 1",
        dir);
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(std::abs(report.at("solution").at("u")[0].get<double>()) <= 1e-12);
    CHECK(std::abs(report.at("solution").at("u")[1].get<double>()) <= 1e-12);
  }

  SUBCASE("phi_k = 0 is a usage error") {
    const RunResult r = run_cli(
        "singular-control --system '" + def.string() +
            "' --x 0,0,0,0,0,0 --lam 0,0,1,0,0,0 --k 3 --u-k 1",
        dir);
    CHECK(r.exit_code == 2);
  }

  SUBCASE("concatenations of 2-singular pieces are rejected") {
    const RunResult r = run_cli(
        "concat-check --system '" + def.string() + "' --s1 1,3 --s2 2,3", dir);
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report.at("verdict").at("outcome") == "not-optimal");

    const RunResult r2 = run_cli("concat-check --system '" + def.string() +
                                     "' --s1 1,3 --s2 2,3 --no-fast-path",
                                 dir);
    CHECK(r2.exit_code == 0);
    CHECK(json::parse(r2.out).at("verdict").at("outcome") == "not-extremal");
  }
}

TEST_CASE("schema violations exit with code 2") {
  TempDir dir;
  const fs::path bad = dir.path() / "bad.json";
  std::ofstream(bad) << "{\"schema_version\": 1}";
  CHECK(run_cli("audit --system '" + bad.string() + "'", dir).exit_code == 2);
  std::ofstream(bad) << "not json at all";
  CHECK(run_cli("audit --system '" + bad.string() + "'", dir).exit_code == 2);
  // sin applied to a non-angle variable inside an expression.
  json def = json::parse(slurp(uuv_definition(dir)));
  def["mechanical"]["N"][0] = "sin(v1)";
  std::ofstream(bad) << def.dump();
  CHECK(run_cli("audit --system '" + bad.string() + "'", dir).exit_code == 2);
  // mechanical build disagreeing with the supplied drift expressions.
  json def2 = json::parse(slurp(uuv_definition(dir)));
  def2["drift"][2] = "2*omega";
  def2["controls"] = {{"0", "0", "0", "1/3", "0", "0"},
                      {"0", "0", "0", "0", "1/5", "0"},
                      {"0", "0", "0", "0", "0", "1/2"}};
  std::ofstream(bad) << def2.dump();
  CHECK(run_cli("audit --system '" + bad.string() + "'", dir).exit_code == 2);
}

TEST_CASE("the minimal mechanical definition loads and audits") {
  const fs::path def =
      fs::path(__FILE__).parent_path() / ".." / "data" / "double_integrator.json";
  AffineSystem sys = load_system_file(def.string());
  CHECK(sys.fully_actuated_mechanical());
  CHECK(sys.n() == 2);
  TempDir dir;
  CHECK(run_cli("audit --system '" + def.string() + "'", dir).exit_code == 0);
  CHECK(run_cli("brackets --system '" + def.string() + "' --depth 3", dir)
            .exit_code == 0);
}

TEST_CASE("definition loader validation") {
  json def;
  def["schema_version"] = 1;
  def["variables"] = {{{"name", "a"}, {"kind", "poly"}, {"block", "x2"}},
                      {{"name", "b"}, {"kind", "poly"}, {"block", "x1"}}};
  def["drift"] = {"0", "0"};
  def["controls"] = {{"1", "0"}};
  def["bounds"] = {{"-1", "1"}};
  // x1 variables must precede x2 variables.
  CHECK_THROWS_AS(load_system_definition(def), InvalidArgument);

  def["variables"] = {{{"name", "a"}, {"kind", "polynomial"}, {"block", "x1"}}};
  CHECK_THROWS_AS(load_system_definition(def), InvalidArgument);

  def["variables"] = {{{"name", "a"}, {"kind", "poly"}, {"block", "x3"}}};
  CHECK_THROWS_AS(load_system_definition(def), InvalidArgument);
}

TEST_CASE("preset runs are deterministic byte-for-byte") {
  TempDir dir;
  const std::string args = "preset uuv-rotation --T 1 --out-dir '" +
                           dir.path().string() + "'";
  REQUIRE(run_cli(args, dir).exit_code == 0);
  const std::string csv1 = slurp(dir.path() / "uuv-rotation.csv");
  const std::string ev1 = slurp(dir.path() / "uuv-rotation_events.json");
  const std::string rep1 = slurp(dir.path() / "uuv-rotation_report.json");
  REQUIRE(run_cli(args, dir).exit_code == 0);
  CHECK(slurp(dir.path() / "uuv-rotation.csv") == csv1);
  CHECK(slurp(dir.path() / "uuv-rotation_events.json") == ev1);
  CHECK(slurp(dir.path() / "uuv-rotation_report.json") == rep1);
  CHECK(!csv1.empty());

  const json report = json::parse(rep1);
  CHECK(report.at("switching_restrictions").at("pass") == true);

  // Default seeds put the torque switching at t = seed_vel / seed_pos = 0.5.
  const json events = json::parse(ev1);
  int sign_changes = 0;
  for (const auto& e : events.at("events")) {
    if (e.at("kind") == "sign-change") {
      ++sign_changes;
      CHECK(e.at("channel") == 3);
      CHECK(std::abs(e.at("t").get<double>() - 0.5) <= 1e-9);
    }
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("preset names cover the four scenarios") {
  TempDir dir;
  for (const std::string& name :
       {"uuv-translate-1", "uuv-translate-3", "uuv-bangbang"}) {
    const RunResult r = run_cli(
        "preset " + name + " --T 0.5 --out-dir '" + dir.path().string() + "'",
        dir);
    CHECK(r.exit_code == 0);
  }
  CHECK(run_cli("preset nope --out-dir '" + dir.path().string() + "'", dir)
            .exit_code == 2);
}
