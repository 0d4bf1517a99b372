#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "tcurves/io.hpp"
#include "test_support.hpp"

using namespace tcurves;
using testing::fixture;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tcurves");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json result(const Run& r) {
  REQUIRE(r.code == 0);
  return Json::parse(r.out)["result"];
}

}  // namespace

TEST_CASE("value commands") {
  std::string f44 = fixture("three_branches.json");
  auto r = cli({"mult", "--family", f44, "--poly", "z"});
  Json j = Json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["config"]["poly"] == "z");
  CHECK(j["result"]["value"] == "3/2");
  CHECK(result(cli({"mult", "--family", f44, "--poly", "1"}))["value"] == "0");
  auto rd = result(cli({"rdeg", "--family", fixture("power_strip_u1_w1.json"), "--poly", "x^2", "--integer"}));
  CHECK(rd["value"] == "-2");
  CHECK(rd["integer_degree"] == "0");
  CHECK(result(cli({"rdeg", "--family", fixture("plane_2d_infinity.json"), "--poly", "x*y+y^2"}))["value"] == "0");
  CHECK(result(cli({"rdeg-dual", "--family", fixture("plane_2d_origin.json"), "--poly", "x*y+y^2"}))["value"] == "0");
}

TEST_CASE("exit codes") {
  std::string f44 = fixture("three_branches.json");
  CHECK(cli({"mult", "--family", "missing.json", "--poly", "z"}).code == 2);
  CHECK(cli({"mult", "--family", f44, "--poly", "z +"}).code == 2);
  CHECK(cli({"mult", "--family", f44, "--poly", "w"}).code == 2);
  CHECK(cli({"mult", "--family", f44}).code == 2);
  CHECK(cli({"rdeg", "--family", f44, "--poly", "z"}).code == 3);
  CHECK(cli({"dualize", "--poly", "0"}).code == 3);
  CHECK(cli({"branches", "--curve", "x^2*y^2"}).code == 5);
  CHECK(cli({"branches", "--curve", "x^2 + y^2"}).code == 3);
  // A truncation too coarse for the degree asked.
  auto branches = cli({"branches", "--curve", "x*y - y", "--truncate", "1"});
  std::string path = "cli_test_family.json";
  {
    std::ofstream(path) << Json::parse(branches.out)["result"].dump();
  }
  CHECK(cli({"strata", "--family", path, "--degree", "4"}).code == 4);
  std::remove(path.c_str());
  CHECK(cli({"strata", "--family", f44, "--degree", "1", "--mode", "sideways"}).code == 2);
  auto help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Polynomial grammar") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  std::vector<std::vector<std::string>> commands{
      {"reduce", "--family", fixture("three_branches.json"), "--degree", "2", "--verify", "50", "--seed", "3"},
      {"branches", "--curve", "x*y + y^2", "--truncate", "6"},
      {"strata", "--family", fixture("level_xy_minus_y.json"), "--degree", "2", "--probe", "x*y"},
      {"oracle", "--set", fixture("sets/level_xy_minus_y.json"), "--poly", "x*y", "--samples", "300"},
      {"dualize", "--poly", "x^3 - y*z + 1"},
  };
  for (const auto& c : commands) {
    auto a = cli(c), b = cli(c);
    auto serial = c;
    serial.insert(serial.begin(), "--serial");
    auto s = cli(serial);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json ja = Json::parse(a.out), js = Json::parse(s.out);
    CHECK(ja["result"] == js["result"]);
  }
}

TEST_CASE("reduce, strata and branches payloads") {
  auto red = result(cli({"reduce", "--family", fixture("three_branches.json"), "--degree", "2", "--points", "1,5;2,6;3,7;4,8",
                         "--verify", "20", "--seed", "1"}));
  CHECK(red["branch_count"] == 12);
  CHECK(red["saturated"] == false);
  CHECK(red["verification"]["family_mismatches"] == 0);
  CHECK(red["digest"].get<std::string>().size() == 16);
  // The emitted curves load back as a family with the same values.
  auto back = family_from_json(red["curves"]);
  CHECK(rel_mult(parse_polynomial("z", back.variables()), back).value == ExtRat(Rat(3, 2)));

  auto st = result(cli({"strata", "--family", fixture("level_xy_minus_y.json"), "--degree", "2", "--probe", "x*y - y"}));
  CHECK(st["columns"].size() == 6);
  CHECK(st["strata"][0]["value"] == "0");
  CHECK(st["strata"][0]["dimension"] == 2);
  CHECK(st["membership"]["x*y - y"] == "0");

  auto br = result(cli({"branches", "--curve", "x^2*y - x"}));
  CHECK(br["branches"].size() == 1);
  CHECK(br["branches"][0]["exact"] == true);
  CHECK(br["unsupported"].size() == 1);
  CHECK(br["truncation"] == 16);

  auto du = cli({"dualize", "--poly", "x + 1", "--vars", "x,y", "--text"});
  CHECK(du.out == "x^2 + y^2 + x\n");
}

TEST_CASE("output file") {
  std::string path = "cli_test_out.json";
  auto r = cli({"-o", path, "dualize", "--poly", "x*y"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["result"]["inverted"] == "x*y");
  std::remove(path.c_str());
}
