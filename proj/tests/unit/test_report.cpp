#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "prodlab/report.hpp"

using namespace prodlab;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("prodlab_test_" + name)).string(); }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("report shape and character table degrees") {
  const auto r = cli({"chartable", "An:5", "--json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "config", "results", "witnesses", "versions"});
  std::vector<int> degrees;
  for (const auto& chi : j["results"]["irreducibles"]) degrees.push_back(chi["degree"].get<int>());
  CHECK(degrees == std::vector<int>{1, 3, 3, 4, 5});
}

TEST_CASE("rank counts as decimal strings") {
  const auto r = cli({"fq", "count", "--n", "2", "--q", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["results"]["ranks"] == Json::array({"1", "9", "6"}));
}

TEST_CASE("gamma report is deterministic and carries both sides") {
  const std::vector<std::string> args{"growth", "gamma", "An:5", "--A", "random:10:7", "--B", "random:10:8"};
  const auto a = cli(args), b = cli(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["results"]["holds"] == true);
  CHECK(j["results"]["bound"].is_string());
  CHECK(j["witnesses"].size() == 1);
}

TEST_CASE("witnesses reverify and tampering is detected") {
  const std::string report = temp_path("cover.json");
  REQUIRE(cli({"--out", report, "growth", "cover", "An:5", "--A", "class:3", "--m-max", "6"}).code == kExitOk);
  auto v = cli({"verify-witness", report});
  CHECK(v.code == kExitOk);
  CHECK(Json::parse(v.out)["results"]["all_pass"] == true);

  Json j = Json::parse(std::ifstream(report));
  auto& w = j["witnesses"][0];
  w["conjugators"] = Json::array({"()"});
  w["sets"][0] = Json::array({"()", "(1 2 3)"});
  write(report, j.dump());
  v = cli({"verify-witness", report});
  CHECK(v.code == kExitClaimFailed);
  CHECK(Json::parse(v.out)["results"]["claims"][0]["pass"] == false);

  w["sets"][0] = Json::array({"(1 2)"});
  write(report, j.dump());
  CHECK(cli({"verify-witness", report}).code == kExitClaimFailed);

  w["type"] = "unknown";
  write(report, j.dump());
  CHECK(cli({"verify-witness", report}).code == kExitError);
  write(report, "not json");
  CHECK(cli({"verify-witness", report}).code == kExitError);
  std::filesystem::remove(report);
}

TEST_CASE("matrix witnesses reverify") {
  const std::string report = temp_path("akblcm.json");
  REQUIRE(cli({"--out", report, "--seed", "3", "sl", "akblcm", "--n", "2", "--q", "3", "--random", "4"}).code == kExitOk);
  CHECK(cli({"verify-witness", report}).code == kExitOk);
  REQUIRE(cli({"--out", report, "fq", "cover", "--n", "1", "--q", "7", "--sets", "nonzero"}).code == kExitOk);
  CHECK(cli({"verify-witness", report}).code == kExitOk);
  std::filesystem::remove(report);
}

TEST_CASE("umvirate factorization witness") {
  const auto r = cli({"growth", "umvirate", "--n", "6", "--sigma", "(1 3 5)(2 4 6)"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["witnesses"][0]["type"] == "umvirate_factorization");
}

TEST_CASE("tabular output") {
  const auto p = cli({"partitions", "scan", "--n", "4", "--mode", "virtual"});
  REQUIRE(p.code == kExitOk);
  CHECK(p.out.rfind("lambda,d,D,", 0) == 0);
  CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 6);
  const auto c = cli({"chartable", "Sn:3", "--csv"});
  CHECK(c.out.rfind("chi,degree,", 0) == 0);
  const auto r = cli({"--format", "csv", "fq", "ratio-scan", "--n", "2", "--q", "2"});
  CHECK(r.out.rfind("r1,r2,r3,t,count,ratio", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"nosuch"}).code == kExitUsage);
  CHECK(cli({"fq", "count", "--n", "x", "--q", "2"}).code == kExitUsage);
  CHECK(cli({"--format", "csv", "group", "An:5"}).code == kExitUsage);
  CHECK(cli({"group", "Sn:99"}).code == kExitError);
  CHECK(cli({"fq", "count", "--n", "2", "--q", "6"}).code == kExitError);
}

TEST_CASE("timing is opt-in") {
  CHECK(!Json::parse(cli({"group", "Sn:3"}).out).contains("wall_time_s"));
  CHECK(Json::parse(cli({"--timing", "group", "Sn:3"}).out).contains("wall_time_s"));
}

TEST_CASE("smoke suite is deterministic") {
  const auto a = cli({"suite", "smoke", "--seed", "5"}), b = cli({"suite", "smoke", "--seed", "5"});
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["results"]["criteria"].size() == 14);
  const auto w = temp_path("suite.json");
  write(w, a.out);
  CHECK(cli({"verify-witness", w}).code == kExitOk);
  std::filesystem::remove(w);
}
