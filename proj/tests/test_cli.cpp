#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(MTLZ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  return res;
}

json run_json(const std::string& args) {
  RunResult res = run(args);
  REQUIRE(res.exit_code == 0);
  return json::parse(res.output);
}

}  // namespace

TEST_CASE("family emits graph6 plus a summary") {
  json doc = run_json("family 'K(2,3)'");
  CHECK(doc["n"] == 5);
  CHECK(doc["edges"] == 6);
  CHECK(doc["diameter"] == 2);
  CHECK(doc["degrees"] == json::array({3, 3, 2, 2, 2}));
  CHECK(doc["manifest"]["tool"].get<std::string>().starts_with("mtlz"));
  CHECK(run("family 'Fan(2)'").exit_code == 1);
}

TEST_CASE("check reports rules with witnesses") {
  std::string k33 = run_json("family 'K(3,3)'")["graph6"];
  json doc = run_json("check '" + k33 + "'");
  CHECK(doc["candidate"] == false);
  CHECK(doc["no_k33"]["pass"] == false);
  CHECK(doc["no_k33"]["witness"].size() == 6);
  CHECK(doc["bipartite"] == true);
}

TEST_CASE("pipeline stops after a failed rule stage") {
  std::string k33 = run_json("family 'K(3,3)'")["graph6"];
  json doc = run_json("pipeline '" + k33 + "'");
  CHECK(doc["rules"]["candidate"] == false);
  CHECK(!doc.contains("orientation"));
  CHECK(!doc.contains("gamma"));
}

TEST_CASE("pipeline finds a nontrivial solution on the product graph") {
  std::string g6 = run_json("family 'Product(K2,Fan(3))'")["graph6"];
  json doc = run_json("pipeline '" + g6 + "' --restarts 40");
  CHECK(doc["rules"]["candidate"] == true);
  bool nontrivial = false;
  for (const auto& r : doc["gamma"])
    if (r["result"]["status"] == "nontrivial") nontrivial = true;
  CHECK(nontrivial);
}

TEST_CASE("enumerate then report round trip") {
  std::string dir = std::string(MTLZ_TEST_TMPDIR);
  json doc8 = [&] {
    run("enumerate --n 8 --out " + dir + "/cli_n8.jsonl");
    run("enumerate --n 9 --out " + dir + "/cli_n9.jsonl");
    return run_json("report " + dir + "/cli_n8.jsonl " + dir + "/cli_n9.jsonl");
  }();
  REQUIRE(doc8["table1"].size() == 2);
  CHECK(doc8["table1"][0] ==
        json({{"n", 8}, {"free_1221", 1}, {"with_1221", 1}, {"total", 2}}));
  CHECK(doc8["table1"][1] ==
        json({{"n", 9}, {"free_1221", 0}, {"with_1221", 2}, {"total", 2}}));
  CHECK(run("report " + dir + "/cli_n8.jsonl --from 8 --to 9").exit_code == 1);
  CHECK(run("report").exit_code != 0);
}

TEST_CASE("gamma accepts an explicit r assignment file") {
  // 4-cycle 0-1-2-3: both r factors forced to -1.
  std::string dir = std::string(MTLZ_TEST_TMPDIR);
  std::string rfile = dir + "/c4_r.json";
  {
    std::ofstream os(rfile);
    os << R"({"assignment": [
      {"a":0,"c":1,"b":2,"d":3,"value":-1},
      {"a":1,"c":0,"b":3,"d":2,"value":-1}]})";
  }
  json doc = run_json("gamma Cl --r-file " + rfile + " --restarts 10 --seed 3");
  CHECK(doc["result"]["status"] == "nontrivial");
  CHECK(doc["result"]["residual"].get<double>() <= 1e-10);
}

TEST_CASE("orient emits the two surviving orientation classes") {
  std::string g6 = run_json("family Catalog1441_2")["graph6"];
  json doc = run_json("orient '" + g6 + "'");
  CHECK(doc["counts"]["isomorphism_classes"] == 2);
  CHECK(doc["counts"]["reversal_classes"] == 4);
  CHECK(doc["orientations"].size() == 2);
  for (const auto& cls : doc["orientations"]) CHECK(cls["r_solutions"].size() == 2);
}

TEST_CASE("errors exit nonzero with a JSON message on stderr") {
  CHECK(run("check garbage").exit_code == 1);
  CHECK(run("verify /nonexistent.json").exit_code == 1);
}
