#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

// Spawns the real binary; exercises exit codes and JSON surfaces end to end.

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

CliResult run_cli(const std::string& args) {
  const std::string command =
      std::string(CAPFAIR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof(buffer), pipe)) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = output;
  return result;
}

// One shared scratch directory, populated with the fixture files once.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path path = fs::temp_directory_path() /
                    ("capfair_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
    for (const char* fixture :
         {"intro", "table2", "table3", "table4", "table5", "table6"}) {
      CliResult emitted = run_cli(std::string("fixtures ") + fixture +
                                  " --out " + path.string());
      REQUIRE(emitted.exit_code == 0);
    }
    return path;
  }();
  return dir;
}

std::string fx(const std::string& name) {
  return (scratch_dir() / (name + ".json")).string();
}

}  // namespace

TEST_CASE("solve: allocation, trace file, and oracle certification") {
  const std::string alloc_path = (scratch_dir() / "out_alloc.json").string();
  const std::string trace_path = (scratch_dir() / "out_trace.json").string();
  CliResult result = run_cli("solve " + fx("table2") + " --out " + alloc_path +
                             " --trace " + trace_path + " --certify");
  REQUIRE(result.exit_code == 0);

  Json summary = Json::parse(result.output);
  CHECK(summary["exchanges"] == 1);
  CHECK(summary["properties"]["ef11"] == true);
  CHECK(summary["properties"]["ef1"] == true);
  CHECK(summary["oracle"]["pareto_optimal"] == true);
  CHECK(summary["oracle"]["ef1_allocation_exists"] == true);
  CHECK(summary["oracle"]["feasible_allocations"] == "12");
  CHECK(summary["allocation"]["bundles"]["a1"] ==
        Json::array({"o2", "o3", "o6"}));

  Json alloc = Json::parse(std::ifstream(alloc_path));
  CHECK(alloc["bundles"]["a2"] == Json::array({"o1", "o4", "o5"}));

  Json trace = Json::parse(std::ifstream(trace_path));
  CHECK(trace["renamed"] == false);
  REQUIRE(trace["steps"].size() == 1);
  CHECK(trace["steps"][0]["exchange"]["from_first_bundle"] == "o1");
  CHECK(trace["steps"][0]["exchange"]["from_second_bundle"] == "o3");
  CHECK(trace["steps"][0]["exchange"]["ratio"] == "1/2");
  CHECK(trace["initial"]["bundles"]["a1"] == Json::array({"o1", "o2", "o6"}));
}

TEST_CASE("solve: certification notes when no single-removal solution exists") {
  CliResult result = run_cli("solve " + fx("intro") + " --certify");
  REQUIRE(result.exit_code == 0);
  Json summary = Json::parse(result.output);
  CHECK(summary["exchanges"] == 0);
  CHECK(summary["properties"]["ef11"] == true);
  CHECK(summary["properties"]["ef1"] == false);
  CHECK(summary["oracle"]["ef1_allocation_exists"] == false);
  CHECK(summary["oracle"]["pareto_optimal"] == true);
}

TEST_CASE("solve: schema errors exit 2, wrong agent count exits 3") {
  const std::string bad = (scratch_dir() / "bad.json").string();
  std::ofstream(bad) << "{\"agents\": [\"a\"]}";
  CHECK(run_cli("solve " + bad).exit_code == 2);
  CHECK(run_cli("solve " + (scratch_dir() / "missing.json").string())
            .exit_code == 2);

  const std::string three = (scratch_dir() / "three.json").string();
  REQUIRE(run_cli("gen --seed 2 --agents 3 --items 3 --out " + three)
              .exit_code == 0);
  CHECK(run_cli("solve " + three).exit_code == 3);
  CHECK(run_cli("lines " + three).exit_code == 3);
}

TEST_CASE("check: exit codes track the verdict") {
  CHECK(run_cli("check " + fx("table6") + " " + fx("table6_A") +
                " --property ef1")
            .exit_code == 0);
  CHECK(run_cli("check " + fx("table6") + " " + fx("table6_A_prime") +
                " --property ef1")
            .exit_code == 1);
  CHECK(run_cli("check " + fx("intro") + " " + fx("intro_split") +
                " --property ef11")
            .exit_code == 0);
  CHECK(run_cli("check " + fx("intro") + " " + fx("intro_split") +
                " --property ef")
            .exit_code == 1);
  CHECK(run_cli("check " + fx("table6") + " " + fx("table6_A") +
                " --property bogus")
            .exit_code == 2);
}

TEST_CASE("check: partial allocations need the explicit flag") {
  const std::string args = "check " + fx("table3") + " " +
                           fx("table3_round1") + " --property ef1";
  CHECK(run_cli(args).exit_code == 2);           // incomplete => infeasible
  CHECK(run_cli(args + " --partial").exit_code == 0);
}

TEST_CASE("check: preference graphs") {
  CliResult result = run_cli("check " + fx("table5") + " " +
                             fx("table5_singletons") +
                             " --property envy-graph");
  REQUIRE(result.exit_code == 0);
  Json graph = Json::parse(result.output);
  CHECK(graph["edges"].size() == 4);
  CHECK(graph["has_cycle"] == true);
  CHECK(graph["sinks"] == Json::array({"a4"}));

  CliResult top = run_cli("check " + fx("table5") + " " +
                          fx("table5_singletons") + " --property top-trading");
  REQUIRE(top.exit_code == 0);
  CHECK(Json::parse(top.output)["has_cycle"] == false);
}

TEST_CASE("check: pareto optimality") {
  CHECK(run_cli("check " + fx("table6") + " " + fx("table6_A") +
                " --property po")
            .exit_code == 1);
}

TEST_CASE("oracle: find, count, wmax, po, cycles") {
  CliResult absent =
      run_cli("oracle find " + fx("intro") + " --property ef1");
  CHECK(absent.exit_code == 1);
  CHECK(Json::parse(absent.output)["found"] == false);

  CliResult present =
      run_cli("oracle find " + fx("intro") + " --property ef11");
  CHECK(present.exit_code == 0);
  CHECK(Json::parse(present.output)["allocation"]["bundles"]["a1"] ==
        Json::array({"o1"}));

  CliResult count = run_cli("oracle count " + fx("table2"));
  CHECK(count.exit_code == 0);
  CHECK(Json::parse(count.output)["feasible_allocations"] == "12");

  CliResult wmax = run_cli("oracle wmax " + fx("table2"));
  CHECK(wmax.exit_code == 0);
  Json wmax_doc = Json::parse(wmax.output);
  CHECK(wmax_doc["max_weighted_sum"] == "-3/2");
  CHECK(wmax_doc["argmax_count"] == 1);
  CHECK(wmax_doc["argmax"][0]["bundles"]["a1"] ==
        Json::array({"o1", "o2", "o6"}));

  CHECK(run_cli("oracle po " + fx("table6") + " " + fx("table6_A"))
            .exit_code == 1);

  CliResult cycles =
      run_cli("oracle cycles " + fx("table2") + " " + fx("table2_initial") +
              " " + fx("table2_after_o5_o6_swap"));
  CHECK(cycles.exit_code == 0);
  Json cycles_doc = Json::parse(cycles.output);
  CHECK(cycles_doc["count"] == 1);
  CHECK(cycles_doc["cycles"][0]["category"] == "c2");
}

TEST_CASE("oracle: tiny budgets are reported as errors") {
  CHECK(run_cli("oracle find " + fx("table2") + " --property ef1 --budget 3")
            .exit_code == 2);
}

TEST_CASE("gen: deterministic output and parameter validation") {
  CliResult first = run_cli("gen --seed 5 --items 4,2 --caps 2,1");
  CliResult second = run_cli("gen --seed 5 --items 4,2 --caps 2,1");
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
  Json inst = Json::parse(first.output);
  CHECK(inst["agents"].size() == 2);
  CHECK(inst["categories"][0]["items"].size() == 4);

  CHECK(run_cli("gen --seed 5 --items 4 --caps 1").exit_code == 2);
  CHECK(run_cli("gen --seed 5 --items 4 --cap-policy bogus").exit_code == 2);
  CHECK(run_cli("gen --seed 5 --categories 3 --items 2,2").exit_code == 2);

  CliResult spread =
      run_cli("gen --seed 5 --categories 3 --items 2 --same-sign");
  REQUIRE(spread.exit_code == 0);
  CHECK(Json::parse(spread.output)["categories"].size() == 3);
}

TEST_CASE("gen output feeds straight back into solve") {
  const std::string path = (scratch_dir() / "gen_solve.json").string();
  REQUIRE(run_cli("gen --seed 77 --items 5,3 --out " + path).exit_code == 0);
  CliResult solved = run_cli("solve " + path);
  CHECK(solved.exit_code == 0);
  CHECK(Json::parse(solved.output)["properties"]["ef11"] == true);
}

TEST_CASE("lines: geometry export in JSON and CSV") {
  CliResult result = run_cli("lines " + fx("table2"));
  REQUIRE(result.exit_code == 0);
  Json doc = Json::parse(result.output);
  CHECK(doc["lines"].size() == 6);
  bool found_crossing = false;
  for (const auto& entry : doc["intersections"]) {
    if (entry["item_a"] == "o5" && entry["item_b"] == "o6") {
      found_crossing = true;
      CHECK(entry["kind"] == "point");
      CHECK(entry["w1"] == "1/3");
      CHECK(entry["ratio"] == "1/2");
    }
    // o3 and o4 are parallel: never recorded.
    CHECK_FALSE((entry["item_a"] == "o3" && entry["item_b"] == "o4"));
  }
  CHECK(found_crossing);

  CliResult csv = run_cli("lines " + fx("table2") + " --csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.find("item,slope,intercept") == 0);
  CHECK(csv.output.find("o6,2,0") != std::string::npos);
}

TEST_CASE("fixtures: stdout document and unknown ids") {
  CliResult result = run_cli("fixtures table4");
  REQUIRE(result.exit_code == 0);
  Json doc = Json::parse(result.output);
  CHECK(doc["instance"]["categories"][0]["capacity"] == 2);
  CHECK(doc["allocations"]["midrun"]["bundles"]["a2"] ==
        Json::array({"o1_2", "o1_3"}));

  CHECK(run_cli("fixtures nope").exit_code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli("bogusverb").exit_code == 2);
  CHECK(run_cli("solve").exit_code == 2);              // missing positional
  CHECK(run_cli("check " + fx("intro")).exit_code == 2);  // missing property
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}
