#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dct");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dct::cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(DCT_GOLDEN_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dct_test_" + name)).string();
}

}  // namespace

TEST_CASE("run prints the outcome") {
  const Result r = invoke({"run", "0001010"});
  CHECK(r.code == 0);
  CHECK(r.out == "CLASSIFIED 0, sweeps=5, phases=3\n");
  CHECK(r.err.empty());
}

TEST_CASE("run --trace prints the space-time diagram") {
  const Result r = invoke({"run", "0001010", "--trace"});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(golden("ring_0001010.txt")) + "CLASSIFIED 0, sweeps=5, phases=3\n");
}

TEST_CASE("run with options") {
  CHECK(invoke({"run", "0120221", "--alphabet", "3"}).out.rfind("CLASSIFIED 2", 0) == 0);
  CHECK(invoke({"run", "0101"}).out.rfind("TIE", 0) == 0);
  CHECK(invoke({"run", "0001010", "--max-sweeps", "2"}).out.rfind("BUDGET_EXCEEDED", 0) == 0);

  const Result events = invoke({"run", "0001010", "--events"});
  CHECK(events.out.find(R"("event":"SWAP_CONVERGE")") != std::string::npos);

  const std::string path = temp_path("records.jsonl");
  CHECK(invoke({"run", "0001010", "--records", path}).code == 0);
  std::istringstream lines(read_file(path));
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    CHECK(nlohmann::json::parse(line).contains("case"));
  }
  CHECK(count == 35);
  std::remove(path.c_str());
}

TEST_CASE("run-d") {
  const Result r = invoke({"run-d", "--file", golden("grid_3x3_k3.grid")});
  CHECK(r.code == 0);
  CHECK(r.out == "CLASSIFIED 2, sweeps=6, phases=4\n");

  const Result traced = invoke({"run-d", "--file", golden("grid_3x3_k3.grid"), "--trace"});
  CHECK(traced.out == read_file(golden("grid_3x3_k3.txt")) + "CLASSIFIED 2, sweeps=6, phases=4\n");

  CHECK(invoke({"run-d", "-f", golden("grid_3x3_k3.grid"), "--mode", "paper-literal"}).code == 0);
  CHECK(invoke({"run-d", "-f", golden("grid_3x3_k3.grid"), "--mode", "largest"}).code == 2);
}

TEST_CASE("verify") {
  const Result r = invoke({"verify", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classified_correct: 2\n") != std::string::npos);
  CHECK(r.out.find("ties_seen: 2\n") != std::string::npos);

  const Result range = invoke({"verify", "--n", "1..10", "--workers", "3"});
  CHECK(range.code == 0);
  CHECK(range.out == invoke({"verify", "--n", "1..10"}).out);

  const std::string path = temp_path("report.json");
  CHECK(invoke({"verify", "--n", "1..6", "--report", path}).code == 0);
  const auto j = nlohmann::json::parse(read_file(path));
  CHECK(j["checked"] == 126);
  CHECK(j["clean"] == true);
  std::remove(path.c_str());
}

TEST_CASE("verify reports failures with exit code 1") {
  const Result r = invoke({"verify", "--n", "3..5", "--max-sweeps", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.find("result: FAIL") != std::string::npos);
}

TEST_CASE("sampled verify prints its seed") {
  const Result a = invoke({"verify", "--n", "30..31", "--samples", "50", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out.find("seed: 9") != std::string::npos);
  CHECK(a.out.find("checked: 100") != std::string::npos);
  CHECK(invoke({"verify", "--n", "30..31", "--samples", "50", "--seed", "9", "-w", "2"}).out == a.out);
}

TEST_CASE("verify-d") {
  const Result r = invoke({"verify-d", "--dims", "2x3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("checked: 64") != std::string::npos);
  const Result cmp = invoke({"verify-d", "--dims", "3x3", "--mode", "compare"});
  CHECK(cmp.code == 0);
  CHECK(cmp.out.find("mode comparison") != std::string::npos);
  CHECK(invoke({"verify-d", "--dims", "5x5"}).code == 2);
  CHECK(invoke({"verify-d", "--dims", "3y3"}).code == 2);
}

TEST_CASE("props") {
  const Result r = invoke({"props", "--n", "8", "--sizes", "30", "--samples", "20", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("seed: 4") != std::string::npos);
  CHECK(r.out.find("result: PASS") != std::string::npos);
  CHECK(invoke({"props", "--n", "6", "--sizes", ""}).code == 0);
}

TEST_CASE("alphabet") {
  const Result r = invoke({"alphabet", "--k", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> all;
  for (std::string line; std::getline(lines, line);) all.push_back(line);
  REQUIRE(all.size() == 19);
  CHECK(all[0] == "alphabet k=2: 18 symbols (2 base, 16 intermediate)");
  CHECK(all[1] == "0 0");
  CHECK(all[3] == "2 (o|0|0)");
  CHECK(invoke({"alphabet", "-k", "3"}).out.rfind("alphabet k=3: 43 symbols", 0) == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"run", "01", "--bogus"}).code == 2);
  CHECK(invoke({"run"}).code == 2);
  const Result digit = invoke({"run", "01#"});
  CHECK(digit.code == 2);
  CHECK(digit.err.find("non-digit") != std::string::npos);
  CHECK(invoke({"run", "012"}).code == 2);
  CHECK(invoke({"run", "01a"}).err.find("outside alphabet") != std::string::npos);
  CHECK(invoke({"run", "01", "--alphabet", "1"}).code == 2);
  CHECK(invoke({"run-d", "--file", "/nonexistent/grid"}).code == 2);
  CHECK(invoke({"verify", "--n", "30"}).code == 2);
  CHECK(invoke({"verify", "--n", "5..3"}).code == 2);
  CHECK(invoke({"verify", "--n", "x"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const Result r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-d") != std::string::npos);
}
