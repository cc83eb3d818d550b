#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef CUBESECT_CLI_PATH
#error "CUBESECT_CLI_PATH must point at the cubesect binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd =
      std::string("'") + CUBESECT_CLI_PATH + "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string second_line(const std::string& text) {
  const auto first_nl = text.find('\n');
  REQUIRE(first_nl != std::string::npos);
  const auto second_nl = text.find('\n', first_nl + 1);
  return text.substr(first_nl + 1, second_nl - first_nl - 1);
}

}  // namespace

TEST_CASE("eval emits the exact plane-section value") {
  const RunResult r = run("eval --j 0 --k 2 --n 3");
  CHECK(r.exit_code == 0);
  const auto cols = fields(second_line(r.out));
  REQUIRE(cols.size() == 11);
  CHECK(cols[3] == "exact");
  CHECK(cols[4] == "4.701918624367287");
  CHECK(cols[7] == "12");
}

TEST_CASE("eval of line sections returns two endpoints") {
  const RunResult r = run("eval --j 0 --k 1 --n 100");
  CHECK(r.exit_code == 0);
  const auto cols = fields(second_line(r.out));
  const double value = std::strtod(cols[4].c_str(), nullptr);
  CHECK(std::abs(value - 2.0) <= 1e-8);
}

TEST_CASE("eval bound ordering for positive-dimensional faces") {
  const RunResult r = run("eval --j 1 --k 2 --n 5");
  CHECK(r.exit_code == 0);
  const auto cols = fields(second_line(r.out));
  CHECK(cols[3] == "bounds");
  CHECK(cols[4].empty());
  const double lower = std::strtod(cols[6].c_str(), nullptr);
  CHECK(cols[7] == "10");
  CHECK(lower > 0.0);
  CHECK(lower <= 10.0);
}

TEST_CASE("eval sweeps stream one row per grid point") {
  const RunResult r = run("eval --j 0 --k 2 --n 3..7");
  CHECK(r.exit_code == 0);
  int rows = 0;
  for (char c : r.out)
    if (c == '\n') ++rows;
  CHECK(rows == 6);  // header plus five records
}

TEST_CASE("json and csv encodings agree on every value") {
  const RunResult csv = run("eval --j 0..1 --k 2 --n 4 --format csv");
  const RunResult js = run("eval --j 0..1 --k 2 --n 4 --format json");
  CHECK(csv.exit_code == 0);
  CHECK(js.exit_code == 0);
  const auto parsed = nlohmann::json::parse(js.out);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  const auto cols = fields(second_line(csv.out));
  CHECK(parsed[0]["method"] == "exact");
  CHECK(std::strtod(cols[4].c_str(), nullptr) ==
        parsed[0]["value"].get<double>());
  CHECK(std::strtod(cols[6].c_str(), nullptr) ==
        parsed[0]["lower_bound"].get<double>());
  CHECK(parsed[1]["value"].is_null());
}

TEST_CASE("simulate is byte-identical across reruns and worker counts") {
  const std::string base = "simulate --j 1 --k 2 --n 4 --samples 2000 --seed 9";
  const RunResult once = run(base + " --workers 1");
  const RunResult again = run(base + " --workers 1");
  const RunResult wide = run(base + " --workers 4");
  CHECK(once.exit_code == 0);
  CHECK(once.out == again.out);
  CHECK(once.out == wide.out);
  const auto cols = fields(second_line(once.out));
  CHECK(cols[3] == "face_hit_lp");
  CHECK(cols[9] == "2000");
  CHECK(cols[10] == "9");
}

TEST_CASE("simulate with entropy seeds differs between runs") {
  const std::string base =
      "simulate --j 0 --k 2 --n 3 --samples 50 --seed random";
  const auto a = fields(second_line(run(base).out));
  const auto b = fields(second_line(run(base).out));
  CHECK(a[10] != b[10]);
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run("eval --j 2 --k 2 --n 3").exit_code == 2);
  CHECK(run("eval --j 0 --k 2").exit_code == 2);
  CHECK(run("eval --j 0 --k 2 --n nope").exit_code == 2);
  CHECK(run("simulate --j 0 --k 3 --n 5 --method polygon_exact").exit_code == 2);
  CHECK(run("simulate --j 0 --k 2 --n 3 --seed -4").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("numerical failures exit with code three") {
  CHECK(run("eval --j 0 --k 2 --n 5 --tol 1e-300").exit_code == 3);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("eval --help").exit_code == 0);
}

TEST_CASE("quick verification suite passes end to end") {
  const RunResult r = run("verify --level quick --seed 1");
  CHECK(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["all_passed"] == true);
  CHECK(report["level"] == "quick");
  CHECK(report["checks"].size() == 10);  // two slow checks run only at full
  for (const auto& check : report["checks"]) CHECK(check["passed"] == true);
}
