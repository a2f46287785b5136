#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "subbergman/report_json.hpp"

using subbergman::json;

namespace {

struct Result {
  int status;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(SUBBERGMAN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("kernel-eval through flags") {
  const auto r = cli("kernel-eval --set s=2 --set z=0.5 --set w=0.5");
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["payload"]["value"]["re"].get<double>() - 16.0 / 9.0) < 1e-12);
}

TEST_CASE("job file, flag overrides and output files") {
  {
    std::ofstream("cli_job.json") << R"({"command": "doublestar-check", "parameters": {"seed": 1, "alpha": 2, "count": 20}})";
  }
  REQUIRE(cli("--job cli_job.json --alpha 1 --a 0.3,0 --out cli_a.json").status == 0);
  REQUIRE(cli("--job cli_job.json --alpha 1 --a 0.3,0 --out cli_b.json").status == 0);
  const auto a = json::parse(slurp("cli_a.json")), b = json::parse(slurp("cli_b.json"));
  CHECK(a["job"]["parameters"]["alpha"] == 1.0);
  CHECK(a["job"]["parameters"]["a"] == "0.3,0");
  CHECK(a["payload"]["rank_one"] == true);
  CHECK(a["payload"].dump() == b["payload"].dump());
}

TEST_CASE("csv tables") {
  REQUIRE(cli("cyclicity --a 0.3,0 --set degrees=[0,1] --set n_work=60 --csv cli_c.csv --out cli_c.json").status == 0);
  CHECK(slurp("cli_c.csv").rfind("degree,residual\n", 0) == 0);
}

TEST_CASE("validation failures exit 1 with an error object") {
  for (const char* args : {"witness-search --set kernel=bergman", "nope", "boundary-probe --depth 3",
                           "kernel-eval --set s=2 --set z=2 --set w=0", "--job does_not_exist.json"}) {
    INFO(args);
    const auto r = cli(args);
    CHECK(r.status == 1);
    if (r.out.find('{') != std::string::npos) CHECK(json::parse(r.out).contains("error"));
  }
}

TEST_CASE("mismatched command and job file") {
  std::ofstream("cli_job2.json") << R"({"command": "kernel-eval", "parameters": {}})";
  CHECK(cli("pick-test --job cli_job2.json").status == 1);
}
