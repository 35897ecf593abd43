#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// stdout only; diagnostics go to stderr and are dropped here
RunResult run(const std::string& args) {
  std::string cmd = std::string(STABLERANK_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("rank prints a text report and exits 0") {
  RunResult r = run("rank \"Cx(S(5))\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gsr = 4") != std::string::npos);
  CHECK(r.out.find("csr = 4") != std::string::npos);
}

TEST_CASE("rank exits 2 on parse errors") {
  RunResult r = run("rank \"M(2,\"");
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());  // the report stream stays clean
}

TEST_CASE("rank exits 3 on inconsistent axioms") {
  std::string path = "/tmp/stablerank_bad_axiom.json";
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  fputs("[{\"node\":\"\",\"quantity\":\"csr\",\"lo\":5,\"hi\":5}]", f);
  fclose(f);
  RunResult r = run("rank C --axioms-file " + path);
  CHECK(r.exit_code == 3);
}

TEST_CASE("json reports parse and carry the stable shape") {
  RunResult r = run("rank \"Cx(T(6))\" --json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["query"] == "Cx(T(6))");
  CHECK(j["csr"]["lo"] == 4);
  CHECK(j["csr"]["hi"] == 4);
  CHECK(j["flags"].contains("k1_zero"));
  CHECK(!j.contains("trace"));

  RunResult t = run("rank \"Cx(T(6))\" --json --trace");
  auto jt = nlohmann::json::parse(t.out);
  CHECK(jt.contains("trace"));
  CHECK(!jt["trace"].empty());
  CHECK(jt["trace"][0].contains("citation"));

  // identical invocations give byte-identical reports
  CHECK(run("rank \"Cx(T(6))\" --json --trace").out == t.out);
}

TEST_CASE("tables print one row per dimension") {
  RunResult r = run("table tori --max-d 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("5, 4, 4") != std::string::npos);

  r = run("table spheres --max-d 8");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("8, 4, ") != std::string::npos);
  CHECK(r.out.find("4, 1, ") != std::string::npos);
}

TEST_CASE("check passes on a fresh build") {
  RunResult r = run("check --corpus-size 60");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("self-check passed") != std::string::npos);
}
