#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include "nelson/demos.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(NELSON_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(NELSON_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("exit codes: 0 pass, 1 logical failure, 2 usage") {
  REQUIRE(run_cli("check-algebra " + fixture("lukasiewicz3.alg") + " --class sprime").exit_code ==
          0);
  REQUIRE(run_cli("check-algebra " + fixture("godel3.alg") + " --class sprime").exit_code == 1);
  REQUIRE(run_cli("check-algebra /nonexistent.alg --class sprime").exit_code == 2);
  REQUIRE(run_cli("check-algebra " + fixture("lukasiewicz3.alg") + " --class bogus").exit_code ==
          2);
  REQUIRE(run_cli("").exit_code == 2);

  REQUIRE(run_cli("check-proof " + fixture("prop21_1.prf")).exit_code == 0);
  REQUIRE(run_cli("check-proof " + fixture("inconsistency.prf")).exit_code == 1);
  REQUIRE(run_cli("check-proof " + fixture("inconsistency.prf") + " --mode historical")
              .exit_code == 0);
  REQUIRE(run_cli("check-proof " + fixture("n4_weak_id.prf") + " --calculus n4").exit_code == 0);

  REQUIRE(run_cli("demo nosuchitem").exit_code == 2);
}

TEST_CASE("eval prints the named element") {
  RunResult r = run_cli("eval " + fixture("lukasiewicz3.alg") + " \"x * x\" x=h");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "0\n");
  RunResult imp = run_cli("eval " + fixture("lukasiewicz3.alg") + " \"x => y\" x=1,y=h");
  REQUIRE(imp.out == "h\n");
  REQUIRE(run_cli("eval " + fixture("lukasiewicz3.alg") + " \"x => y\" x=1").exit_code == 2);
}

TEST_CASE("countermodel exit semantics") {
  RunResult none =
      run_cli("countermodel --statement \"x => x = y => y\" --class sprime --max-size 3");
  REQUIRE(none.exit_code == 0);
  RunResult found =
      run_cli("countermodel --statement \"x => x = y => y\" --class n4 --max-size 3");
  REQUIRE(found.exit_code == 1);
  REQUIRE(found.out.find("countermodel found") != std::string::npos);
}

TEST_CASE("enumerate reports counts") {
  RunResult r = run_cli("enumerate --class sprime --size 3 --counts-only");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("size 3: 1") != std::string::npos);
  REQUIRE(run_cli("enumerate --class sprime --size 9").exit_code == 2);
}

TEST_CASE("dmt emits an accepted transformed derivation") {
  RunResult r = run_cli("dmt " + fixture("dmt_input.prf") + " --discharge p");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("goal: p * p => q") != std::string::npos);
}

TEST_CASE("demo transcripts are byte-stable") {
  RunResult a = run_cli("demo inconsistency");
  RunResult b = run_cli("demo inconsistency");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(a.out.find("PASS") != std::string::npos);

  RunResult mv = run_cli("demo mv3");
  REQUIRE(mv.exit_code == 0);
}

TEST_CASE("compile-calculus lists the conditions") {
  RunResult r = run_cli("compile-calculus " + fixture("nelson_s.cal") + " --gamma-bound 1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("E(A2): 0 => x = 1") != std::string::npos);
  REQUIRE(r.out.find("Q(E)|G|=0: x = 1, x => y = 1 ==> y = 1") != std::string::npos);
}

TEST_CASE("demo pipelines pass in-process") {
  for (const auto& item : nelson::demo_items()) {
    CAPTURE(item);
    nelson::DemoResult r = nelson::run_demo(item, NELSON_FIXTURE_DIR);
    REQUIRE(r.pass);
    // transcripts are deterministic
    REQUIRE(nelson::run_demo(item, NELSON_FIXTURE_DIR).transcript == r.transcript);
  }
}
