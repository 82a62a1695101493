// Drives the installed command-line binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef TORHOM_CLI_PATH
#error "TORHOM_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TORHOM_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("list-types") {
  auto r = run_cli("list-types");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("A2") != std::string::npos);
  CHECK(r.out.find("G~2") != std::string::npos);
}

TEST_CASE("build, homology and the file schema") {
  std::string f = tmp_path("a2.json");
  auto r = run_cli("build A2 salvetti --out " + f);
  REQUIRE(r.exit_code == 0);

  std::ifstream in(f);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j.at("schema") == "torhom/chain-complex/v1");
  CHECK(j.at("degrees").size() == 3);
  CHECK(j.at("degrees")[0].at("dim") == 6);
  CHECK(j.at("degrees")[1].at("dim") == 12);
  CHECK(j.at("degrees")[2].at("dim") == 6);

  auto h = run_cli("homology " + f);
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("betti") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("build is byte-stable") {
  std::string f1 = tmp_path("t1.json"), f2 = tmp_path("t2.json");
  REQUIRE(run_cli("build A~2 toric --out " + f1).exit_code == 0);
  REQUIRE(run_cli("build A~2 toric --out " + f2).exit_code == 0);
  std::ifstream a(f1), b(f2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(!sa.empty());
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("toric and filtration builds match the expected cell counts") {
  std::string f = tmp_path("t42.json");
  auto r = run_cli("build A~2 toric --out " + f);
  CHECK(r.out.find("42 cells") != std::string::npos);
  std::remove(f.c_str());

  r = run_cli("build A2 filtration --require s2 --out " + f);
  CHECK(r.out.find("12 cells") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("homology of the toric A~1 complex") {
  std::string f = tmp_path("a1t.json");
  REQUIRE(run_cli("build A~1 toric --out " + f).exit_code == 0);
  auto h = run_cli("homology " + f);
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("1       3") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("verify and report verbs") {
  std::string f = tmp_path("report.json");
  auto v = run_cli("verify --type A1 --type A~1 --suite finite-salvetti --suite toric --out " + f);
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("0 failed") != std::string::npos);

  auto rep = run_cli("report " + f);
  CHECK(rep.exit_code == 0);
  CHECK(rep.out.find("PASS") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("build H9 salvetti").exit_code == 2);
  CHECK(run_cli("build A2 toric").exit_code == 2);
  CHECK(run_cli("build A2 nonsense").exit_code == 2);
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("homology does_not_exist.json").exit_code == 2);
  CHECK(run_cli("build A2 filtration --require s9").exit_code == 2);
}

TEST_CASE("alternate mu convention") {
  std::string f = tmp_path("mu.json");
  auto r = run_cli("build G~2 toric --mu-convention position --out " + f);
  CHECK(r.exit_code == 0);
  auto h = run_cli("homology " + f);
  CHECK(h.exit_code == 0);
  std::remove(f.c_str());
}
