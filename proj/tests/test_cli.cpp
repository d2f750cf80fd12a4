// End-to-end tests of the command-line tool: exit codes, JSON output,
// determinism.  The binary path arrives in the JANKOV_CLI environment
// variable (set by CTest); data files are written to a scratch directory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "jankov/io.hpp"

using namespace jankov;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("JANKOV_CLI");
  REQUIRE_MESSAGE(p != nullptr, "JANKOV_CLI must point at the built binary");
  return p;
}

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string scratch(const std::string& name, const json& j) {
  std::string path = "/tmp/jankov_cli_test_" + name;
  std::ofstream f(path);
  f << j.dump(2);
  return path;
}

std::string z3_file() { return scratch("z3.json", algebra_to_json(chain(3))); }
std::string c4_file() { return scratch("c4.json", algebra_to_json(chain(4))); }

}  // namespace

TEST_CASE("self test") {
  RunResult r = run("--check");
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("alg info") {
  RunResult r = run("alg info " + z3_file());
  CHECK(r.status == 0);
  CHECK(r.out.find("size") != std::string::npos);

  RunResult j = run("--json alg info " + z3_file());
  CHECK(j.status == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed.at("size") == 3);
  CHECK(parsed.at("subdirectly_irreducible") == true);

  // poset input works too
  std::string pos = scratch("p.json", {{"size", 3}, {"covers", {{0, 1}, {1, 2}}}});
  CHECK(run("alg info " + pos).status == 0);
}

TEST_CASE("alg jankov and chi") {
  CHECK(run("alg jankov " + z3_file()).status == 0);
  RunResult j = run("--json alg chi " + z3_file());
  CHECK(j.status == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed.contains("raw"));
  CHECK(parsed.contains("simplified"));
  CHECK(parsed.at("td") == "td_impl");

  // relations route
  RunResult rel = run("--json alg chi " + z3_file() +
                      " --relations \"~~x = 1\" --variety gen:" + z3_file());
  CHECK(rel.status == 0);
  CHECK(json::parse(rel.out).contains("raw"));
}

TEST_CASE("alg leq exit codes") {
  CHECK(run("alg leq " + z3_file() + " " + c4_file()).status == 0);  // true
  CHECK(run("alg leq " + c4_file() + " " + z3_file()).status == 1);  // false
}

TEST_CASE("alg antichain and pretrue") {
  CHECK(run("alg antichain " + z3_file() + " " + c4_file()).status == 1);
  CHECK(run("alg pretrue " + z3_file() + " \"~~x -> x = 1\"").status == 0);
  CHECK(run("alg pretrue " + c4_file() + " \"~~x -> x = 1\"").status == 1);
}

TEST_CASE("ident decide / decompose / prime") {
  std::string v = "gen:" + z3_file();
  CHECK(run("ident decide --variety " + v + " \"(x -> y) | (y -> x) = 1\"").status == 0);
  RunResult r = run("--json ident decide --variety " + v + " \"x | ~x = 1\"");
  CHECK(r.status == 1);
  json parsed = json::parse(r.out);
  CHECK(parsed.at("verdict") == "refuted");
  CHECK(parsed.contains("certificate"));
  CHECK(parsed.at("certificate_checked") == true);
  CHECK(parsed.at("minimal_refuter_size") == 3);

  RunResult d = run("--json ident decompose --variety " + v + " \"~~x -> x = 1\"");
  CHECK(d.status == 0);
  json dj = json::parse(d.out);
  CHECK(dj.at("members").size() == 1);
  CHECK(dj.at("pool_verified") == true);

  RunResult p = run("--json ident prime --ambient heyting --bound 5 \"~~x -> x = 1\"");
  CHECK(p.status == 0);
  CHECK(json::parse(p.out).at("verdict") == "prime");
}

TEST_CASE("variety verbs") {
  std::string z3 = z3_file();
  RunResult f = run("--json variety free --spec gen:" + z3 + " -n 1");
  CHECK(f.status == 0);
  CHECK(json::parse(f.out).at("size") == 6);

  RunResult a = run("--json variety axiomatize --sub gen:" + scratch(
                        "c2.json", algebra_to_json(chain(2))) +
                    " --ambient gen:" + z3 + " --bound 6");
  CHECK(a.status == 0);
  CHECK(json::parse(a.out).at("axioms").size() == 1);

  std::string set = scratch("set.json", json::array({"~~x -> x = 1"}));
  CHECK(run("variety rcomplete --spec gen:" + z3 + " --set " + set + " --bound 5")
            .status == 0);
  CHECK(run("variety split --algebra " + z3 + " --ambient slice:3 --bound 6").status == 0);
}

TEST_CASE("error exit codes") {
  CHECK(run("alg info /nonexistent.json").status == 2);
  CHECK(run("alg bogus").status == 2);
  CHECK(run("ident decide --variety nonsense \"x = x\"").status == 2);
  CHECK(run("alg pretrue " + z3_file() + " \"x |\"").status == 2);  // parse error
  // bound exhaustion: axiomatizing inside slice:3 needs bound 6
  CHECK(run("variety axiomatize --sub gen:" + z3_file() +
            " --ambient slice:3 --bound 5").status == 3);
}

TEST_CASE("determinism") {
  std::string cmd = "--json ident decide --variety gen:" + z3_file() + " \"x | ~x = 1\"";
  RunResult r1 = run(cmd), r2 = run(cmd);
  CHECK(r1.status == r2.status);
  CHECK(r1.out == r2.out);
  RunResult c1 = run("--json alg chi " + z3_file()), c2 = run("--json alg chi " + z3_file());
  CHECK(c1.out == c2.out);
}
