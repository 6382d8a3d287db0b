// End-to-end tests of the quotkit command line, run through a shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(QUOTKIT_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_diagram(const std::string& name, const std::string& body) {
  std::string path = "/tmp/quotkit_cli_" + name + ".json";
  std::ofstream out(path);
  REQUIRE(out.good());
  out << body;
  return path;
}

}  // namespace

TEST_CASE("realizable command") {
  RunResult yes = run(
      "realizable --b 0,3,9 --e 2,7,8,11,20 --a 13,23 --json");
  CHECK(yes.code == 0);
  json jy = json::parse(yes.out);
  CHECK(jy["realizable"] == true);
  CHECK(jy["datum"]["sigma"] == json::array({3, 5}));
  CHECK(jy["datum"]["tau"] == json::array({1, 2, 4}));

  RunResult no = run("realizable --b 1,1 --e 0,0,2,2 --a 1,1 --json");
  CHECK(no.code == 0);  // a clean "no" is a result, not an error
  json jn = json::parse(no.out);
  CHECK(jn["realizable"] == false);
  CHECK(jn["witness"] == "S(1,2) = -1 < 0");

  RunResult text = run("realizable --b 1,1 --e 0,0,2,2 --a 1,1");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "realizable: no"));
  CHECK(contains(text.out, "witness: S(1,2) = -1 < 0"));

  RunResult euler = run("realizable --b=-1 --e 0,0 --a 1 --json");
  CHECK(euler.code == 0);
  CHECK(json::parse(euler.out)["realizable"] == true);
}

TEST_CASE("bad invocations exit with code 2") {
  CHECK(run("").code == 2);                                   // no subcommand
  CHECK(run("frobnicate").code == 2);                         // unknown
  CHECK(run("realizable --b 1").code == 2);                   // missing opts
  CHECK(run("realizable --b x --e 0,0 --a 1").code == 2);     // bad integer
  CHECK(run("components --e 0,1 --n 2 --d 1").code == 2);     // rank contract
  CHECK(run("betti realizable --diagram /nonexistent").code == 2);
}

TEST_CASE("components command") {
  RunResult text = run("components --e 0,4,5,6,8,12 --n 3 --d 20");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "components: 5"));

  RunResult all = run("components --e 0,4,5,6,8,12 --n 3 --d 20 --all-stable");
  CHECK(all.code == 0);
  CHECK(contains(all.out, "stable pairs: 6"));
  CHECK(contains(all.out, "no"));  // the one non-strongly-stable row

  RunResult js = run("components --e 0,4,5,6,8,12 --n 3 --d 20 --json");
  CHECK(js.code == 0);
  json j = json::parse(js.out);
  CHECK(j["count"] == 5);
  REQUIRE(j["components"].size() == 5);
  CHECK(j["components"][0]["b"] == json::array({5, 5, 5}));
  CHECK(j["components"][0]["a"] == json::array({0, 4, 16}));
  CHECK(j["components"][0]["D"] == 36);
  CHECK(j["components"][0]["strongly_stable"] == true);
}

TEST_CASE("construct command emits a full certificate") {
  RunResult js = run(
      "construct --b 0,3,9 --e 2,7,8,11,20 --a 13,23 --json");
  CHECK(js.code == 0);
  json j = json::parse(js.out);
  CHECK(j["checks"]["all"] == true);
  CHECK(j["checks"]["composition_zero"] == true);
  CHECK(j["checks"]["G_surjective"] == true);
  CHECK(j["checks"]["C_injective_lf"] == true);
  CHECK(j["checks"]["degrees_ok"] == true);
  REQUIRE(j["G"].size() == 2);
  CHECK(j["G"][0] == json::array({"x^11", "x^4*y^2", "y^5", "0", "0"}));
  REQUIRE(j["C"].size() == 5);
  CHECK(j["C"][0] == json::array({"y^2", "0", "0"}));
  CHECK(j["C"][4] == json::array({"0", "0", "-x^11"}));

  RunResult text = run("construct --b 0,3,9 --e 2,7,8,11,20 --a 13,23");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "sigma: 3 5"));
  CHECK(contains(text.out, "G ="));
  CHECK(contains(text.out, "C ="));
  CHECK(contains(text.out, "composition_zero=yes"));

  // A non-realizable triple cannot be constructed.
  CHECK(run("construct --b 1,1 --e 0,0,2,2 --a 1,1").code == 2);
}

TEST_CASE("irreducible command") {
  RunResult yes = run("irreducible --e 1,7,8,9,20 --n 3 --d 20 --json");
  CHECK(yes.code == 0);
  json jy = json::parse(yes.out);
  CHECK(jy["irreducible"] == true);
  CHECK(jy["mb_quotient"] == json::array({1, 9, 10}));
  CHECK(jy["mb_kernel"] == json::array({5, 20}));

  RunResult no = run("irreducible --e 0,4,5,6,8,12 --n 3 --d 20");
  CHECK(no.code == 0);
  CHECK(contains(no.out, "irreducible: no"));
  CHECK(contains(no.out, "most balanced quotient: (6,7,7)"));
  CHECK(contains(no.out, "most balanced kernel: (5,5,5)"));
}

TEST_CASE("balance command") {
  RunResult js = run(
      "balance --b=-8,10,20 --e 0,4,10,13,15,20 --a 8,13,19 --json");
  CHECK(js.code == 0);
  json j = json::parse(js.out);
  REQUIRE(j["states"].size() >= 2);
  CHECK(j["states"].front()["b"] == json::array({-8, 10, 20}));
  CHECK(j["states"].back()["b"] == json::array({-4, 6, 20}));
  CHECK(j["states"].back()["a"] == json::array({8, 16, 16}));

  RunResult text = run(
      "balance --b=-8,10,20 --e 0,4,10,13,15,20 --a 8,13,19");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "b=(-4,6,20), a=(8,16,16)"));
}

TEST_CASE("connected command") {
  RunResult text = run("connected --e 0,4,5,6,8,12 --n 3 --d 20");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "connected: yes"));
  CHECK(contains(text.out, "components: 5"));
  CHECK(contains(text.out, "root: b=(-5,8,12), a=(6,7,7)"));

  RunResult js = run("connected --e 0,4,5,6,8,12 --n 3 --d 20 --json");
  CHECK(js.code == 0);
  json j = json::parse(js.out);
  CHECK(j["connected"] == true);
  CHECK(j["failure"] == "");
  CHECK(j["nodes"].size() == 5);
  CHECK(j["chains"].size() == 5);
}

TEST_CASE("betti commands") {
  std::string koszul = write_diagram(
      "koszul", R"({"0":{"0":1},"1":{"1":2},"2":{"2":1}})");
  RunResult dec = run("betti decompose --diagram " + koszul + " --json");
  CHECK(dec.code == 0);
  json jd = json::parse(dec.out);
  CHECK(jd["in_cone"] == true);
  REQUIRE(jd["parts"].size() == 1);
  CHECK(jd["parts"][0]["coeff"] == 1);
  CHECK(jd["parts"][0]["degrees"] == json::array({0, 1, 2}));
  CHECK(jd["parts"][0]["multiplicities"] == json::array({1, 2, 1}));

  RunResult rl = run("betti realizable --diagram " + koszul);
  CHECK(rl.code == 0);
  CHECK(contains(rl.out, "realizable: yes"));

  std::string half = write_diagram(
      "half", R"({"0":{"0":"1/2"},"1":{"1":1},"2":{"2":"1/2"}})");
  RunResult dec2 = run("betti decompose --diagram " + half + " --json");
  CHECK(dec2.code == 0);
  json jh = json::parse(dec2.out);
  CHECK(jh["in_cone"] == true);
  CHECK(jh["parts"][0]["coeff"] == "1/2");
  // Realizability is a lattice-point question: fractional input is an error.
  CHECK(run("betti realizable --diagram " + half).code == 2);

  std::string junk = write_diagram("junk", "not json at all");
  CHECK(run("betti decompose --diagram " + junk).code == 2);
}

TEST_CASE("oracle commands") {
  RunResult k = run("oracle kernel-split --e 0,0 --a 1 --trials 2 --seed 7");
  CHECK(k.code == 0);
  CHECK(contains(k.out, "kernel split: (-1)"));
  CHECK(contains(k.out, "seed: 7"));

  RunResult c = run("oracle cokernel-split --b=-1 --e 0,0 --trials 2 --json");
  CHECK(c.code == 0);
  json j = json::parse(c.out);
  CHECK(j["a"] == json::array({1}));
  CHECK(j["trials"] == 2);

  // Composite characteristic is rejected before any sampling.
  CHECK(run("oracle kernel-split --e 0,0 --a 1 --prime 32001").code == 2);
}

TEST_CASE("guard limit environment variable") {
  RunResult r = run("components --e 0,4,5,6,8,12 --n 3 --d 20",
                    "QUOTKIT_GUARD_LIMIT=1");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "guard limit"));
}
