#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(DISSIPACERT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("certify happy path emits a verified certificate") {
  RunResult r =
      run("certify --method svrg1 --sigma 0.1 --lipschitz 1 --eta 0.01 --m 100 --json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"verified\":true"));
  CHECK(contains(r.out, "\"rho_sq\":0.99802"));
  CHECK(contains(r.out, "\"nu\":0.921218948467"));
}

TEST_CASE("certify reports the assembled matrix on request") {
  RunResult r = run(
      "certify --method svrg1 --sigma 0.1 --lipschitz 1 --eta 0.1 --json "
      "--dump-lmi --dump-supply-rates");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"lmi\":[["));
  CHECK(contains(r.out, "\"L5.X1\""));
}

TEST_CASE("certify failure paths") {
  // infeasible Katyusha parameters: tau1 10% above the boundary
  // boundary at alpha = 5/3 is tau1 = 0.2; ask for 10% beyond it
  RunResult bad = run(
      "certify --method katyusha --sigma 0.01 --lipschitz 1 --m 100 "
      "--tau1 0.22 --tau2 0.5 --alpha 1.6666666666666667 --json");
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.out, "\"verified\":false"));
  CHECK(contains(bad.out, "positive eigenvalue"));
  CHECK(contains(bad.out, "\"analytic_feasible\":false"));

  RunResult missing = run("certify --method katyusha");
  CHECK(missing.exit_code == 2);

  RunResult unknown = run("certify --method svrg1 --eta 0.01 --frobnicate");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("json output is deterministic") {
  const std::string args =
      "certify --method svrg2 --sigma 0.05 --lipschitz 1 --eta 0.1 --m 400 --json";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("config file merges with command-line precedence") {
  const std::string path = "/tmp/dissipacert_cli_config.json";
  {
    std::ofstream f(path);
    f << "{\"method\":\"svrg1\",\"eta\":0.01,\"m\":100,"
         "\"function_class\":{\"sigma\":0.1,\"lipschitz\":1.0,"
         "\"component_assumption\":\"SmoothConvex\"}}";
  }
  RunResult from_file = run("certify --config " + path + " --json");
  CHECK(from_file.exit_code == 0);
  CHECK(contains(from_file.out, "\"eta\":0.01"));
  RunResult overridden = run("certify --config " + path + " --eta 0.02 --json");
  CHECK(overridden.exit_code == 0);
  CHECK(contains(overridden.out, "\"eta\":0.02"));
  std::remove(path.c_str());
}

TEST_CASE("simulate emits versioned trace csv and epoch json") {
  RunResult csv = run(
      "simulate --method svrg1 --sigma 0.2 --lipschitz 1.5 --eta 0.05 --m 5 "
      "--n 4 --p 3 --epochs 2 --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("# dissipacert-csv v1\n", 0) == 0);
  CHECK(contains(csv.out, "step,index,v_value,iterate_norm"));

  RunResult js = run(
      "simulate --method svrg1 --sigma 0.2 --lipschitz 1.5 --eta 0.05 --m 5 "
      "--n 4 --p 3 --epochs 2 --json --seed 3");
  CHECK(js.exit_code == 0);
  CHECK(contains(js.out, "\"subcommand\":\"simulate\""));
  CHECK(contains(js.out, "\"seed\":3"));
  CHECK(contains(js.out, "\"v_after\""));
}

TEST_CASE("environment seed is the fallback default") {
  RunResult r = run(
      "simulate --method svrg1 --sigma 0.2 --lipschitz 1.5 --eta 0.05 --m 3 "
      "--n 4 --p 3 --json",
      "DISSIPACERT_SEED=777");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"seed\":777"));
}

TEST_CASE("validate runs a suite and reports machine-readable results") {
  RunResult r = run(
      "validate --suite appendix --trials 60 --n 5 --p 3 --sigma 0.2 "
      "--lipschitz 1.5 --seed 5 --json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"suite\":\"appendix\""));
  CHECK(contains(r.out, "\"name\":\"S1\""));
  CHECK(contains(r.out, "\"pass\":true"));
  RunResult bogus = run("validate --suite everything");
  CHECK(bogus.exit_code == 2);
}

TEST_CASE("sweep emits versioned csv rows") {
  RunResult r = run(
      "sweep --method svrg1 --sigma 0.1 --lipschitz 1 --m 50 --eta-min 0.01 "
      "--eta-max 0.2 --eta-steps 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# dissipacert-csv v1\n", 0) == 0);
  CHECK(contains(r.out, "method,sigma,lipschitz,eta"));
  // header comment + column line + 3 rows
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 5);
}

TEST_CASE("output path writes the report to a file") {
  const std::string path = "/tmp/dissipacert_cli_out.json";
  RunResult r = run("certify --method sg --sigma 1 --lipschitz 10 --eta 0.05 "
                    "--json --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string content((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());
  CHECK(contains(content, "\"verified\":true"));
  std::remove(path.c_str());
}
