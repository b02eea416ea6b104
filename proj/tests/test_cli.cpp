#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hpe/problem_io.hpp"
#include "hpe/problems.hpp"

using namespace hpe;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the installed binary through the shell; stdout/stderr land in fixed
// scratch files so individual cases can inspect them.
int run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + HPE_CLI_BIN " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("solve on a generated quadratic converges and writes artifacts") {
  const int rc = run_cli(
      "solve --generate quadratic,n=6,cond=10,seed=1 --oracle ipp "
      "--trace cli_trace.csv --summary cli_summary.json");
  CHECK(rc == 0);
  CHECK(slurp("cli_stdout.txt").find("converged") != std::string::npos);

  const std::string trace = slurp("cli_trace.csv");
  CHECK(trace.rfind("k,step_sq,gap_sq,v_sq,eps,r_norm,slack,phi,mu\n", 0) == 0);

  const nlohmann::json summary = nlohmann::json::parse(slurp("cli_summary.json"));
  CHECK(summary.at("stop_reason") == "converged");
  CHECK(summary.at("distance_to_solution").get<double>() < 1e-6);
  CHECK(summary.at("summability").at("all_pass").get<bool>());
  std::remove("cli_trace.csv");
  std::remove("cli_summary.json");
}

TEST_CASE("solve accepts a problem file") {
  const std::string path = "cli_problem.json";
  save_problem(gen_quadratic(4, 10.0, 5), path);
  CHECK(run_cli("solve --problem " + path + " --oracle ipp") == 0);
  std::remove(path.c_str());
}

TEST_CASE("configuration errors exit with code 4") {
  // alpha(5 + 4 sigma^2) + sigma^2 = 1 exactly: rejected (strict inequality).
  CHECK(run_cli("solve --generate quadratic,n=4,seed=1 --oracle ipp --alpha 0.2") == 4);
  // ipp is the exact oracle; a nonzero sigma is meaningless for it.
  CHECK(run_cli("solve --generate quadratic,n=4,seed=1 --oracle ipp --sigma 0.5") == 4);
  // fbf's sigma is induced, and it has no relaxed embedding.
  CHECK(run_cli("solve --generate saddle,n=4,seed=1 --oracle fbf --sigma 0.3") == 4);
  CHECK(run_cli("solve --generate saddle,n=4,seed=1 --oracle fbf --variant relaxed") == 4);
  // No problem source.
  CHECK(run_cli("solve --oracle ipp") == 4);
  // Unknown generator key.
  CHECK(run_cli("solve --generate quadratic,n=4,bogus=1 --oracle ipp") == 4);
  // Missing problem file.
  CHECK(run_cli("solve --problem cli_no_such_file.json --oracle ipp") == 4);
}

TEST_CASE("a step size above the oracle's bound is rejected") {
  // Default saddle coupling gives beta = 2, so c_max = sigma/2 ~ 0.244 at
  // alpha = 0.05; c = 0.3 violates the bound on the first certificate call.
  CHECK(run_cli("solve --generate saddle,n=4,seed=1 --oracle fbf --c 0.3") == 4);
  CHECK(run_cli("solve --generate saddle,n=4,seed=1 --oracle fbf --c 0.2") == 0);
}

TEST_CASE("flag parsing failures exit with code 4, --help with 0") {
  CHECK(run_cli("solve --oracle nonsense --generate quadratic,n=4,seed=1") == 4);
  CHECK(run_cli("solve --variant sometimes --generate quadratic,n=4,seed=1") == 4);
  CHECK(run_cli("frobnicate") == 4);
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("check reports feasibility through the exit code") {
  CHECK(run_cli("check --alpha 0 --sigma 0.9") == 0);
  CHECK(slurp("cli_stdout.txt").find("feasible") != std::string::npos);

  CHECK(run_cli("check --alpha 0.25 --sigma 0") == 4);
  CHECK(slurp("cli_stdout.txt").find("infeasible") != std::string::npos);

  // Relaxed admits a larger sigma at small alpha than Standard does.
  CHECK(run_cli("check --alpha 0.1 --sigma 0.7 --variant relaxed") == 0);
  CHECK(run_cli("check --alpha 0.1 --sigma 0.7") == 4);

  // fbf check surfaces the induced sigma and the step bound.
  CHECK(run_cli("check --oracle fbf --alpha 0.05 --generate saddle,n=4,seed=1") == 0);
  const std::string out = slurp("cli_stdout.txt");
  CHECK(out.find("c <= ") != std::string::npos);
  CHECK(out.find("sigma_bar window") != std::string::npos);

  CHECK(run_cli("check --oracle fbf --alpha 0.25") == 4);  // empty window
}

TEST_CASE("iteration cap exits with code 2") {
  CHECK(run_cli("solve --generate quadratic,n=6,cond=10,seed=1 --oracle ipp "
                "--max-iters 5 --tol 1e-300") == 2);
  CHECK(slurp("cli_stdout.txt").find("hit max_iters") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical traces") {
  const std::string args =
      "solve --generate composite,n=8,sparsity=0.4,seed=2 --oracle fb --trace ";
  REQUIRE(run_cli(args + "cli_rerun_a.csv") == 0);
  REQUIRE(run_cli(args + "cli_rerun_b.csv") == 0);
  const std::string a = slurp("cli_rerun_a.csv");
  CHECK(a == slurp("cli_rerun_b.csv"));
  CHECK(a.size() > 100);
  std::remove("cli_rerun_a.csv");
  std::remove("cli_rerun_b.csv");
}

TEST_CASE("HPE_SEED overrides the seed in the generator spec") {
  REQUIRE(run_cli("solve --generate quadratic,n=5,cond=10,seed=3 --oracle ipp "
                  "--trace cli_seed_env.csv",
                  "HPE_SEED=99 ") == 0);
  REQUIRE(run_cli("solve --generate quadratic,n=5,cond=10,seed=99 --oracle ipp "
                  "--trace cli_seed_flag.csv") == 0);
  CHECK(slurp("cli_seed_env.csv") == slurp("cli_seed_flag.csv"));

  REQUIRE(run_cli("solve --generate quadratic,n=5,cond=10,seed=3 --oracle ipp "
                  "--trace cli_seed_plain.csv") == 0);
  CHECK(slurp("cli_seed_plain.csv") != slurp("cli_seed_flag.csv"));
  std::remove("cli_seed_env.csv");
  std::remove("cli_seed_flag.csv");
  std::remove("cli_seed_plain.csv");
}

TEST_CASE("the relaxed variant drives the composite forward-backward run") {
  CHECK(run_cli("solve --generate composite,n=8,sparsity=0.4,seed=2 --oracle fb "
                "--variant relaxed") == 0);
}
