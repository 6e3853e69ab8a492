// End-to-end runs of the resilience-rg binary; ctest provides its path via
// RESILIENCE_RG_BIN.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>


namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* binary() { return std::getenv("RESILIENCE_RG_BIN"); }

CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string tag = "/tmp/resilience_cli_" + std::to_string(counter++);
  const std::string out = tag + ".out", err = tag + ".err";
  const std::string cmd = env + (env.empty() ? "" : " ") +
                          std::string(binary()) + " " + args + " >" + out +
                          " 2>" + err;
  const int status = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return res;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("classify prints verdict, exponent, pulses_needed") {
  REQUIRE(binary() != nullptr);
  const auto res =
      run_cli("classify --set noise.delta.z=1.5 --set noise.z=1.0");
  CHECK(res.exit_code == 0);
  CHECK_MESSAGE(res.out.find("z: Irrelevant, exponent = -1, pulses_needed = 0") !=
                    std::string::npos,
                res.out);
}

TEST_CASE("unknown config keys fail fast with exit code 1") {
  const auto res = run_cli("classify --set noise.bogus=1");
  CHECK(res.exit_code == 1);
  CHECK(res.err.find("unknown config key: noise.bogus") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 1") {
  const auto res = run_cli("transmogrify");
  CHECK(res.exit_code == 1);
}

TEST_CASE("help lists subcommands and config keys") {
  const auto top = run_cli("--help");
  CHECK(top.exit_code == 0);
  for (const char* name : {"classify", "flow", "epsilon", "scaling-scan",
                           "coulomb", "threshold", "pipeline"})
    CHECK_MESSAGE(top.out.find(name) != std::string::npos, name);

  const auto sub = run_cli("classify --help");
  CHECK(sub.exit_code == 0);
  for (const char* key :
       {"noise.delta", "noise.lambda", "grid.comp_dim", "pulses.n",
        "mc.seed", "output.path"})
    CHECK_MESSAGE(sub.out.find(key) != std::string::npos, key);
}

TEST_CASE("flow with a vanishing beta function emits constant columns") {
  const std::string csv = "/tmp/resilience_cli_flow.csv";
  const auto res = run_cli("flow --set noise.lambda.x=0.3 --set rg.ell_max=2 "
                           "--set rg.step=0.01 --out " +
                           csv);
  CHECK(res.exit_code == 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "ell,lambda_x,lambda_y,lambda_z");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.find(",0.3,0,0") != std::string::npos);
    ++rows;
  }
  CHECK(rows > 10);
  std::remove(csv.c_str());
}

TEST_CASE("epsilon rejects models outside the perturbative regime, exit 2") {
  // delta = 0 makes the correlator flat: eps = (lambda dt)^2 = 4
  const auto res =
      run_cli("epsilon --set noise.lambda.z=1.0 --set grid.delta_t=2.0 "
              "--set noise.delta.z=0.0");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("perturbative") != std::string::npos);
}

TEST_CASE("pipeline relevant flow exits 2 and names the obstruction") {
  const auto res = run_cli(
      "pipeline --set noise.lambda.z=0.05 --set noise.delta.z=0.4");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("relevant") != std::string::npos);
  CHECK(res.err.find("pulses_needed = 1") != std::string::npos);
}

TEST_CASE("pipeline irrelevant flow reports phase (i)") {
  const auto res = run_cli(
      "pipeline --set noise.lambda.z=0.05 --set noise.delta.z=1.5 "
      "--set noise.cutoff=10 --set mc.samples=200000 --seed 11");
  CHECK(res.exit_code == 0);
  CHECK_MESSAGE(res.out.find("phase (i)") != std::string::npos, res.out);
  CHECK(res.out.find("below threshold") != std::string::npos);
}

TEST_CASE("scaling-scan writes the sweep CSV plus a fit JSON") {
  const std::string csv = "/tmp/resilience_cli_scan.csv";
  const std::string fit = "/tmp/resilience_cli_scan.fit.json";
  const auto res = run_cli(
      "scaling-scan --set noise.lambda.z=0.1 --set noise.delta.z=1.5 "
      "--set noise.cutoff=10 --set scan.sizes=[8,16,32,64] --out " +
      csv);
  CHECK(res.exit_code == 0);
  const std::string head = slurp(csv);
  CHECK(head.rfind("L,sum,ratio\n", 0) == 0);
  CHECK(head.find("\n8,") != std::string::npos);
  const std::string fit_json = slurp(fit);
  CHECK(fit_json.find("\"slope\"") != std::string::npos);
  CHECK(fit_json.find("\"verdict\"") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(fit.c_str());
}

TEST_CASE("coulomb emits the sweep series and a summary, reproducibly") {
  const std::string csv = "/tmp/resilience_cli_coulomb.csv";
  const std::string summary = "/tmp/resilience_cli_coulomb.summary.json";
  const std::string args =
      "coulomb --set coulomb.side=4 --set coulomb.fugacity=0.2 "
      "--set mc.sweeps=500 --seed 21 --out " +
      csv;
  const auto a = run_cli(args);
  CHECK(a.exit_code == 0);
  const std::string series_a = slurp(csv);
  const std::string summary_a = slurp(summary);
  CHECK(series_a.rfind("sweep,pairs,r2\n", 0) == 0);
  CHECK(summary_a.find("\"mean_pairs\"") != std::string::npos);

  const auto b = run_cli(args);
  CHECK(b.exit_code == 0);
  CHECK(slurp(csv) == series_a);  // bit-identical rerun
  CHECK(slurp(summary) == summary_a);
  CHECK(a.out == b.out);
  std::remove(csv.c_str());
  std::remove(summary.c_str());
}

TEST_CASE("the seed falls back to RESILIENCE_RG_SEED") {
  const std::string args =
      "coulomb --set coulomb.fugacity=0.2 --set mc.sweeps=200";
  const auto env_a = run_cli(args, "RESILIENCE_RG_SEED=77");
  const auto env_b = run_cli(args, "RESILIENCE_RG_SEED=77");
  const auto flag = run_cli(args + " --seed 77");
  const auto other = run_cli(args, "RESILIENCE_RG_SEED=78");
  CHECK(env_a.exit_code == 0);
  CHECK(env_a.out == env_b.out);
  CHECK(env_a.out == flag.out);   // flag and env agree on the same seed
  CHECK(env_a.out != other.out);  // and the seed actually matters
  const auto bad = run_cli(args, "RESILIENCE_RG_SEED=xyz");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("threshold sweep emits rates and a pseudo-threshold") {
  const std::string csv = "/tmp/resilience_cli_threshold.csv";
  const std::string summary = "/tmp/resilience_cli_threshold.summary.json";
  const auto res = run_cli(
      "threshold --set threshold.p=[0.01,0.03] --set mc.samples=50000 "
      "--seed 5 --out " +
      csv);
  CHECK(res.exit_code == 0);
  const std::string head = slurp(csv);
  CHECK(head.rfind("p,logical_rate,stderr\n", 0) == 0);
  CHECK(slurp(summary).find("\"pseudo_threshold\"") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(summary.c_str());
}

TEST_SUITE_END();
