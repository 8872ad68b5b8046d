#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "ncbeta/table_io.hpp"
#include "ncbeta/version.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the installed binary through the shell; `env_prefix` may carry
// variable assignments like "NCB_MAX_TERMS=40 ".
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const char* out_path = "cli_stdout.tmp";
  const char* err_path = "cli_stderr.tmp";
  std::string cmd = env_prefix + "\"" + NCBETA_CLI_PATH + "\" " + args + " > " +
                    out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path);
  std::remove(err_path);
  return res;
}

double cell_number(const ncbeta::Cell& cell) {
  return std::stod(std::get<std::string>(cell));
}

}  // namespace

TEST_CASE("version and help run clean") {
  CliResult v = run_cli("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find(ncbeta::kVersion) != std::string::npos);

  CliResult h = run_cli("--help");
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("moments") != std::string::npos);
  CHECK(h.out.find("validate") != std::string::npos);
  CHECK(h.out.find("selfcheck") != std::string::npos);
}

TEST_CASE("moment output lists the requested orders with exact values") {
  CliResult r =
      run_cli("moments --model ncchisq --df 2 --lambda 4 --orders 1..4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("g,lambda,r,method,value,terms\r\n", 0) == 0);
  CHECK(r.out.find("2.00000,4.00000,1,classic,6.00000") != std::string::npos);
  CHECK(r.out.find("56.00000") != std::string::npos);
  CHECK(r.out.find("688.00000") != std::string::npos);
  CHECK(r.out.find("10368.00000") != std::string::npos);

  ncbeta::Table parsed = ncbeta::parse_csv(r.out);
  REQUIRE(parsed.rows.size() == 4);
  CHECK(ncbeta::to_csv(parsed, 5) == r.out);
}

TEST_CASE("method selection is honoured across models") {
  CliResult stirling = run_cli(
      "moments --model ncchisq --df 4.5 --lambda 2 --orders 2 --method "
      "stirling");
  CHECK(stirling.exit_code == 0);
  CHECK(stirling.out.find("stirling,59.25000") != std::string::npos);

  CliResult zero =
      run_cli("moments --model ncchisq --df 0 --lambda 2 --orders 3");
  CHECK(zero.exit_code == 0);
  CHECK(zero.out.find("zero-df,104.00000") != std::string::npos);

  CliResult reduced = run_cli(
      "moments --model dncb --alpha1 1 --alpha2 1 --lambda1 2 --lambda2 4 "
      "--orders 1..2 --method reduced");
  CHECK(reduced.exit_code == 0);
  CHECK(reduced.out.find("reduced,0.40925") != std::string::npos);

  CliResult ncb2 =
      run_cli("moments --model ncb2 --alpha1 1 --alpha2 2 --lambda 3 "
              "--orders 2 --precision 8");
  CHECK(ncb2.exit_code == 0);
  CHECK(ncb2.out.find("0.09553721") != std::string::npos);
}

TEST_CASE("identical invocations print identical bytes") {
  std::string cmd =
      "moments --model dncb --alpha1 0.5 --alpha2 0.5 --lambda1 4 "
      "--lambda2 7 --orders 1..4 --format json --seed 99";
  CliResult a = run_cli(cmd);
  CliResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  std::string sim = "simulate --model dncb --alpha1 1 --alpha2 1 --lambda1 2 "
                    "--lambda2 4 --draws 50 --seed 7";
  CliResult s1 = run_cli(sim);
  CliResult s2 = run_cli(sim);
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);

  CliResult s3 = run_cli("simulate --model dncb --alpha1 1 --alpha2 1 "
                         "--lambda1 2 --lambda2 4 --draws 50 --seed 8");
  CHECK(s3.out != s1.out);
}

TEST_CASE("JSON output carries the run metadata") {
  CliResult r = run_cli(
      "moments --model ncb1 --alpha1 2 --alpha2 3 --lambda 1 --orders 1 "
      "--format json --seed 123 --precision 8");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["command"] == "moments");
  CHECK(doc["meta"]["model"] == "ncb1");
  CHECK(doc["meta"]["seed"] == 123);
  CHECK(doc["meta"]["version"] == std::string(ncbeta::kVersion));
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["value"] == doctest::Approx(0.44663998).epsilon(1e-9));
}

TEST_CASE("usage mistakes exit with status two") {
  CHECK(run_cli("moments --model ncchisq --df 2 --lambda 4 --nope").exit_code ==
        2);
  CHECK(run_cli("moments --df 2 --lambda 4").exit_code == 2);
  CHECK(run_cli("moments --model banana --df 2 --lambda 4").exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --lambda 4").exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --df -1 --lambda 4").exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --df 2 --lambda 4 --orders 0..4")
            .exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --df 2 --lambda 4 --orders abc")
            .exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --df 2 --lambda 4 --format xml")
            .exit_code == 2);
  CHECK(run_cli("moments --model dncb --alpha1 1 --alpha2 1 --lambda1 2")
            .exit_code == 2);
  CHECK(run_cli("moments --model ncchisq --df 0 --lambda 4 --method classic")
            .exit_code == 2);
  CHECK(run_cli("density --model ncb1 --alpha1 1 --alpha2 1 --lambda 2 "
                "--representation mixture")
            .exit_code == 2);
  CHECK(run_cli("validate --model dncb --vec 1,2,3").exit_code == 2);
  CliResult missing = run_cli("moments --model ncchisq --lambda 4");
  CHECK(missing.err.find("--df") != std::string::npos);
}

TEST_CASE("the term budget environment override is validated") {
  CliResult bad =
      run_cli("moments --model ncchisq --df 2 --lambda 4", "NCB_MAX_TERMS=abc ");
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("NCB_MAX_TERMS") != std::string::npos);
  CHECK(run_cli("moments --model ncchisq --df 2 --lambda 4",
                "NCB_MAX_TERMS=-3 ")
            .exit_code == 2);

  // a budget too small to converge is a runtime failure, not a usage error
  CliResult tiny = run_cli(
      "moments --model dncb --alpha1 1 --alpha2 1 --lambda1 30 --lambda2 30 "
      "--orders 1",
      "NCB_MAX_TERMS=4 ");
  CHECK(tiny.exit_code == 1);
  CHECK(tiny.err.find("no convergence") != std::string::npos);

  CHECK(run_cli("moments --model dncb --alpha1 1 --alpha2 1 --lambda1 30 "
                "--lambda2 30 --orders 1",
                "NCB_MAX_TERMS=9000 ")
            .exit_code == 0);
}

TEST_CASE("simulate emits draws or a histogram") {
  CliResult raw = run_cli(
      "simulate --model dncb --alpha1 1 --alpha2 1 --lambda1 2 --lambda2 4 "
      "--draws 5");
  CHECK(raw.exit_code == 0);
  ncbeta::Table t = ncbeta::parse_csv(raw.out);
  CHECK(t.columns == std::vector<std::string>{"draw", "m_plus", "i_star"});
  REQUIRE(t.rows.size() == 5);
  for (const auto& row : t.rows) {
    double x = cell_number(row[0]);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(cell_number(row[2]) <= cell_number(row[1]));
  }

  CliResult binned = run_cli(
      "simulate --model ncchisq --df 2 --lambda 4 --draws 200 --bins 8 "
      "--representation additive");
  CHECK(binned.exit_code == 0);
  ncbeta::Table h = ncbeta::parse_csv(binned.out);
  CHECK(h.columns ==
        std::vector<std::string>{"bin_lower", "bin_upper", "count", "density"});
  REQUIRE(h.rows.size() == 8);
  double total = 0.0;
  for (const auto& row : h.rows) total += cell_number(row[2]);
  CHECK(total == 200.0);
}

TEST_CASE("density grids agree between the two representations") {
  CliResult r = run_cli(
      "density --model dncb --alpha1 2 --alpha2 5 --lambda1 0.5 --lambda2 7 "
      "--grid 9 --precision 10");
  CHECK(r.exit_code == 0);
  ncbeta::Table t = ncbeta::parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"x", "mixture", "perturbation"});
  REQUIRE(t.rows.size() == 9);
  for (const auto& row : t.rows) {
    CHECK(std::abs(cell_number(row[1]) - cell_number(row[2])) <= 1e-8);
  }

  CliResult n = run_cli(
      "density --model ncb1 --alpha1 2 --alpha2 3 --lambda 1.5 --grid 5");
  CHECK(n.exit_code == 0);
  ncbeta::Table nt = ncbeta::parse_csv(n.out);
  CHECK(nt.columns == std::vector<std::string>{"x", "density"});
  CHECK(nt.rows.size() == 5);
}

TEST_CASE("validate reports per-order rows and an honest exit status") {
  CliResult ok = run_cli(
      "validate --model ncchisq --vec 2,4 --series 6 --draws 800 "
      "--orders 1..2 --alpha 1e-9");
  CHECK(ok.exit_code == 0);
  ncbeta::Table t = ncbeta::parse_csv(ok.out);
  CHECK(t.columns ==
        std::vector<std::string>{"g", "lambda", "r", "moment", "sample_mean",
                                 "sample_sd", "z", "p_value"});
  REQUIRE(t.rows.size() == 2);

  CliResult biased = run_cli(
      "validate --model ncchisq --vec 2,4 --series 6 --draws 800 "
      "--orders 1..2 --mu0-bias 0.5");
  CHECK(biased.exit_code == 1);
}

TEST_CASE("bench emits two labelled rows per vector") {
  CliResult r = run_cli("bench --vec 1,1,2,4 --series 8 --orders 1..2");
  CHECK(r.exit_code == 0);
  ncbeta::Table t = ncbeta::parse_csv(r.out);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<std::string>(t.rows[0][4]) == "finite-sum");
  CHECK(std::get<std::string>(t.rows[1][4]) == "one-series");
  CHECK(t.columns.back() == "value_rel_diff");
  CHECK(cell_number(t.rows[0].back()) <= 1e-9);
}

TEST_CASE("selfcheck passes and prints one line per suite") {
  CliResult r = run_cli("selfcheck");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ok   pochhammer-laws") != std::string::npos);
  CHECK(r.out.find("ok   dncb-cross-formulas") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("file output matches the stdout bytes") {
  const char* path = "cli_file_out.tmp";
  std::string base = "moments --model ncchisq --df 6 --lambda 3.5 --orders 1..4";
  CliResult direct = run_cli(base);
  CliResult filed = run_cli(base + " --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == direct.out);
  std::remove(path);
}
