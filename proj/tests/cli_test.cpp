// End-to-end checks of the bvp executable: exit codes, porcelain key
// stability, sweep CSV shape and solution dumps. Each test spawns the real
// binary, so these stay coarse; numeric details live in the unit suites.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef BVP_CLI_PATH
#error "BVP_CLI_PATH must point at the bvp executable"
#endif
#ifndef BVP_TEST_DATA_DIR
#error "BVP_TEST_DATA_DIR must point at tests/data"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr merged
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(BVP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

std::string data_path(const std::string& name) {
  return std::string(BVP_TEST_DATA_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

bool has_line(const std::string& text, const std::string& wanted) {
  for (const auto& line : lines_of(text))
    if (line == wanted) return true;
  return false;
}

bool contains(const std::string& text, const std::string& piece) {
  return text.find(piece) != std::string::npos;
}

std::string tmp_name(const std::string& stem) {
  return "/tmp/" + stem + "_" + std::to_string(getpid());
}

}  // namespace

TEST_CASE("help and usage errors") {
  RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(contains(help.out, "validate"));
  CHECK(contains(help.out, "certify"));
  CHECK(contains(help.out, "solve"));
  CHECK(contains(help.out, "sweep"));

  CHECK(run_cli("").code == 2);            // a subcommand is required
  CHECK(run_cli("frobnicate").code == 2);  // unknown subcommand
  CHECK(run_cli("validate").code == 2);    // no problem source
  CHECK(run_cli("validate -e ex9").code == 2);
  CHECK(run_cli("validate -e ex1 --bogus").code == 2);
  CHECK(run_cli("certify /nonexistent/path.bvp").code == 2);
  CHECK(run_cli("validate " + data_path("bad_key.bvp")).code == 2);
  // a file and a built-in id at once is ambiguous, not first-come-first-served
  CHECK(run_cli("constants -e ex1 " + data_path("osc.bvp")).code == 2);
}

TEST_CASE("validate porcelain on an admissible problem") {
  RunResult r = run_cli("validate -e ex1 --porcelain");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "alpha=2"));
  CHECK(has_line(r.out, "beta=0.0333333333333"));
  CHECK(has_line(r.out, "eta=1"));
  CHECK(has_line(r.out, "T=2"));
  CHECK(has_line(r.out, "alpha_sup=4"));
  CHECK(has_line(r.out, "beta_sup=0.5"));
  CHECK(has_line(r.out, "neg_denominator=1.86666666667"));
  CHECK(has_line(r.out, "region=admissible"));
  CHECK(has_line(r.out, "a_nonneg=1"));
  CHECK(has_line(r.out, "a_positive_on_tail=1"));
  CHECK(has_line(r.out, "f_nonneg=1"));
}

TEST_CASE("validate flags inadmissible regions with exit 1") {
  RunResult no_sol =
      run_cli("validate " + data_path("no_solution.bvp") + " --porcelain");
  CHECK(no_sol.code == 1);
  CHECK(has_line(no_sol.out, "region=no_positive_solution"));
  CHECK(has_line(no_sol.out, "alpha_sup=8"));

  RunResult excl =
      run_cli("validate " + data_path("excluded.bvp") + " --porcelain");
  CHECK(excl.code == 1);
  CHECK(has_line(excl.out, "region=excluded"));
}

TEST_CASE("constants porcelain matches the worked values") {
  RunResult r = run_cli("constants -e ex1 --porcelain");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "region=admissible"));
  CHECK(has_line(r.out, "gamma=0.5"));
  CHECK(has_line(r.out, "gamma_branch_tail=0.5"));
  CHECK(has_line(r.out, "gamma_branch_head=0.516666666667"));
  CHECK(has_line(r.out, "gamma_branch_mixed=1.06896551724"));
  // The lambdas come from adaptive quadrature, so the final digit of the
  // 12-digit rendering is not pinned; match a 10-digit prefix.
  CHECK(contains(r.out, "lambda1=0.4117647058"));
  CHECK(contains(r.out, "lambda2=59.73333333"));
  CHECK(contains(r.out, "lambda2_over_gamma=119.4666666"));

  RunResult gated =
      run_cli("constants " + data_path("no_solution.bvp") + " --porcelain");
  CHECK(gated.code == 1);
  CHECK(has_line(gated.out, "region=no_positive_solution"));
  CHECK(!contains(gated.out, "gamma="));
}

TEST_CASE("certify porcelain: sublinear-superlinear example") {
  RunResult r = run_cli("certify -e ex1 --porcelain");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "f0_class=infinite"));
  CHECK(has_line(r.out, "finf_class=infinite"));
  CHECK(has_line(r.out, "asymptotics_declared=0"));
  CHECK(has_line(r.out, "fired=Thm3.1;Thm4.1;Cor4.4"));
  CHECK(has_line(r.out, "cert.Thm3.1.count=2"));
  CHECK(has_line(r.out, "cert.Thm3.1.intervals=(0,4);(4,inf)"));
  CHECK(has_line(r.out, "cert.Thm4.1.count=1"));
  CHECK(has_line(r.out, "witness.H2.holds=1"));
  CHECK(has_line(r.out, "witness.H2.rho=4"));
  CHECK(has_line(r.out, "witness.H2.extremum=1.5"));
  CHECK(has_line(r.out, "witness.H2.slope=0.375"));
  CHECK(has_line(r.out, "witness.H2.marginal=0"));
  CHECK(contains(r.out, "witness.H4.rho="));
}

TEST_CASE("certify porcelain: vanishing-limits example") {
  RunResult r = run_cli("certify -e ex2 --porcelain");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "f0_class=zero"));
  CHECK(has_line(r.out, "finf_class=zero"));
  CHECK(has_line(r.out, "fired=Thm3.2;Cor4.5"));
  CHECK(has_line(r.out, "cert.Thm3.2.count=2"));
  CHECK(has_line(r.out, "cert.Thm3.2.intervals=(0,6);(6,inf)"));
  CHECK(has_line(r.out, "witness.H4.rho=6"));
  CHECK(has_line(r.out, "witness.H4.extremum=36"));
  CHECK(has_line(r.out, "witness.H4.slope=6"));
}

TEST_CASE("certify exits 3 when limits cannot be estimated") {
  RunResult r = run_cli("certify " + data_path("osc.bvp"));
  CHECK(r.code == 3);
  CHECK(contains(r.out, "inconclusive"));
}

TEST_CASE("certify exits 3 when no criterion fires") {
  RunResult r = run_cli("certify " + data_path("no_cert.bvp") + " --porcelain");
  CHECK(r.code == 3);
  CHECK(has_line(r.out, "fired="));
  CHECK(has_line(r.out, "f0_class=infinite"));
  CHECK(has_line(r.out, "finf_class=finite"));
  CHECK(contains(r.out, "finf_value=1"));
}

TEST_CASE("solve porcelain with dump") {
  std::string prefix = tmp_name("bvp_cli_dump") + "_";
  RunResult r = run_cli("solve " + data_path("fast_ex4.bvp") +
                        " --porcelain --dump " + prefix);
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "grid_n=64"));
  CHECK(has_line(r.out, "solutions=1"));
  CHECK(has_line(r.out, "trivial=1"));
  CHECK(has_line(r.out, "solution.0.in_cone=1"));
  CHECK(contains(r.out, "solution.0.norm=7.64"));
  CHECK(contains(r.out, "solution.0.buckets="));
  CHECK(contains(r.out, "Cor4.3(0,inf)"));
  CHECK(has_line(r.out, "buckets_all_occupied=1"));

  std::ifstream tsv(prefix + "0.tsv");
  REQUIRE(tsv.good());
  std::string text((std::istreambuf_iterator<char>(tsv)),
                   std::istreambuf_iterator<char>());
  std::vector<std::string> rows = lines_of(text);
  REQUIRE(rows.size() == 66);  // header plus 65 nodes
  CHECK(rows[0] == "t\tu");
  CHECK(rows[1].substr(0, 2) == "0\t");
  double u0 = std::stod(rows[1].substr(2));
  CHECK(u0 > 0.1);  // beta = 1 forces u(0) = u(eta) > 0
  std::remove((prefix + "0.tsv").c_str());
}

TEST_CASE("solve exits 4 when only the trivial solution exists") {
  RunResult r = run_cli("solve " + data_path("shrink.bvp") + " --porcelain",
                        "BVP_DEFAULT_GRID_N=64");
  CHECK(r.code == 4);
  CHECK(has_line(r.out, "grid_n=64"));  // env default, no [solver] section
  CHECK(has_line(r.out, "solutions=0"));
  CHECK(has_line(r.out, "trivial=1"));
}

TEST_CASE("solve is gated by admissibility") {
  RunResult r =
      run_cli("solve " + data_path("no_solution.bvp") + " --porcelain");
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "region=no_positive_solution"));
  CHECK(!contains(r.out, "solutions="));
}

TEST_CASE("reproduce recomputes built-in expectations") {
  RunResult r = run_cli("reproduce ex1 --no-solve");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[ex1] gamma: expected 0.5"));
  CHECK(contains(r.out, "[ex1] lambda1: expected 0.411764705882"));
  CHECK(contains(r.out, "[ex1] H2.slope: expected 0.375"));
  CHECK(has_line(r.out,
                 "[ex1] certificates: expected {Thm3.1} fired "
                 "{Thm3.1,Thm4.1,Cor4.4} PASS"));
  CHECK(has_line(r.out, "[ex1] overall PASS"));
  CHECK(!contains(r.out, "FAIL"));
  CHECK(!contains(r.out, "solve:"));

  CHECK(run_cli("reproduce").code == 2);      // id or --all required
  CHECK(run_cli("reproduce ex9").code == 2);  // unknown id
}

TEST_CASE("reproduce --all covers every example") {
  RunResult r = run_cli("reproduce --all --no-solve");
  CHECK(r.code == 0);
  size_t passes = 0;
  for (const auto& line : lines_of(r.out))
    if (line.find("overall PASS") != std::string::npos) ++passes;
  CHECK(passes == 4);
  CHECK(!contains(r.out, "FAIL"));
}

TEST_CASE("sweep emits one CSV row per combination") {
  std::string csv = tmp_name("bvp_cli_sweep") + ".csv";
  RunResult r = run_cli("sweep -e ex1 --vary alpha=1:3:3 --vary beta=0:0.2:3" +
                        std::string(" -o ") + csv);
  CHECK(r.code == 0);
  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::vector<std::string> rows = lines_of(text);
  REQUIRE(rows.size() == 10);  // header + 3 x 3 grid
  CHECK(rows[0] ==
        "alpha,beta,eta,T,admissible,gamma,lambda1,lambda2,"
        "fired_certificates");
  // Last axis varies fastest, so the first row is (alpha=1, beta=0).
  CHECK(rows[1].substr(0, 8) == "1,0,1,2,");
  CHECK(contains(rows[1], ",yes,"));
  // At alpha=3 the beta window is [0, 0.2), so beta=0.2 sits on the boundary.
  CHECK(rows[9] == "3,0.2,1,2,no,,,,");
  std::remove(csv.c_str());
}

TEST_CASE("sweep keeps constants when only the limits are inconclusive") {
  RunResult r =
      run_cli("sweep " + data_path("osc.bvp") + " --vary alpha=3:3:1");
  CHECK(r.code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].substr(0, 29) == "3,0.5,0.333333333333,1,yes,0.");
  CHECK(contains(rows[1], ",0.25,"));          // gamma
  CHECK(contains(rows[1], ",0.3333333333"));   // lambda1, quadrature digits vary
  CHECK(contains(rows[1], ",22.5"));           // lambda2
  CHECK(rows[1].back() == ',');                // fired column stays empty
}

TEST_CASE("sweep survives cells where f overflows during the rho search") {
  // The third built-in nonlinearity overflows exp(2u) past u ~ 355.  At its
  // own parameters a small radius certifies first, but shifted cells push the
  // search into overflow territory; each such cell must degrade to an empty
  // fired column instead of aborting the scan.
  RunResult r = run_cli("sweep -e ex3 --vary alpha=1:3:3 --vary beta=0:0.2:3");
  CHECK(r.code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 10);  // header + 3 x 3 grid
  for (size_t i = 1; i < rows.size(); ++i) {
    CAPTURE(rows[i]);
    CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 8);
    CHECK(contains(rows[i], ",yes,"));  // every cell is admissible here
  }
  CHECK(rows[1].substr(0, 25) == "1,0,0.333333333333,1,yes,");
}

TEST_CASE("sweep marks geometry violations as inadmissible") {
  RunResult r =
      run_cli("sweep " + data_path("osc.bvp") + " --vary eta=1.5:1.5:1");
  CHECK(r.code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == "3,0.5,1.5,1,no,,,,");
}

TEST_CASE("sweep rejects malformed axes") {
  CHECK(run_cli("sweep -e ex1").code == 2);  // at least one --vary
  CHECK(run_cli("sweep -e ex1 --vary gamma=1:2:3").code == 2);
  CHECK(run_cli("sweep -e ex1 --vary alpha=1:2").code == 2);
  CHECK(run_cli("sweep -e ex1 --vary alpha=1:2:2.5").code == 2);
  CHECK(run_cli("sweep -e ex1 --vary alpha=1:2:0").code == 2);
}
